import csv
import importlib
import io
import json
import math
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from dihedral_hpg import idcatalog as ic

MANIFEST = Path(__file__).resolve().parents[1] / "docs" / "equation_manifest.tsv"
IDS = [d.id for d in ic.list_identities()]


def test_catalog_size_and_unique_ids():
    assert len(IDS) >= 30
    assert len(set(IDS)) == len(IDS)


def test_stable_order():
    assert [d.id for d in ic.list_identities()] == IDS


def test_lookup():
    d = ic.lookup("clausen")
    assert d.id == "clausen" and d.anchor
    with pytest.raises(KeyError):
        ic.lookup("no-such-identity")


def test_descriptor_fields():
    for d in ic.list_identities():
        assert d.exactness.kind in ("Exact", "Numeric")
        if d.exactness.kind == "Numeric":
            assert 0 < d.tol <= 1e-8
        assert d.family and d.anchor


def test_dhtr1_example():
    r = ic.eval_identity("dhtr1", {"n": 2, "a": 0.3}, 0.2)
    assert r.rel_residual < 1e-12 and r.passed


def test_clausen_at_origin():
    r = ic.eval_identity("clausen", {"A": 0.3, "B": 0.45}, 0)
    assert r.lhs == 1 and r.rhs == 1 and r.abs_residual == 0


def test_symsq_example():
    r = ic.eval_identity("symsq", {"a": 0.7, "k": 2}, 0.3)
    assert r.rel_residual < 1e-9


def test_exact_entry_in_rational_arithmetic():
    r = ic.eval_identity("dhtrb", {"n": 12})
    assert r.exact and r.abs_residual == 0


def test_domain_violation_names_constraint():
    with pytest.raises(ic.DomainViolation, match="k"):
        ic.eval_identity("symsq", {"a": 0.7, "k": -1}, 0.3)


def test_domain_violation_z():
    with pytest.raises(ic.DomainViolation):
        ic.eval_identity("dhtr1", {"n": 2, "a": 0.3}, 5.0)


def test_missing_parameter():
    with pytest.raises(ic.DomainViolation):
        ic.eval_identity("dhtr1", {"n": 2}, 0.2)


def test_tolerance_override():
    r = ic.eval_identity("symsq", {"a": 0.7, "k": 2}, 0.3, tol=1e-300)
    assert not r.passed or r.rel_residual == 0


def test_genelem_sweep():
    _, s = ic.sweep("genelem")
    assert s.failures == 0 and s.max_rel_residual < 1e-9


def test_zerof2_sweep():
    reps, s = ic.sweep("zerof2")
    assert s.failures == 0
    assert all(abs(r.lhs) < 1e-12 for r in reps)


@pytest.mark.parametrize("seed", [0, 3])
def test_sweep_deterministic(seed):
    cfg = ic.SamplerConfig(seed=seed)
    a = ic.sweep("genelem", cfg)
    b = ic.sweep("genelem", cfg)
    assert a == b


def test_seed_changes_samples():
    a = ic.default_samples("genelem", ic.SamplerConfig(seed=1))
    b = ic.default_samples("genelem", ic.SamplerConfig(seed=2))
    assert a != b


def test_samples_inside_domain():
    for i in IDS:
        d = ic.lookup(i)
        for p, z in ic.default_samples(i, ic.SamplerConfig(max_samples=5)):
            d.check_domain(p, z)


def test_n_max_override():
    samples = ic.default_samples("dhtra", ic.SamplerConfig(n_max=10))
    assert [p["n"] for p, _ in samples] == list(range(1, 11))


@pytest.mark.parametrize("identity_id", IDS)
def test_default_sweep_passes(identity_id):
    _, s = ic.sweep(identity_id)
    assert s.samples > 0
    assert s.failures == 0, s.to_dict()
    if ic.lookup(identity_id).exactness.kind == "Exact":
        assert s.all_exact and s.max_rel_residual == 0


def test_csv_export_roundtrip():
    reps, _ = ic.sweep("dihedr2", ic.SamplerConfig(max_samples=6))
    text = ic.reports_to_csv(reps)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ic.CSV_HEADER
    assert len(rows) == len(reps) + 1
    for row, r in zip(rows[1:], reps):
        assert row[0] == r.id
        assert float(row[3]) == r.lhs.real
        assert json.loads(row[1]) == ic._jsonable(r.params)


def test_json_export():
    _, s1 = ic.sweep("dhtra", ic.SamplerConfig(n_max=8))
    _, s2 = ic.sweep("clausen", ic.SamplerConfig(max_samples=4))
    d = json.loads(ic.summaries_to_json([s1, s2]))
    assert d["failures"] == 0 and d["samples"] == s1.samples + s2.samples
    assert [x["id"] for x in d["identities"]] == ["dhtra", "clausen"]


@pytest.mark.parametrize("l", range(1, 7))
def test_certificate_closed_form(l):
    a = Fraction(3, 7)
    for j in range(1, l + 1):
        assert ic.zeilberger_H(l, j, a) == ic.zeilberger_H_printed(l, j, a)
    # the displayed form has a removable singularity at j = l+1
    with pytest.raises(ZeroDivisionError):
        ic.zeilberger_H_printed(l, l + 1, a)
    assert ic.zeilberger_H(l, l + 1, a) != 0


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 30), st.floats(-3.2, 3.2).filter(lambda a: abs(a - round(a)) > 0.05),
       st.floats(0.01, 0.5))
def test_dhtr1_property(n, a, x):
    # valid where the transformed argument stays inside the disk
    d = ic.lookup("dhtr1")
    try:
        d.check_domain({"n": n, "a": a}, x)
    except ic.DomainViolation:
        return
    r = ic.eval_identity("dhtr1", {"n": n, "a": a}, x)
    assert r.rel_residual < 1e-10


# -- manifest -----------------------------------------------------------------------------------

def _manifest_rows():
    rows = []
    for line in MANIFEST.read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        tag, kind, target = line.split("\t")
        rows.append((tag, kind, target))
    return rows


def test_manifest_targets_exist():
    rows = _manifest_rows()
    assert rows
    tags = [t for t, _, _ in rows]
    assert len(set(tags)) == len(tags)
    for tag, kind, target in rows:
        assert kind in ("catalog", "module", "documented"), tag
        if kind == "catalog":
            for i in target.split(","):
                ic.lookup(i)
        elif kind == "module":
            mod, _, name = target.partition(".")
            assert hasattr(importlib.import_module(f"dihedral_hpg.{mod}"), name), target
        else:
            assert target


def test_manifest_covers_catalog():
    covered = set()
    for _, kind, target in _manifest_rows():
        if kind == "catalog":
            covered.update(target.split(","))
    assert set(IDS) <= covered, sorted(set(IDS) - covered)
