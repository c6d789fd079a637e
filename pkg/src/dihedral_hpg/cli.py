"""Command-line surface: eval, verify, klein, theta, classify.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import dihedral as dh
from . import idcatalog as ic
from . import transforms as tr
from .numcore import DomainError, parse_scalar

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
OUT_ENV = "DIHEDRAL_HPG_OUT"


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    output: str = "json"
    seed: int = 0
    tol: float | None = None
    params: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.command not in ("eval", "verify", "klein", "theta", "classify"):
            raise UsageError(f"unknown command {self.command!r}")
        if self.output not in ("json", "csv", "text"):
            raise UsageError(f"unknown output format {self.output!r}")
        if self.seed < 0:
            raise UsageError("--seed must be a non-negative integer")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("--tol must be positive")


def _scalar(text: str):
    try:
        return parse_scalar(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def _pos_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("expected a positive number")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=_nonneg_int, default=0)
    common.add_argument("--tol", type=_pos_float, default=None, help="tolerance override for numeric checks")

    p = argparse.ArgumentParser(prog="dihedral-hpg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate a dihedral local solution")
    e.add_argument("--k", type=_nonneg_int, default=0)
    e.add_argument("--l", type=_nonneg_int, default=0)
    e.add_argument("--a", type=_scalar, required=True)
    e.add_argument("--z", type=_scalar, required=True)
    e.add_argument("--solution", choices=[s.value for s in dh.SolutionKind], default="at0-even")

    v = sub.add_parser("verify", parents=[common], help="sweep catalog identities")
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--id", action="append", dest="ids", metavar="ID")
    g.add_argument("--all", action="store_true")
    v.add_argument("--samples", type=_nonneg_int, default=None, help="cap on samples per identity")
    v.add_argument("--n-max", type=_nonneg_int, default=None, help="n range for identities indexed by n")
    v.add_argument("--out", default=None, help=f"directory for report.csv / summary.json (default ${OUT_ENV})")

    k = sub.add_parser("klein", parents=[common], help="build a Klein pull-back covering")
    for name in ("k", "l", "n", "m"):
        k.add_argument(f"--{name}", type=_nonneg_int, required=True)
    k.add_argument("--source", choices=[s.value for s in tr.GSource], default=tr.GSource.F3.value)
    k.add_argument("--raw", action="store_true", help="skip the G(0) = 1 normalization")

    t = sub.add_parser("theta", parents=[common], help="theta1, theta2 of the degree-n transformation")
    t.add_argument("--n", type=_nonneg_int, required=True)

    c = sub.add_parser("classify", parents=[common], help="logarithmic vs cyclic-order-2 degeneracy")
    c.add_argument("--k", type=_nonneg_int, required=True)
    c.add_argument("--l", type=_nonneg_int, required=True)
    cg = c.add_mutually_exclusive_group(required=True)
    cg.add_argument("--m", type=_nonneg_int, help="third exponent difference")
    cg.add_argument("--a-int", type=int, help="integer a")
    return p


# -- rendering --------------------------------------------------------------------------------

def _flat(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        out[k] = json.dumps(v) if isinstance(v, (list, dict)) else v
    return out


def _emit(payload: dict, fmt: str, text: str | None = None, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(payload, sort_keys=True) + "\n")
    elif fmt == "csv":
        row = _flat(payload)
        w = csv.DictWriter(stream, fieldnames=list(row), lineterminator="\n")
        w.writeheader()
        w.writerow(row)
    else:
        stream.write((text if text is not None else "\n".join(f"{k}: {v}" for k, v in payload.items())) + "\n")


def _qstr(q) -> str:
    return str(Fraction(q))


# -- commands --------------------------------------------------------------------------------

def run_eval(args) -> int:
    p = dh.DihedralParams(args.k, args.l, args.a)
    hv = dh.evaluate(p, args.z, args.solution)
    if hv.exact:
        method = "exact rational arithmetic"
    else:
        method = "closed form, double precision" if not hv.terms else f"series, {hv.terms} terms"
    payload = {"solution": args.solution, "k": args.k, "l": args.l, "a": str(args.a), "z": str(args.z),
               "value": [hv.value.real, hv.value.imag], "abs_err": hv.abs_err, "exact": hv.exact,
               "rational": _qstr(hv.rational) if hv.rational is not None else None, "method": method}
    val = hv.value.real if hv.value.imag == 0 else hv.value
    text = f"{val:.12f}" if isinstance(val, float) else str(val)
    _emit(payload, args.output, f"{text}  (abs_err {hv.abs_err:.3g}; {method})")
    return EXIT_OK


def run_verify(args) -> int:
    ids = [d.id for d in ic.list_identities()] if args.all else args.ids
    for i in ids:
        ic.lookup(i)
    cfg = ic.SamplerConfig(seed=args.seed, max_samples=args.samples, tol=args.tol, n_max=args.n_max)
    reports, summaries = ic.sweep_all(cfg, ids)
    out = args.out or os.environ.get(OUT_ENV)
    if out:
        d = Path(out)
        d.mkdir(parents=True, exist_ok=True)
        (d / "report.csv").write_text(ic.reports_to_csv(reports))
        (d / "summary.json").write_text(ic.summaries_to_json(summaries) + "\n")
    failures = sum(s.failures for s in summaries)
    if args.output == "json":
        sys.stdout.write(ic.summaries_to_json(summaries) + "\n")
    elif args.output == "csv":
        sys.stdout.write(ic.reports_to_csv(reports))
    else:
        for s in summaries:
            kind = "exact" if s.all_exact else f"max rel {s.max_rel_residual:.3g}"
            sys.stdout.write(f"{s.id}: {kind}, {s.samples - s.failures}/{s.samples}\n")
    return EXIT_FAIL if failures else EXIT_OK


def run_klein(args) -> int:
    cov = tr.klein_covering(args.k, args.l, args.n, args.m, source=args.source, normalized=not args.raw)
    res = tr.insrel_residual(cov)
    num, den = cov.phi_parts()
    payload = cov.to_dict()
    payload["phi"] = {"num": num.to_json(), "den": den.to_json()}
    payload["insrel_verified"] = res.is_zero()
    text = (f"theta1 = {[str(v) for v in cov.theta1.c]}\ntheta2 = {[str(v) for v in cov.theta2.c]}\n"
            f"psi = {[str(v) for v in cov.psi.c]}\nC = {cov.c_const}\ndegree {cov.degree}")
    _emit(payload, args.output, text)
    return EXIT_OK if res.is_zero() else EXIT_FAIL


def run_theta(args) -> int:
    if args.n < 1:
        raise DomainError("n must be >= 1")
    t1, t2 = tr.theta_pair(args.n)
    ok = tr.verify_theta(args.n)
    payload = {"n": args.n, "theta1": t1.to_json(), "theta2": t2.to_json(), "verified": ok}
    _emit(payload, args.output, f"theta1 = {[str(v) for v in t1.c]}\ntheta2 = {[str(v) for v in t2.c]}")
    return EXIT_OK if ok else EXIT_FAIL


def run_classify(args) -> int:
    if args.m is not None:
        v = dh.classify_degenerate(args.k, args.l, args.m)
        form = {"m": args.m}
    else:
        v = dh.classify_integer_a(dh.DihedralParams(args.k, args.l, args.a_int))
        form = {"a": args.a_int}
    payload = {"k": args.k, "l": args.l, **form, "verdict": v.tag.value, "condition": v.reason}
    _emit(payload, args.output, f"{v.tag.value} ({v.reason})")
    return EXIT_OK


_COMMANDS = {"eval": run_eval, "verify": run_verify, "klein": run_klein, "theta": run_theta,
             "classify": run_classify}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_USAGE
    cfg = CliConfig(args.command, args.output, args.seed, args.tol, vars(args))
    try:
        cfg.validate()
        return _COMMANDS[args.command](args)
    except (UsageError, DomainError, KeyError, tr.GcdViolation) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        sys.stderr.write(f"error: {msg}\n")
        return EXIT_USAGE
    except (tr.StructureViolation, tr.NotAPerfectPower, tr.NonDivisible) as e:
        sys.stderr.write(f"verification failed: {e}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
