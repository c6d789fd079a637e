import csv
import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest

from dihedral_hpg import cli

SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schemas"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


class TestEval:
    def test_even_example(self, capsys):
        code, out, _ = run(capsys, "eval", "--k", "0", "--l", "0", "--a", "2", "--z", "0.25", "--solution", "at0-even")
        assert code == 0
        d = json.loads(out)
        jsonschema.validate(d, schema("eval"))
        assert d["rational"] == "20/9" and d["exact"]
        assert f"{d['value'][0]:.12f}" == "2.222222222222"

    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "eval", "--a", "2", "--z", "1/4", "--output", "text")
        assert code == 0 and out.startswith("2.222222222222")

    def test_at1_value(self, capsys):
        # the z = 1 solution with k = l = 0 is ((1+sqrt z)/2)^{-a}; the catalogue example quotes
        # the value of the z -> 1-z image instead (see the decisions ledger)
        code, out, _ = run(capsys, "eval", "--k", "0", "--l", "0", "--a", "1", "--z", "0.75", "--solution", "at1",
                           "--output", "text")
        assert code == 0
        assert out.split()[0] == "1.071796769724"

    def test_csv_roundtrip(self, capsys):
        code, out, _ = run(capsys, "eval", "--k", "1", "--l", "2", "--a", "0.3", "--z", "0.4", "--output", "csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 1
        code, js, _ = run(capsys, "eval", "--k", "1", "--l", "2", "--a", "0.3", "--z", "0.4")
        d = json.loads(js)
        assert json.loads(rows[0]["value"]) == d["value"]
        assert float(rows[0]["abs_err"]) == d["abs_err"]

    def test_z_domain(self, capsys):
        code, _, err = run(capsys, "eval", "--a", "1", "--z", "1.5")
        assert code == 2
        assert "z=" in err and "off" in err

    def test_bad_argument(self, capsys):
        code, _, _ = run(capsys, "eval", "--a", "x", "--z", "0.5")
        assert code == 2

    def test_missing_subcommand(self, capsys):
        assert run(capsys)[0] == 2


class TestVerify:
    def test_dhtrb(self, capsys):
        code, out, _ = run(capsys, "verify", "--id", "dhtrb", "--n-max", "64", "--output", "text")
        assert code == 0
        assert out.strip() == "dhtrb: exact, 64/64"

    def test_zerof2(self, capsys):
        code, out, _ = run(capsys, "verify", "--id", "zerof2", "--output", "csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert rows and max(abs(complex(float(r["lhs_re"]), float(r["lhs_im"]))) for r in rows) < 1e-12

    def test_summary_schema(self, capsys):
        code, out, _ = run(capsys, "verify", "--id", "clausen", "--id", "dhtra", "--samples", "5")
        assert code == 0
        d = json.loads(out)
        jsonschema.validate(d, schema("summary"))
        assert [x["id"] for x in d["identities"]] == ["clausen", "dhtra"]

    def test_failure_exit_code(self, capsys):
        # an absurd tolerance turns numeric entries into failures
        code, _, _ = run(capsys, "verify", "--id", "clausen", "--tol", "1e-300", "--samples", "20")
        assert code == 1

    def test_unknown_id(self, capsys):
        code, _, err = run(capsys, "verify", "--id", "nope")
        assert code == 2 and "nope" in err

    def test_output_dir(self, capsys, tmp_path):
        code, _, _ = run(capsys, "verify", "--id", "dihedr1", "--out", str(tmp_path))
        assert code == 0
        header = (tmp_path / "report.csv").read_text().splitlines()[0]
        assert header.split(",")[0] == "id"
        jsonschema.validate(json.loads((tmp_path / "summary.json").read_text()), schema("summary"))

    def test_output_dir_from_env(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUT_ENV, str(tmp_path / "env"))
        assert run(capsys, "verify", "--id", "dihedr1")[0] == 0
        assert (tmp_path / "env" / "report.csv").exists()

    @pytest.mark.slow
    def test_all_byte_identical(self, tmp_path):
        outs = []
        for name in ("a", "b"):
            d = tmp_path / name
            r = subprocess.run([sys.executable, "-m", "dihedral_hpg", "verify", "--all", "--seed", "7",
                                "--out", str(d)], capture_output=True, text=True)
            assert r.returncode == 0, r.stderr[-2000:]
            outs.append(((d / "report.csv").read_bytes(), (d / "summary.json").read_bytes(), r.stdout))
        assert outs[0] == outs[1]


class TestKlein:
    def test_example(self, capsys):
        code, out, _ = run(capsys, "klein", "--k", "1", "--l", "0", "--n", "1", "--m", "2")
        assert code == 0
        d = json.loads(out)
        jsonschema.validate(d, schema("covering"))

        def poly(v):
            return [Fraction(int(p), int(q)) for p, q in v]
        assert poly(d["theta1"]) == [1, Fraction(-3, 4)]
        assert poly(d["theta2"]) == [Fraction(1, 4)]
        assert d["degree"] == 3 and d["insrel_verified"]

    def test_trivial(self, capsys):
        code, out, _ = run(capsys, "klein", "--k", "0", "--l", "0", "--n", "1", "--m", "2")
        d = json.loads(out)
        assert code == 0 and d["degree"] == 1
        assert d["phi"] == {"num": [["0", "1"], ["1", "1"]], "den": [["1", "1"]]}

    def test_gcd_violation(self, capsys):
        code, _, err = run(capsys, "klein", "--k", "1", "--l", "1", "--n", "2", "--m", "2")
        assert code == 2 and "gcd" in err

    def test_f2_source_agrees(self, capsys):
        _, a, _ = run(capsys, "klein", "--k", "2", "--l", "1", "--n", "3", "--m", "4")
        _, b, _ = run(capsys, "klein", "--k", "2", "--l", "1", "--n", "3", "--m", "4", "--source", "F2Normalized")
        assert json.loads(a)["theta1"] == json.loads(b)["theta1"]

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "klein", "--k", "1", "--l", "1", "--n", "1", "--m", "3", "--output", "csv")
        row = next(csv.DictReader(io.StringIO(out)))
        assert code == 0 and int(row["degree"]) == 7


class TestTheta:
    def test_n3(self, capsys):
        code, out, _ = run(capsys, "theta", "--n", "3")
        d = json.loads(out)
        jsonschema.validate(d, schema("theta"))
        assert code == 0 and d["theta1"] == [["1", "1"], ["3", "1"]] and d["verified"]

    def test_n0(self, capsys):
        assert run(capsys, "theta", "--n", "0")[0] == 2


class TestClassify:
    def test_log(self, capsys):
        code, out, _ = run(capsys, "classify", "--k", "0", "--l", "0", "--m", "0")
        d = json.loads(out)
        jsonschema.validate(d, schema("classify"))
        assert code == 0 and d["verdict"] == "Logarithmic"

    def test_cyclic(self, capsys):
        _, out, _ = run(capsys, "classify", "--k", "1", "--l", "0", "--m", "2")
        assert json.loads(out)["verdict"] == "CyclicOrder2"

    def test_exponent_reading_of_k0_l2_m3(self, capsys):
        # with m read as the third exponent difference, 0+2+3 is odd and 3 >= |0-2|
        _, out, _ = run(capsys, "classify", "--k", "0", "--l", "2", "--m", "3")
        assert json.loads(out)["verdict"] == "CyclicOrder2"

    def test_integer_a_reading(self, capsys):
        _, out, _ = run(capsys, "classify", "--k", "0", "--l", "2", "--a-int", "-3")
        d = json.loads(out)
        jsonschema.validate(d, schema("classify"))
        assert d["verdict"] == "Logarithmic"

    def test_text(self, capsys):
        _, out, _ = run(capsys, "classify", "--k", "1", "--l", "1", "--m", "2", "--output", "text")
        assert out.startswith("Logarithmic")


def test_entry_point_module():
    r = subprocess.run([sys.executable, "-m", "dihedral_hpg", "theta", "--n", "2", "--output", "text"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "theta1" in r.stdout


def test_config_validation():
    with pytest.raises(cli.UsageError):
        cli.CliConfig("eval", output="xml").validate()
    with pytest.raises(cli.UsageError):
        cli.CliConfig("eval", tol=-1).validate()
