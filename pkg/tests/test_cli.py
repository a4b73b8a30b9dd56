import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from anomalykit.anomaly import SpectralCoverData, parse_ledger_json
from anomalykit.cli import main
from anomalykit.genus import ManifoldDescriptor
from anomalykit.weierstrass import WeierstrassModel

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


class TestLGenus:
    def test_k2(self, capsys):
        code, out, _ = run(capsys, "lgenus", "--k", "2")
        assert code == 0
        assert out.strip() == "L_2 = (7*p2 - p1^2)/45"

    def test_methods_agree(self, capsys):
        _, a, _ = run(capsys, "lgenus", "--k", "4")
        _, b, _ = run(capsys, "lgenus", "--k", "4", "--method", "generators")
        assert a == b

    def test_json(self, capsys):
        code, out, _ = run(capsys, "lgenus", "--k", "3", "--json")
        data = json.loads(out)
        assert code == 0
        assert data["coefficients"]["3"] == "62/945"
        assert list(data["coefficients"]) == ["3", "2,1", "1,1,1"]

    def test_bad_k(self, capsys):
        code, _, err = run(capsys, "lgenus", "--k", "0")
        assert code == 1 and "k" in err


class TestSignature:
    def test_product(self, capsys):
        code, out, _ = run(capsys, "signature", "--product", "2,2")
        assert code == 0 and "signature: 1" in out

    def test_input_file(self, capsys):
        code, out, _ = run(capsys, "signature", "--input", str(DATA / "cp2xcp2.json"), "--json")
        data = json.loads(out)
        assert code == 0 and data["signature"] == "1"
        ManifoldDescriptor.from_json(data["manifold"])

    def test_schema_violation_exits_1(self, capsys, tmp_path):
        path = write_json(tmp_path, "m.json", {"k": 2, "pontrjagin": {"1": "3"}})
        code, _, err = run(capsys, "signature", "--input", path)
        assert code == 1 and "weight" in err


class TestSurface:
    def test_universal_family(self, capsys):
        code, out, _ = run(capsys, "surface-analyze", "--input", str(DATA / "universal.json"))
        assert code == 0
        assert "discriminant (factored) = 19683*(-1 + t)^9*t^2" in out
        assert "j = (t) / (1)" in out
        for symbol in ("II", "III*", "I_1"):
            assert f" {symbol} " in out
        for twelfths in ("-2/12", "-9/12", "-1/12"):
            assert twelfths in out
        assert "continuous degree: 1" in out
        assert "holonomy group: Z_12" in out

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "surface-analyze", "--input", str(DATA / "universal.json"), "--json")
        data = json.loads(out)
        assert code == 0
        assert WeierstrassModel.from_json(data["model"]) == WeierstrassModel.from_json(
            json.loads((DATA / "universal.json").read_text())
        )
        ledger = parse_ledger_json(data["ledger"])
        assert [c["coeff"] for c in ledger["currents"]] == [Fraction(-3, 4), Fraction(-1, 6), Fraction(-1, 12)]
        assert [f["type"] for f in data["fibers"]] == ["III*", "II", "I_1"]

    def test_degenerate_exits_1(self, capsys, tmp_path):
        path = write_json(tmp_path, "s.json", {"n": 1, "g2": ["3"], "g3": ["1"]})
        code, _, err = run(capsys, "surface-analyze", "--input", path)
        assert code == 1 and "degenerate" in err

    def test_non_minimal_exits_1(self, capsys, tmp_path):
        path = write_json(tmp_path, "s.json", {"n": 2, "g2": ["0", "0", "0", "0", "1"], "g3": ["0"] * 6 + ["1", "1"]})
        code, _, err = run(capsys, "surface-analyze", "--input", path)
        assert code == 1 and "not minimal" in err

    def test_twist(self, capsys):
        code, out, _ = run(capsys, "surface-twist", "--input", str(DATA / "universal.json"), "--q", "0,1")
        assert code == 0 and "IV*" in out and "I_1*" in out

    def test_twist_json_and_minimize(self, capsys, tmp_path):
        _, out, _ = run(capsys, "surface-twist", "--input", str(DATA / "universal.json"), "--q", "0,1", "--json")
        once = write_json(tmp_path, "once.json", json.loads(out))
        code, out, _ = run(capsys, "surface-twist", "--input", once, "--q", "0,1", "--minimize", "--json")
        assert code == 0
        assert json.loads(out) == json.loads((DATA / "universal.json").read_text())

    def test_bad_twist_polynomial(self, capsys):
        code, _, _ = run(capsys, "surface-twist", "--input", str(DATA / "universal.json"), "--q", "0,0,1")
        assert code == 1
        code, _, _ = run(capsys, "surface-twist", "--input", str(DATA / "universal.json"), "--q", "a,b")
        assert code == 2


class TestAnomaly:
    def test_cancellation(self, capsys):
        code, out, _ = run(capsys, "anomaly", "--input", str(DATA / "nodal12.json"), "--rank", "2", "--degR", "2")
        assert code == 0
        assert out.rstrip().endswith("continuous part: 0; local anomaly canceled")
        assert out.count("-1/6") == 12

    def test_present(self, capsys):
        code, out, _ = run(capsys, "anomaly", "--input", str(DATA / "nodal24.json"), "--rank", "2")
        assert code == 0 and "local anomaly present (deg R = 4 cancels it)" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "anomaly", "--input", str(DATA / "nodal12.json"), "--json")
        ledger = parse_ledger_json(out)
        assert code == 0
        assert [c["coeff"] for c in ledger["currents"]] == [Fraction(-1, 12)] * 12
        assert ledger["continuous_degree"] == 1
        assert ledger["holonomy_order"] == 12

    def test_bad_rank(self, capsys):
        code, _, _ = run(capsys, "anomaly", "--input", str(DATA / "nodal12.json"), "--rank", "0")
        assert code == 1


class TestTorsion:
    def test_values(self, capsys):
        code, out, _ = run(capsys, "torsion", "--tau", "i")
        assert code == 0
        assert "j: 1+0i" in out or "j: 1-0i" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "torsion", "--tau", "0.3+0.8i", "--json")
        data = json.loads(out)
        assert code == 0
        assert data["analytic_torsion"] == data["quillen_norm_sq"]

    def test_lower_half_plane(self, capsys):
        code, _, err = run(capsys, "torsion", "--tau", "0.2-1i")
        assert code == 1 and "upper half plane" in err


class TestSpectral:
    def test_rational(self, capsys):
        code, out, _ = run(
            capsys, "spectral", "--input", str(DATA / "universal.json"), "--cover", str(DATA / "cover_rational.json")
        )
        assert code == 0 and "bound 3*deg R = 6" in out

    def test_json(self, capsys):
        code, out, _ = run(
            capsys,
            "spectral",
            "--input",
            str(DATA / "nodal24.json"),
            "--cover",
            str(DATA / "cover_k3.json"),
            "--json",
        )
        data = json.loads(out)
        assert code == 0
        assert data["branch_degree"] <= data["degree_bound"] == 12
        SpectralCoverData.from_json(json.loads((DATA / "cover_k3.json").read_text()))

    def test_degree_violation(self, capsys, tmp_path):
        cover = write_json(tmp_path, "c.json", {"degR": 1, "a0": ["1"], "a2": ["1"]})
        code, _, err = run(capsys, "spectral", "--input", str(DATA / "universal.json"), "--cover", cover)
        assert code == 1 and "deg a2" in err


class TestExitDiscipline:
    def test_unknown_flag(self, capsys):
        code, _, _ = run(capsys, "lgenus", "--k", "2", "--verbose")
        assert code == 2

    def test_unknown_verb(self, capsys):
        code, _, _ = run(capsys, "plot")
        assert code == 2

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "surface-analyze", "--input", str(tmp_path / "absent.json"))
        assert code == 2 and "cannot read" in err

    def test_invalid_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, _ = run(capsys, "surface-analyze", "--input", str(path))
        assert code == 2

    def test_schema_violation(self, capsys, tmp_path):
        path = write_json(tmp_path, "s.json", {"n": 1, "g2": ["1"]})
        code, _, _ = run(capsys, "anomaly", "--input", path)
        assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["lgenus", "--k", "5"],
        ["surface-analyze", "--input", str(DATA / "nodal12_sextic.json"), "--json"],
        ["anomaly", "--input", str(DATA / "universal.json"), "--rank", "3", "--degR", "1"],
        ["torsion", "--tau=-0.45+0.91i"],
    ],
)
def test_repeated_runs_are_byte_identical(argv):
    cmd = [sys.executable, "-m", "anomalykit", *argv]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
