import json
from pathlib import Path

import pytest

from fcmono.cli import main
from fcmono.export import matrix_from_json
from fcmono.scalars import ExactField
from fcmono.monodromy import named_matrices

GOLDEN = Path(__file__).parent / "golden"

CLASSIFY_CASES = {
    "classify_case_i.json": ["--a", "-1", "--b", "1/3", "--c", "1/5"],
    "classify_case_ii.json": ["--a", "2", "--b", "1/3", "--c", "1/5"],
    "classify_irreducible.json": ["--a", "1/2", "--b", "1/3", "--c", "1/5"],
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_example(capsys):
    code, out, _ = run(capsys, "classify", "--m", "1", "--a", "-1", "--b", "1/3", "--c", "1/5")
    assert code == 0
    obj = json.loads(out)
    assert obj["reducible"] is True
    assert obj["invariant_subspace"]["case"] == "negative-integer"


@pytest.mark.parametrize("fname", sorted(CLASSIFY_CASES))
def test_classify_golden_reports(capsys, fname):
    code, out, _ = run(capsys, "classify", "--m", "1", *CLASSIFY_CASES[fname])
    assert code == 0
    assert out == (GOLDEN / fname).read_text()


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "--m", "2", "--backing", "exact")[0] == 0
    assert run(capsys, "verify", "--m", "2", "--backing", "exact", "--mutation", "flip-v")[0] == 1


def test_verify_json_is_byte_stable(capsys):
    args = ("verify", "--m", "3", "--backing", "numeric", "--seed", "4", "--points", "2", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert json.loads(first)["ok"] is True


def test_matrices_htilde(capsys):
    code, out, _ = run(capsys, "matrices", "--m", "2", "--basis", "tilde", "--name", "Htilde", "--backing", "exact")
    assert code == 0
    obj = json.loads(out)
    assert obj["name"] == "Htilde" and obj["basis"] == "tilde" and obj["m"] == 2
    assert len(obj["entries"]) == 4 and all(len(r) == 4 for r in obj["entries"])
    assert out == (GOLDEN / "tilde_Htilde.json").read_text()


@pytest.mark.parametrize("argv", [
    ["matrices", "--m", "2", "--name", "Nope"],
    ["matrices", "--m", "2", "--backing", "exact", "--a", "1/2"],
    ["matrices", "--m", "2", "--backing", "numeric", "--a", "1/2", "--b", "1/3", "--c", "1/5"],
    ["verify", "--m", "4", "--backing", "exact"],
    ["verify", "--m", "0"],
    ["classify", "--m", "2", "--a", "1", "--b", "1", "--c", "1/5"],
    ["classify", "--a", "x", "--b", "1", "--c", "1/5"],
    ["classify", "--a", "1/2", "--b", "1/3", "--c", "1/5", "--check-subspace"],
    ["series", "--a", "1/2", "--b", "1/3", "--c", "1/5", "--index", "01"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_tolerance_env(capsys, monkeypatch):
    args = ("classify", "--a", "-1.0000001", "--b", "0.3", "--c", "0.2")
    _, out, _ = run(capsys, *args)
    assert json.loads(out)["irreducible"] is True
    monkeypatch.setenv("FC_MONO_TOL", "1e-5")
    _, out, _ = run(capsys, *args)
    assert json.loads(out)["irreducible"] is False
    monkeypatch.setenv("FC_MONO_TOL", "zero")
    assert run(capsys, *args)[0] == 2


def test_check_subspace(capsys):
    code, out, _ = run(capsys, "classify", "--a", "2", "--b", "1/3", "--c", "1/5", "--check-subspace")
    assert code == 0 and json.loads(out)["subspace_residual"] < 1e-12


def test_series_records(capsys):
    code, out, _ = run(capsys, "series", "--a", "1/3", "--b", "2/7", "--c", "1/5", "3/8",
                       "--index", "10", "--N", "10", "--residual", "--x", "0.05,0.02", "--x", "1/50,1/40")
    assert code == 0
    obj = json.loads(out)
    assert obj["pde_residual"] == 0
    assert len(obj["records"]) == 2
    rec = obj["records"][0]
    assert set(rec) == {"point", "in_domain", "value", "truncation_order", "estimated_tail", "index"}


def test_series_pole_exit_code(capsys):
    assert run(capsys, "series", "--a", "1/3", "--b", "2/7", "--c", "-1", "--N", "5")[0] == 1


def test_golden_fixtures_byte_stable(tmp_path, capsys):
    assert run(capsys, "export", "--m", "2", "--out", str(tmp_path))[0] == 0
    produced = sorted(p.name for p in tmp_path.iterdir())
    expected = sorted(p.name for p in GOLDEN.glob("plain_*.json")) + sorted(p.name for p in GOLDEN.glob("tilde_*.json"))
    assert produced == sorted(expected)
    for name in produced:
        assert (tmp_path / name).read_bytes() == (GOLDEN / name).read_bytes()


def test_fixture_round_trip():
    F = ExactField(2)
    for basis in ("plain", "tilde"):
        mats = named_matrices(F, basis)
        for name, M in mats.items():
            obj = json.loads((GOLDEN / f"{basis}_{name}.json").read_text())
            assert matrix_from_json(obj, F).equals(M)


def test_numeric_matrices_round_trip(capsys):
    from fcmono.scalars import NumericField
    from fcmono.params import ParameterPoint
    from fractions import Fraction as Fr
    code, out, _ = run(capsys, "matrices", "--m", "1", "--backing", "numeric", "--name", "H",
                       "--a", "1/3", "--b", "2/7", "--c", "1/5")
    assert code == 0
    F = NumericField.at(ParameterPoint(Fr(1, 3), Fr(2, 7), (Fr(1, 5),)))
    M = matrix_from_json(json.loads(out), F)
    assert M.to_numpy().tolist() == named_matrices(F, "plain")["H"].to_numpy().tolist()


def test_module_entry_point():
    import subprocess
    import sys
    import types

    import fcmono
    assert isinstance(fcmono.classify, types.ModuleType)
    proc = subprocess.run([sys.executable, "-m", "fcmono", "classify", "--a", "1/2", "--b", "1/3", "--c", "1/5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "classify_irreducible.json").read_text()
