import json
import subprocess
import sys

import pytest

from perindex.cli import run
from perindex.examples import model_a_teichner_orientable, model_b_teichner_nonorientable
from perindex.modelfile import (load_model, model_to_dict, reports_to_json, save_model)
from perindex.periodindex import tpic_report


@pytest.fixture
def files(tmp_path):
    a, b = tmp_path / "model-a.json", tmp_path / "model-b.json"
    assert run(["examples", "emit", "--name", "teichner-orientable", "-o", str(a)]) == 0
    assert run(["examples", "emit", "--name", "teichner-nonorientable", "-o", str(b)]) == 0
    return a, b


def test_validate(files, capsys):
    a, b = files
    assert run(["validate", str(a)]) == 0
    assert run(["validate", str(b)]) == 0
    assert "OK" in capsys.readouterr().out


def test_report_model_a(files, capsys):
    capsys.readouterr()
    assert run(["report", str(files[0])]) == 0
    out = capsys.readouterr().out
    assert "per 2, ind 4" in out and "TPIC HOLDS" in out


def test_report_model_b(files, capsys):
    capsys.readouterr()
    assert run(["report", str(files[1])]) == 3
    out = capsys.readouterr().out
    assert "per 2, ind 8, NON_MEMBER, TPIC FAILS" in out


@pytest.mark.parametrize("builder,idx", [(model_a_teichner_orientable, 0),
                                         (model_b_teichner_nonorientable, 1)])
def test_json_round_trip_is_byte_identical(files, capsys, builder, idx):
    m = builder()
    expected = reports_to_json(m, tpic_report(m))
    capsys.readouterr()
    run(["validate", str(files[idx])])
    capsys.readouterr()
    run(["report", str(files[idx]), "--json"])
    assert capsys.readouterr().out == expected
    assert model_to_dict(load_model(files[idx])) == model_to_dict(m)


def test_json_report_fields(files, capsys):
    capsys.readouterr()
    run(["report", str(files[0]), "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert doc["spin_c"] is True
    (cls,) = doc["classes"]
    assert cls["period"] == 2 and cls["index_exact"] == 4 and cls["tpic"] is True
    assert cls["regime"] == "MEMBER_NONZERO" and cls["certificate_e_x"] == [1]


def test_invalid_model_exit_2(tmp_path, capsys):
    doc = model_to_dict(model_a_teichner_orientable())
    doc["manifold"]["T"] = [[1, 1, 0]]   # drops T(x, t, t): breaks the Wu identity
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    assert run(["validate", str(p)]) == 2
    assert run(["report", str(p)]) == 2
    assert "FAIL" in capsys.readouterr().out


def test_malformed_and_missing_files_exit_1(tmp_path):
    assert run(["validate", str(tmp_path / "nope.json")]) == 1
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    assert run(["validate", str(p)]) == 1
    p.write_text(json.dumps({"schema_version": "99", "manifold": {}}))
    assert run(["report", str(p)]) == 1


def test_usage_errors_exit_64(files):
    assert run([]) == 64
    assert run(["frobnicate"]) == 64
    assert run(["report", str(files[0]), "--bogus"]) == 64
    assert run(["solve-ex", str(files[0]), "--x", "012"]) == 64
    assert run(["forms", "diag-solve", "--matrix", "11,1"]) == 64


def test_solve_ex_and_membership(files, capsys):
    a, b = files
    capsys.readouterr()
    assert run(["solve-ex", str(a), "--x", "01"]) == 0
    assert capsys.readouterr().out.strip() == "e_x = (1)"
    assert run(["solve-ex", str(b), "--x", "010"]) == 1
    assert run(["membership", str(b), "--x", "010"]) == 0
    assert capsys.readouterr().out.startswith("NON_MEMBER")
    assert run(["membership", str(a), "--x", "01"]) == 0
    assert capsys.readouterr().out.startswith("MEMBER")


def test_diag_solve(capsys):
    assert run(["forms", "diag-solve", "--matrix", "11,11"]) == 0
    assert capsys.readouterr().out.strip() == "d = 10"


def test_group_commands(capsys):
    assert run(["group", "transfer", "--semidirect", "8,5", "--element", "a^2"]) == 0
    out = capsys.readouterr().out
    assert "= a^4" in out and "nonzero" in out and "order 2" in out
    assert run(["group", "abelianize", "--semidirect", "8,5"]) == 0
    assert "G_ab = C2 x C4" in capsys.readouterr().out
    assert run(["group", "abelianize", "--semidirect", "8,2"]) == 1
    assert run(["group", "abelianize", "--table", "[[0,1],[1,0]]"]) == 0


def test_sweep(capsys):
    assert run(["examples", "sweep", "--max-dim", "2", "--factors", "2,4",
                "--assert-theorem-1-3"]) == 0
    out = capsys.readouterr().out
    assert "spin^c membership holds" in out
    assert run(["examples", "sweep", "--max-dim", "9", "--factors", "2"]) == 1


def test_exit_codes_are_deterministic(files):
    codes = {run(["report", str(files[1])]) for _ in range(3)}
    assert codes == {3}


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "perindex", "report", str(files[0])],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "TPIC HOLDS" in proc.stdout


def test_save_load_round_trip(tmp_path):
    for m in (model_a_teichner_orientable(), model_b_teichner_nonorientable()):
        p = tmp_path / "m.json"
        save_model(m, p)
        back = load_model(p)
        assert (back.H2, back.H3, back.T, back.v2, back.c1, back.name) == (
            m.H2, m.H3, m.T, m.v2, m.c1, m.name)
