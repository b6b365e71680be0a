import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from splitcone.cli import run
from splitcone.io import InputError, load_matrix, matrix_from_csv, parse_order, system_from_json
from splitcone import Split

DATA = Path(__file__).resolve().parents[1] / "src" / "splitcone" / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_classify_tree():
    code, out, _ = call("classify", "four-point", DATA / "tree5.csv")
    assert code == 0 and out.strip() == "true"


def test_classify_failure_exit_code_and_witness():
    code, out, _ = call("classify", "four-point", "--format", "json", DATA / "circular5.csv")
    assert code == 1
    data = json.loads(out)
    assert data["result"] is False
    assert data["witness"]["quad"] == [1, 2, 3, 5]
    assert data["witness"]["sums"][0] == {"num": 48, "den": 1}


def test_equidistant_json_is_exact():
    code, out, _ = call("classify", "equidistant", "--format", "json", DATA / "polygon5_weighted.json")
    assert code == 0
    assert "8" in out


def test_rays_and_facets_counts():
    _, out, _ = call("rays", "--n", 5)
    assert len(out.strip().splitlines()) == 15
    code, out, _ = call("facets", "--n", 5, "--format", "json")
    assert code == 0 and len(json.loads(out)) == 12


def test_decompose_json_wire_format():
    code, out, _ = call("decompose", "--format", "json", DATA / "equidistant5.csv")
    terms = json.loads(out)
    assert code == 0
    assert {"coeff", "tau"} <= set(terms[0])
    assert sorted(t["coeff"] for t in terms) == ["2", "4", "4", "6"]


def test_xdiagram_check_lists_violations():
    code, out, _ = call("xdiagram", "check", DATA / "rules6.json")
    assert code == 1
    assert "rule 1: f(3,6)=1, g(3,7)=1 but g(3,6)=0" in out


def test_cry_volume_and_phi():
    assert call("cry", "volume", "--n", 4)[1].strip() == "2"
    code, out, _ = call("cry", "phi", DATA / "cry9.json")
    assert code == 0 and out.splitlines()[0] == "1 1 1 1 1 1 1 1"


def test_net_commands():
    code, out, _ = call("net", "verify", DATA / "orders6.json", "--order", "2-4,1-3,3-5")
    assert code == 0 and out.strip() == "true"
    code, out, _ = call("net", "render-graph", DATA / "network6.json")
    assert code == 0 and out.startswith("graph splitnetwork")
    code, out, _ = call("net", "render-polygon", DATA / "polygon5.json")
    assert code == 0 and out.startswith("<svg")


def test_usage_errors_exit_two(tmp_path):
    assert call("rays")[0] == 2
    assert call("classify", "bogus", DATA / "tree5.csv")[0] == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2,3\n4,x\n5\n")
    code, _, err = call("weights", bad)
    assert code == 2 and f"{bad}:2: field 2" in err
    code, _, err = call("weights", tmp_path / "missing.csv")
    assert code == 2 and "cannot read" in err


def test_thread_variable_is_validated(monkeypatch):
    monkeypatch.setenv("SPLITCONE_THREADS", "0")
    assert call("rays", "--n", 3)[0] == 2
    monkeypatch.setenv("SPLITCONE_THREADS", "2")
    assert call("rays", "--n", 3)[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "splitcone", "rays", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.split() == ["1|23", "12|3", "1|2|3"]


def test_csv_layouts_agree():
    strict = matrix_from_csv("1,2,3\n4,5\n6\n")
    with_diag = matrix_from_csv("0,1,2,3\n0,4,5\n0,6\n0\n")
    full = matrix_from_csv("0,1,2,3\n1,0,4,5\n2,4,0,6\n3,5,6,0\n")
    header = matrix_from_csv("a,b,c\n1,2,3\n4,5\n6\n")
    assert strict == with_diag == full == header


def test_json_matrix_and_system_errors(tmp_path):
    p = tmp_path / "m.json"
    p.write_text('{"n": 3, "delta": {"1,2": "1/2", "1,3": 1, "2,3": 0.25}}')
    d = load_matrix(p)
    assert d[2, 3] * 4 == 1 and d[1, 2] * 2 == 1
    with pytest.raises(InputError, match="missing field 'n'"):
        system_from_json({"splits": []})
    with pytest.raises(InputError, match=r"splits\[0\]"):
        system_from_json({"n": 4, "splits": [[3, 1]]})
    with pytest.raises(InputError, match="nonnegative"):
        system_from_json({"n": 3, "splits": [], "weights": [[1, 1, -1]]})


def test_parse_order_forms():
    assert parse_order("1-3,3-5") == [Split(1, 3), Split(3, 5)]
    assert parse_order("[1,3];[3,5]") == [Split(1, 3), Split(3, 5)]
    with pytest.raises(InputError):
        parse_order("1-x")
