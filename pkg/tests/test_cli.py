import json
import subprocess
import sys

import jsonschema
import pytest

from kalai_lab import cli
from kalai_lab.corpus import fig2
from kalai_lab.io import GRAPH_SCHEMA, POLYTOPE_SCHEMA, graph_from_json, read_polytope, write_polytope
from kalai_lab.polytope import cube
from kalai_lab.reproduce import Claim


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def claim_lines(out):
    rows = [line.split("\t") for line in out.splitlines() if "\t" in line]
    assert rows[0] == ["claim", "expected", "computed", "verdict"]
    return rows[1:]


@pytest.mark.parametrize(
    "argv",
    [
        ["cube", "3"],
        ["cube", "4"],
        ["fig2"],
        ["pi3"],
        ["mahler", "4"],
        ["hanner", "sum(prod(seg(1,2),seg(1,1)),dual(seg(1,3)))"],
        ["hanner", "prod(seg(1,1),sum(seg(1,1),seg(1,1)))"],
    ],
)
def test_reproduce_targets_pass(capsys, argv):
    code, out, _ = run(capsys, "reproduce", *argv)
    rows = claim_lines(out)
    assert rows and all(r[3] == "PASS" for r in rows)
    assert code == 0


def test_reproduce_fig2_values(capsys):
    _, out, _ = run(capsys, "reproduce", "fig2")
    rows = {r[0]: r for r in claim_lines(out)}
    assert rows["fig2 s"][2] == "31"
    assert rows["fig2 section s"][2] == "13"
    assert rows["fig2 f-vector"][2] == "(8, 14, 8)"


def test_reproduce_writes_figures(capsys, tmp_path):
    code, _, _ = run(capsys, "reproduce", "fig2", "--figures", str(tmp_path))
    assert code == 0
    pngs = sorted(p.name for p in tmp_path.glob("*.png"))
    assert pngs == ["fig2_fvector.png", "fig2_polytope.png"]
    assert all((tmp_path / n).stat().st_size > 1000 for n in pngs)


def test_reproduce_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "reproduce", lambda *a: [Claim("x", "1", "2", False)])
    code, out, _ = run(capsys, "reproduce", "fig2")
    assert code == 1
    assert out.splitlines()[1].endswith("FAIL")


@pytest.mark.parametrize("argv", [["reproduce", "nope"], ["reproduce", "cube", "9"], ["reproduce", "hanner"]])
def test_reproduce_bad_targets(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_input_errors(capsys, tmp_path):
    missing = tmp_path / "missing.json"
    assert run(capsys, "faces", str(missing))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "vertices": [["1.5", "0"], ["0", "1"]]}')
    assert run(capsys, "faces", str(bad))[0] == 2
    bad.write_text("not json")
    assert run(capsys, "check", str(bad))[0] == 2
    flat = tmp_path / "flat.json"
    flat.write_text('{"dim": 2, "vertices": [["0", "0"], ["1", "1"], ["2", "2"]]}')
    assert run(capsys, "faces", str(flat))[0] == 2
    assert run(capsys, "hanner", "seg(1)")[0] == 2


def test_json_commands(capsys, tmp_path):
    path = tmp_path / "fig2.json"
    write_polytope(fig2(), path)
    jsonschema.validate(json.loads(path.read_text()), POLYTOPE_SCHEMA)
    assert read_polytope(path) == fig2()

    code, out, _ = run(capsys, "check", str(path))
    assert code == 0 and json.loads(out)["unconditional"] is True

    code, out, _ = run(capsys, "faces", str(path))
    data = json.loads(out)
    assert code == 0 and data["s"] == 31 and data["f_vector"] == [8, 14, 8] and data["euler"]

    code, out, _ = run(capsys, "prove5", str(path))
    data = json.loads(out)
    assert code == 0 and data["passed"] and len(data["partitions"]) == 3

    code, out, _ = run(capsys, "classify", str(path))
    assert code == 0 and json.loads(out)["minimizer"] is False

    code, out, _ = run(capsys, "special", str(path))
    data = json.loads(out)
    assert code == 0 and data["total"] and data["injective"] and data["bound"] == 27


def test_hanner_and_gp(capsys, tmp_path):
    out_path = tmp_path / "h.json"
    code, _, _ = run(capsys, "hanner", "prod(seg(1,1),sum(seg(1,1),seg(2,1)))", "-o", str(out_path))
    assert code == 0
    code, out, _ = run(capsys, "gp", str(out_path))
    data = json.loads(out)
    jsonschema.validate(data["graph"], GRAPH_SCHEMA)
    assert graph_from_json(data["graph"]).edges == {(0, 1), (0, 2)}
    assert data["cograph"] and data["cotree"] == "join(1,union(2,3))"
    code, out, _ = run(capsys, "classify", str(out_path))
    data = json.loads(out)
    assert data["minimizer"] and data["unit_expr"] == "prod(seg(1,1),sum(seg(1,1),seg(1,1)))"


def test_random_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "random", "-d", "3", "--seed", "4", "-o", str(a))[0] == 0
    assert run(capsys, "random", "-d", "3", "--seed", "4", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(capsys, "check", str(a))
    assert json.loads(out)["locally_anti_blocking"]
    assert run(capsys, "random", "-d", "9")[0] == 2


def test_prove5_rejects_non_unconditional(capsys, tmp_path):
    path = tmp_path / "r.json"
    run(capsys, "random", "-d", "2", "--seed", "1", "-o", str(path))
    assert run(capsys, "prove5", str(path))[0] == 2


def test_precision_env(capsys, tmp_path, monkeypatch):
    path = tmp_path / "c.json"
    write_polytope(cube(2), path)
    monkeypatch.setenv("KALAI_PRECISION_BITS", "96")
    code, out, _ = run(capsys, "special", str(path))
    assert code == 0
    assert {r["precision"] for r in json.loads(out)["records"]} == {96}


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "kalai_lab", "reproduce", "pi3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "C(Pi3) s\t97\t97\tPASS" in proc.stdout
