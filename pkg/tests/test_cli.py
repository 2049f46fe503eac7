import json
import subprocess
import sys

import pytest

from dqlie.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main

SL2 = """# sl2 in the (e, h, f) basis
dim 3
basis e h f
bracket h e = 2 e
bracket h f = -2 f
bracket e f = 1 h
"""
AFFINE = "dim 2\nbasis x y\nbracket x y = 1 y\n"
BROKEN = "dim 3\nbasis e h f\nbracket h e = 2 e\nbracket h f = -2 f\nbracket e f = 1 e\n"
SELF = "dim 3\nbasis e h f\nbracket e e = 1 h\n"


@pytest.fixture
def lie(tmp_path):
    def write(text, name="alg.lie"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.splitlines(), out.err


def test_check_sl2(capsys, lie, tmp_path):
    rep = tmp_path / "r.json"
    code, lines, _ = run(capsys, "check", lie(SL2), "--report", str(rep))
    assert code == EXIT_OK
    assert "unimodular: true" in lines and "semisimple: true" in lines
    data = json.loads(rep.read_text())
    assert data["verdict"] == "pass" and data["command"] == "check"


def test_check_affine(capsys, lie):
    code, lines, _ = run(capsys, "check", lie(AFFINE))
    assert code == EXIT_OK
    assert "unimodular: false defect = (-1/1, 0/1)" in lines
    assert "semisimple: false" in lines


def test_check_parse_error(capsys, lie):
    code, _, err = run(capsys, "check", lie(SELF))
    assert code == EXIT_INPUT
    assert "line 3" in err


def test_check_jacobi_failure(capsys, lie):
    code, lines, _ = run(capsys, "check", lie(BROKEN))
    assert code == EXIT_FAIL
    assert any("[e, h, f] defect = (2/1, 0/1, 0/1)" in l for l in lines)


def test_check_missing_file(capsys, tmp_path):
    assert run(capsys, "check", str(tmp_path / "nope.lie"))[0] == EXIT_INPUT


def test_alpha(capsys):
    code, lines, _ = run(capsys, "alpha", "--order", "4")
    assert code == EXIT_OK
    assert lines == ["alpha[2] = 1/48", "alpha[4] = -1/5760"]
    assert run(capsys, "alpha", "--order", "3")[0] == EXIT_INPUT


def test_star(capsys, lie):
    assert run(capsys, "star", "sl2", "--f", "e", "--g", "f", "--method", "kontsevich")[1] == ["e*f + 1/2*h - 1/6"]
    assert run(capsys, "star", "sl2", "--f", "e", "--g", "f", "--method", "gutt")[1] == ["e*f + 1/2*h"]
    assert run(capsys, "star", lie(SL2), "--f", "e", "--g", "f")[1] == ["e*f + 1/2*h - 1/6"]
    assert run(capsys, "star", "sl2", "--f", "e f", "--g", "f")[0] == EXIT_INPUT
    assert run(capsys, "star", lie(BROKEN), "--f", "e", "--g", "f")[0] == EXIT_INPUT


def test_invariants_and_duflo(capsys):
    assert run(capsys, "invariants", "sl2", "--degree", "2")[1] == ["e*f + 1/4*h^2"]
    assert run(capsys, "invariants", "sl2", "--degree", "3")[1] == []
    code, lines, _ = run(capsys, "duflo", "sl2", "--f", "e*f + 1/4*h^2")
    assert code == EXIT_OK and lines == ["e*f + 1/4*h^2 - 1/2*h + 1/4"]


@pytest.mark.parametrize("algebra, kind, deg", [("sl2", "star", 8), ("sl2", "duflo", 8), ("heisenberg3", "star", 6)])
def test_verify(capsys, algebra, kind, deg):
    code, lines, _ = run(capsys, "verify", algebra, "--kind", kind, "--max-degree", str(deg))
    assert code == EXIT_OK
    assert lines[0].endswith("PASS")


def test_unknown_inputs(capsys):
    assert run(capsys, "verify", "sl7", "--kind", "star", "--max-degree", "2")[0] == EXIT_INPUT
    assert run(capsys, "verify", "sl2", "--kind", "nope", "--max-degree", "2")[0] == EXIT_INPUT
    assert run(capsys, "frobnicate")[0] == EXIT_INPUT
    assert run(capsys, "wheel", "--m", "1")[0] == EXIT_INPUT


def test_wheel(capsys, tmp_path):
    rep = tmp_path / "w.json"
    code, lines, _ = run(capsys, "wheel", "--m", "2", "--reversed", "--samples", "20000", "--batches", "10",
                         "--seed", "3", "--report", str(rep))
    assert code == EXIT_OK
    assert lines[0] == "graph: W2v"
    assert lines[-1] == "calibration: 1/2"
    data = json.loads(rep.read_text())
    assert data["verdict"] == "estimate" and data["seed"] == 3
    assert set(data["details"][0]) >= {"mean", "std_error", "median_of_means", "samples", "calibration"}


REPORT_RUNS = [
    ["check", "{sl2}"],
    ["invariants", "sl3", "--degree", "3"],
    ["star", "so3", "--f", "x^2 + y", "--g", "z*x"],
    ["duflo", "sl2", "--f", "e*f"],
    ["verify", "so3", "--kind", "duflo", "--max-degree", "6"],
    ["alpha", "--order", "8"],
    ["wheel", "--m", "3", "--reversed", "--samples", "20000", "--batches", "10", "--seed", "9", "--workers", "3"],
]


@pytest.mark.parametrize("argv", REPORT_RUNS, ids=lambda a: a[0])
def test_reports_byte_identical(capsys, lie, tmp_path, argv):
    argv = [a.format(sl2=lie(SL2)) for a in argv]
    blobs = []
    for i in range(2):
        p = tmp_path / f"r{i}.json"
        main(argv + ["--report", str(p)])
        blobs.append(p.read_bytes())
    capsys.readouterr()
    assert blobs[0] == blobs[1]
    assert b'"tool_version"' in blobs[0]


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "dqlie.cli", "alpha", "--order", "2"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == "alpha[2] = 1/48\n"
