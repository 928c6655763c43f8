import io
import json
import subprocess
import sys

import pytest

from youngshap import from_paper_order, game_to_json
from youngshap.cli import main, parse_game_text

EX1 = "0 0 0 3 1 2 3"
EX21 = "(0,0,10,50,0,0,20)"
EX22 = "0 0 0 10 51 51 51 51 51 51 62 62 62 62 103"


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def gamefile(tmp_path):
    def make(text, name="g.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return make


def test_shapley_chain_game(gamefile):
    assert run(["shapley", "--input", gamefile(EX1)]) == (0, "1 3/2 1/2\n", "")


def test_shapley_reads_json_and_stdin():
    doc = json.dumps(game_to_json(from_paper_order(3, [0, 0, 0, 0, 0, 0, 0])))
    assert run(["shapley", "--input", "-"], stdin=doc)[:2] == (0, "0 0 0\n")


def test_shapley_bitmask_format():
    # bitmask order: {1}, {2}, {1,2}, {3}, {1,3}, {2,3}, {1,2,3}
    code, out, _ = run(["shapley", "-i", "-", "--format", "bitmask"], stdin="0 0 3 0 1 2 3")
    assert (code, out) == (0, "1 3/2 1/2\n")


@pytest.mark.parametrize("text", ["{bad", "0 0", "1 2 x", '{"players": 2}', ""])
def test_parse_errors_exit_2(gamefile, text):
    code, out, err = run(["shapley", "--input", gamefile(text)])
    assert code == 2 and out == "" and err.startswith("error:")


def test_missing_file_exit_2():
    assert run(["shapley", "--input", "/nonexistent/game"])[0] == 2


def test_guard_exit_3():
    zero7 = " ".join(["0"] * 127)
    assert run(["shapley", "-i", "-", "--max-players", "5"], stdin=zero7)[0] == 3
    assert run(["derive", "-i", "-"], stdin=zero7)[0] == 3


def test_classify(gamefile):
    code, out, _ = run(["classify", "-i", gamefile(EX1)])
    tags = out.split()
    assert code == 0 and "superadditive" in tags and "convex" not in tags
    assert tags == sorted(tags)
    assert "strictly-subadditive" in run(["classify", "-i", "-"], stdin="4 4 4 4 4 4 7")[1].split()
    assert "additive" in run(["classify", "-i", "-"], stdin="0 0 0 0 0 0 0")[1].split()


def test_equiv(gamefile):
    assert run(["equiv", "-i", gamefile(EX1)])[1] == "{1} {2} {3}\n"
    assert run(["equiv", "-i", gamefile(EX21), "--set", "1,2"])[1] == "equivalence class: yes\n"
    assert run(["equiv", "-i", gamefile(EX1), "--set", "2"])[1] == "equivalence class: yes\n"
    assert run(["equiv", "-i", gamefile(EX1), "--set", "1,2"])[1] == "equivalence class: no\n"


def test_extend_chain_game(gamefile):
    code, out, err = run(["extend", "-i", gamefile(EX1), "--set", "1", "--player", "2", "--plain"])
    assert (code, out) == (0, "0 0 0 3 2 2 4\n")
    code, out, _ = run(["extend", "-i", gamefile(EX1), "--set", "1", "--player", "2"])
    doc = json.loads(out)
    assert doc["values"] == ["0", "0", "0", "3", "2", "2", "4"]
    # emitted games round-trip
    assert parse_game_text(out) == from_paper_order(3, [0, 0, 0, 3, 2, 2, 4])


def test_extend_forced_warnings(gamefile):
    code, out, err = run(["extend", "-i", gamefile(EX21), "--set", "1,2", "--player", "3", "--plain"])
    assert out == "10 10 10 10 10 10 -20\n"
    assert "warning: result not essential" in err.splitlines()
    code, out, err = run(["extend", "-i", gamefile(EX22), "--set", "1,2,3", "--player", "4", "--plain"])
    assert out == "10 10 10 10 61 61 61 61 61 61 72 72 72 72 113\n"
    assert "warning: result not superadditive" in err.splitlines()


def test_extend_fills_and_targets(gamefile):
    sc = gamefile("0 0 0 1 1 1 4")
    assert run(["extend", "-i", sc, "--set", "1", "--player", "2", "--fill", "expM", "--plain"])[1] \
        == "0 0 36 1 37 37 40\n"
    assert run(["extend", "-i", sc, "--set", "1", "--player", "2", "--class", "strictly-convex",
                "--plain"])[1] == "0 0 36 1 37 37 40\n"
    assert run(["extend", "-i", sc, "--set", "1", "--player", "2", "--fill", "copy", "--plain"])[1] \
        == "0 0 0 1 1 1 4\n"  # symmetric already: the copy fill changes nothing
    assert run(["extend", "-i", sc, "--set", "1", "--player", "2", "--class", "convex"])[0] == 4


def test_extend_errors(gamefile):
    ex1 = gamefile(EX1)
    assert run(["extend", "-i", ex1, "--set", "1,2", "--player", "3"])[0] == 4
    assert run(["extend", "-i", ex1, "--player", "3"])[0] == 2
    assert run(["extend", "-i", ex1, "--set", "1", "--player", "9"])[0] == 2
    assert run(["extend", "-i", ex1, "--set", "1", "--player", "2", "--class", "round"])[0] == 2


def test_derive(gamefile):
    ex1 = gamefile(EX1)
    code, out, _ = run(["derive", "-i", ex1, "--trace"])
    lines = out.splitlines()
    assert code == 0 and lines[0] == "1 3/2 1/2"
    assert "(0, 0, 0, 3, 2, 2, 4)" in out and "(0, 0, 0, 2, 2, 2, 3)" in out
    code, _, err = run(["derive", "-i", ex1, "--class", "convex"])
    assert code == 4 and "not a member" in err
    assert run(["derive", "-i", gamefile("0 0 0 1 1 1 4"), "--class", "superadditive", "--seed", "3"])[1] \
        == "4/3 4/3 4/3\n"


def test_derive_marginal_route_failure_is_reported(gamefile):
    code, out, err = run(["derive", "-i", gamefile(EX1), "--class", "superadditive"])
    assert code == 1 and out == "" and "not strictly convex" in err


def test_derive_is_deterministic(gamefile):
    f = gamefile("1 2 3 4 5 6 10")
    a = run(["derive", "-i", f, "--seed", "4", "--trace"])
    b = run(["derive", "-i", f, "--seed", "4", "--trace"])
    assert a == b and a[0] == 0


def test_solve_axioms(gamefile):
    files = [gamefile("0 0 0 0 0 0 0", "z"), gamefile("0 0 0 1 0 0 1", "u"), gamefile("0 0 1 1 1 1 2", "v")]
    code, out, _ = run(["solve-axioms"] + files)
    assert code == 0
    assert out.splitlines() == ["unique", "game 1: 0 0 0", "game 2: 1/2 1/2 0", "game 3: 1/2 1/2 1"]
    assert run(["solve-axioms", files[0]])[1] == "unique\ngame 1: 0 0 0\n"
    assert run(["solve-axioms", "-i", gamefile(EX1)])[1] == "underdetermined, nullity 2\n"
    assert run(["solve-axioms"])[0] == 2


def test_closure_check(gamefile):
    files = [gamefile("0 0 0 0 0 0 0", "z"), gamefile("0 0 0 1 0 0 1", "u"), gamefile("0 0 1 1 1 1 2", "v")]
    out = run(["closure-check"] + files)[1].splitlines()
    assert out[0].startswith("EMP-closed: no")
    assert out[1].startswith("characterization hypotheses: fail")
    assert run(["closure-check", files[0]])[1].splitlines() == ["EMP-closed: yes", "characterization hypotheses: hold"]


def test_dual(gamefile):
    assert run(["dual", "-i", gamefile("0 0 0 3 1 2 4"), "--plain"])[1] == "2 3 1 4 4 4 4\n"


def test_examples_report():
    code, out, _ = run(["examples"])
    assert code == 0
    assert out.splitlines()[-1].endswith("passed")
    assert "FAIL" not in out
    assert "PASS  non-tight class" in out


def test_usage_errors():
    assert run([])[0] == 2
    assert run(["shapley", "--bogus"])[0] == 2
    assert run(["--version"])[0] == 0


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "youngshap.cli", "shapley", "-i", "-"], input=EX1,
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "1 3/2 1/2\n"
