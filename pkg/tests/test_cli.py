import json
import subprocess
import sys

import pytest

from retrakt.cli import main
from retrakt.syntax import parse_term

SIGMA = "('a -> 'a) & (('a -> 'a) -> 'a -> 'a) -> 'a -> 'a"
NU6 = f"('a -> 'a) & (('a -> 'a) -> 'a -> 'a) -> ({SIGMA}) -> w -> 'a"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_path(capsys):
    assert run(capsys, "path", r"\t.\x. x x (x t)") == (0, "[[2,2,2],[2,1,1],[1,0,0]]", "")


def test_path_absent(capsys):
    code, out, _ = run(capsys, "path", r"\t x. x")
    assert code == 1


def test_retract_into_omega(capsys):
    code, out, _ = run(capsys, "retract", "'a", "w")
    assert code == 1 and out == "provably_no"


def test_retract_json(capsys):
    code, out, _ = run(capsys, "retract", "'a", NU6, "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert set(payload) == {"status", "left", "right", "decomposition", "trace_steps"}
    assert payload["status"] == "witness"
    assert payload["right"] == r"\t x1 x2 x3. t"
    assert payload["trace_steps"] > 0


def test_retract_unknown(capsys):
    code, out, _ = run(capsys, "retract", "'a", "'b -> 'a")
    assert code == 2 and out == "unknown"


def test_retract_standard(capsys):
    code, out, _ = run(capsys, "retract", "'a", "(('b -> 'b) -> 'a) & (w -> 'a)")
    assert code == 0 and out.startswith("witness")


def test_retract_essential_needs_strict_types(capsys):
    code, _, err = run(capsys, "retract", "'a", "('b -> 'a) & 'a", "--system", "essential")
    assert code == 3 and "standard" in err


def test_verify_ex6(capsys):
    L, R = r"\z. z (\x. x) (\y. y y) z", r"\t x1 x2 x3. x2 x1 t"
    code, out, _ = run(capsys, "verify", L, R, "'a", NU6)
    assert code == 0 and out.endswith("retraction holds")


def test_verify_failure(capsys):
    code, out, _ = run(capsys, "verify", r"\x. x", r"\x. x", "'a", "'b", "--format", "json")
    assert code == 1 and json.loads(out)["holds"] is False


def test_budget_exhaustion(capsys):
    code, _, err = run(capsys, "hnf", r"(\x. x x) (\x. x x)", "--steps", "100")
    assert code == 2 and "100" in err


def test_parse_error(capsys):
    code, _, err = run(capsys, "hnf", r"\x. (x")
    assert code == 3 and "line 1, column" in err


def test_bad_arguments():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 3


def test_check_with_env(capsys):
    code, out, _ = run(capsys, "check", "f x", "'b", "--env", "f:'a -> 'b", "--env", "x:'a")
    assert (code, out) == (0, "derivable")
    code, out, _ = run(capsys, "check", "f x", "'b", "--env", "f:'a -> 'b")
    assert (code, out) == (1, "not_derivable")
    code, _, _ = run(capsys, "check", "x", "'a", "--env", "x")
    assert code == 3


def test_subtype(capsys):
    assert run(capsys, "subtype", "('a -> 'b) & ('a -> 'c)", "'a -> 'b & 'c")[:2] == (0, "yes")
    assert run(capsys, "subtype", "'a", "'b")[:2] == (1, "no")


def test_inhabit(capsys):
    code, out, _ = run(capsys, "inhabit", "'a -> 'a")
    assert code == 0 and parse_term(out) == parse_term(r"\x. x")
    assert run(capsys, "inhabit", "w -> 'a")[0] == 2


def test_inverses(capsys):
    assert run(capsys, "left-inverse", r"\t x1 x2. t")[:2] == (0, r"\z. z _|_ _|_")
    code, out, _ = run(capsys, "right-inverse", r"\z. z (\z1 z2 z3. z3 z1 z2) (\y1 y2. y2) _|_ (\y1 y2. y1)")
    assert code == 0 and out == r"\t x1 x2 x3 x4. t"
    assert run(capsys, "xi", r"\x. x x")[:2] == (1, "no")


def test_unicode_output(capsys):
    code, out, _ = run(capsys, "hnf", r"\z. (\x. x) z", "--unicode")
    assert out == "λz. z"


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 563
    code, out, _ = run(capsys, "enumerate", "--depth", "0")
    assert out.splitlines() == ["0\t'a", "1\t'b", "2\tw"]


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", "1", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["ok"] and len(payload["checks"]) == 8


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "retrakt", "path", r"\t. t"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.strip() == "[[1,0,0]]"
