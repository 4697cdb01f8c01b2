import io
import subprocess
import sys

import pytest

from complog.cli import main

from strategies import FIXTURES


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def fx(name):
    return FIXTURES / name


def test_u_colouring():
    code, out, _ = run("u", fx("colouring.complog"), "--goals", "<x,y>")
    assert code == 0
    assert out.splitlines()[0] == "cw=7 cd=6 u=1"
    assert "augmented (race)" in out


def test_u_kv():
    code, out, _ = run("u", fx("eagle.complog"), "--goals", "<#eagle>", "--format", "kv")
    kv = dict(line.split("=", 1) for line in out.splitlines())
    assert code == 0 and kv["u"] == "8" and kv["cd"] == "4" and kv["cw"] == "12"


def test_cd_and_cw():
    code, out, _ = run("cd", fx("colouring.complog"), "--goals", "<x,y>")
    assert code == 0 and out.startswith("cd=6\n") and "z <- s (4)" in out
    code, out, _ = run("cw", fx("colouring.complog"), "--goals", "<+x,+y>")
    assert code == 0 and out.startswith("cw=7\n") and "1. s0: => +x" in out


def test_cw_unreachable_exit_one():
    code, out, _ = run("cw", fx("race.complog"), "--goals", "<+q>")
    assert code == 1 and "structurally unreachable" in out


def test_exante():
    code, out, _ = run("exante", fx("colouring.complog"), "--goals", "<x,y>")
    assert (code, out) == (0, "ex_ante=7\n")


def test_check():
    assert run("check", fx("empty.complog"))[1] == "0 statements (0 declarative, 0 active)\n"
    assert run("check", fx("die.complog"))[1] == "8 statements (4 declarative, 4 active)\n"


def test_describe():
    code, out, _ = run("describe", fx("fauna.complog"), "--event", "#pigeon")
    assert code == 0 and out.splitlines()[0] == "bird"


def test_negate():
    code, out, _ = run("negate", fx("die.complog"), "--target", "+die1",
                       "--theta-high", "9", "--theta-low", "9", "--format", "kv")
    kv = dict(line.split("=", 1) for line in out.splitlines())
    assert code == 0 and kv["stop_reason"] == "exhausted"
    assert float(kv["aggregated"]) == pytest.approx(0.4150374992788439, abs=1e-12)


def test_augment():
    code, out, _ = run("augment", fx("augmentation.complog"), "--mode", "catalyst")
    assert (code, out) == (0, "+x.\n: x => +y.\n")


def test_exports():
    code, out, _ = run("export-asp", fx("colouring.complog"), "--goals", "<x,y>")
    assert code == 0 and out.encode() == fx("colouring.lp").read_bytes()
    code, out, _ = run("export-dot", fx("colouring.complog"), "--graph", "world")
    assert code == 0 and out.startswith("digraph world")
    code, out, _ = run("export-dot", fx("colouring.complog"), "--graph", "timeline", "--goals", "<+x,+y>")
    assert code == 0 and "t2" in out


def test_syntax_error_exit_two(tmp_path):
    bad = tmp_path / "bad.complog"
    bad.write_text("4 :: x")
    code, _, err = run("check", bad)
    assert code == 2 and "1:7" in err


def test_usage_errors_exit_two():
    assert run("frobnicate")[0] == 2
    assert run("check", "/nonexistent/file.complog")[0] == 2
    assert run("u", fx("colouring.complog"), "--goals", "<x,")[0] == 2


def test_unknown_atom_exit_one():
    code, _, err = run("u", fx("colouring.complog"), "--goals", "<w>")
    assert code == 1 and "epistemic" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "complog", "u", str(fx("colouring.complog")),
                           "--goals", "<x,y>"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("cw=7 cd=6 u=1")
