import io
import subprocess
import sys
from pathlib import Path

import pytest

from topoml.cli import EXIT_OK, EXIT_RUNTIME, EXIT_STATIC, cmd_run, cmd_type, main, repl
from topoml.transform import Strategy

PROGRAMS = Path(__file__).parent.parent / "demos" / "programs"
EXIT_CODES = {"ill_typed": EXIT_STATIC, "structural_error": EXIT_RUNTIME}


@pytest.mark.parametrize("path", sorted(PROGRAMS.glob("*.tml")), ids=lambda p: p.stem)
def test_golden_output(path, monkeypatch):
    monkeypatch.chdir(PROGRAMS)
    out, err = io.StringIO(), io.StringIO()
    code = cmd_run(path.name, out=out, err=err)
    assert code == EXIT_CODES.get(path.stem, EXIT_OK)
    assert out.getvalue() + err.getvalue() == path.with_suffix(".out").read_text()


def test_type_command(capsys):
    assert main(["type", str(PROGRAMS / "map.tml")]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "map : ('a -> 'b) -> ['a]!t -> ['b]!t"


def test_type_only_flag_does_not_evaluate(capsys):
    assert main(["run", "--type-only", str(PROGRAMS / "structural_error.tml")]) == EXIT_OK
    assert capsys.readouterr().out == "grow : ['a]!t -> ['a]!t\n- : [int]grid\n"


def test_type_errors_stop_before_evaluation(tmp_path):
    src = tmp_path / "p.tml"
    src.write_text("1 / 0;;\n1 + true;;\n")
    out, err = io.StringIO(), io.StringIO()
    assert cmd_run(str(src), out=out, err=err) == EXIT_STATIC
    assert out.getvalue() == ""
    assert err.getvalue().startswith(f"{src}:2:")


def test_syntax_error(tmp_path):
    src = tmp_path / "p.tml"
    src.write_text("let = 3;;\n")
    err = io.StringIO()
    assert cmd_type(str(src), out=io.StringIO(), err=err) == EXIT_STATIC
    assert "syntax error" in err.getvalue()


def test_fixpoint_budget(tmp_path, capsys):
    src = tmp_path / "p.tml"
    src.write_text("fixpoint (fun c -> 0 :: c) empty_seq;;\n")
    assert main(["run", "--max-steps", "10", str(src)]) == EXIT_RUNTIME
    assert "FixpointDivergence" in capsys.readouterr().err


def test_random_strategy_is_reproducible(tmp_path):
    src = tmp_path / "p.tml"
    src.write_text("(trans [ x, y => [x + y] ; x => [x] ]) (1::2::3::4::5::6::empty_bag);;\n")
    outs = set()
    for _ in range(3):
        out = io.StringIO()
        cmd_run(str(src), Strategy("random", 11), out=out, err=io.StringIO())
        outs.add(out.getvalue())
    assert len(outs) == 1


def _session(text: str) -> tuple[str, str]:
    out, err = io.StringIO(), io.StringIO()
    repl(inp=io.StringIO(text), out=out, err=err)
    return out.getvalue(), err.getvalue()


class TestRepl:
    def test_bindings_and_expressions(self):
        out, err = _session("let x = 20;;\nx +\n 22;;\n")
        assert out == "x : int = 20\n- : int = 42\n" and err == ""

    def test_type_query(self):
        out, _ = _session(":t trans [ x => [x] ];;\n")
        assert out == "['a]!t -> ['a]!t\n"

    def test_error_keeps_session(self):
        out, err = _session("let y = 1;;\nlet z = y + true;;\ny;;\n")
        assert "type error (UnifyMismatch)" in err
        assert out.splitlines() == ["y : int = 1", "- : int = 1"]

    def test_failed_binding_is_not_kept(self):
        out, err = _session("let w = 1 / 0;;\nw;;\n")
        assert "DivisionByZero" in err
        assert "UnboundIdentifier" in err

    def test_load_and_quit(self):
        out, _ = _session(f":load {PROGRAMS / 'sieve.tml'}\n:quit\n1;;\n")
        assert "{2, 3, 5, 7, 11, 13, 17, 19}set" in out
        assert "- : int = 1" not in out

    def test_unknown_command(self):
        _, err = _session(":nope\n")
        assert "unknown command" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "topoml", "run", str(PROGRAMS / "sort.tml")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "(0::1::2::3::4::5::6::7::8::9::empty_seq)" in proc.stdout
