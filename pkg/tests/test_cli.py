import io
import subprocess
import sys

import pytest

from realizer.cli import EXIT_FAILURE, EXIT_FUEL, EXIT_OK, EXIT_PARSE, EXIT_USAGE, main
from realizer.lambda_elim import eliminate, parse_lambda
from realizer.numerals import equivalent_processes
from realizer.syntax import parse_process, parse_stack, parse_term
from realizer.wedge import apply_cexpr, parse_cexpr, parse_wedge

from test_deduction import PROOFS


@pytest.fixture
def invoke(capsys, monkeypatch):
    def call(*argv, stdin: str = ""):
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return call


def test_compile_identity(invoke):  # [TRIVIAL]
    assert invoke("compile", stdin=r"\x. x") == (EXIT_OK, "I\n", "")


def test_compile_output_reparses(invoke):
    source = r"\f x. f (f x)"
    code, out, _ = invoke("compile", stdin=source)
    assert code == EXIT_OK
    assert parse_term(out) == eliminate(parse_lambda(source))


def test_compile_definitions(invoke):
    code, out, _ = invoke("compile", stdin="id = \\x. x\nself = \\x. id x x\n")
    assert code == EXIT_OK
    lines = dict(line.split(" = ") for line in out.splitlines())
    assert lines["id"] == "I"
    assert set(lines) == {"id", "self"}


def test_run_halts_on_atom(invoke):  # [DERIVED] K rule
    code, out, err = invoke("run", stdin="K * @x . @y . #0")
    assert code == EXIT_OK
    assert parse_process(out) == parse_process("@x * #0")
    assert err.strip()


def test_run_trace_prints_every_step(invoke):
    code, out, _ = invoke("run", "--trace", stdin="I * K . @x . @y . #0")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert len(lines) >= 3
    assert parse_process(lines[-1]) == parse_process("@x * #0")
    for line in lines:
        parse_process(line)


def test_run_out_of_fuel(invoke):
    code, _, err = invoke("run", "--fuel", "3", stdin="W * W . W . #0")
    assert code == EXIT_FUEL
    assert "fuel" in err


def test_group_fuel_is_the_default(invoke):
    assert invoke("--fuel", "3", "run", stdin="W * W . W . #0")[0] == EXIT_FUEL


def test_nonpositive_group_fuel(invoke):
    assert invoke("--fuel", "0", "run", stdin="I * #0")[0] == EXIT_USAGE


def test_run_from_file(invoke, tmp_path):
    source = tmp_path / "program.txt"
    source.write_text("K * @x . @y . #0\n")
    assert parse_process(invoke("run", str(source))[1]) == parse_process("@x * #0")


def test_missing_file(invoke, tmp_path):
    assert invoke("run", str(tmp_path / "absent"))[0] == EXIT_USAGE


def test_parse_error(invoke):
    code, _, err = invoke("run", stdin="(K * #0")
    assert code == EXIT_PARSE
    assert "parse error" in err


def test_unknown_command(invoke):
    assert invoke("frobnicate")[0] == EXIT_USAGE


def test_no_compress(invoke):
    _, plain, _ = invoke("--no-compress", "run", stdin="@f * %2 . #0")
    _, short, _ = invoke("run", stdin="@f * %2 . #0")
    assert "%2" in short
    assert "%2" not in plain
    assert equivalent_processes(parse_process(plain), parse_process(short))


def test_cexpr_derive_then_apply(invoke):
    code, out, _ = invoke("cexpr", "derive", "(p ^ q)", "q")
    assert code == EXIT_OK
    sequence = out.strip()
    assert apply_cexpr(parse_cexpr(sequence), parse_wedge("(p ^ q)")) == parse_wedge("q")
    code, out, _ = invoke("cexpr", "apply", sequence, "(p ^ q)")
    assert (code, out.strip()) == (EXIT_OK, "q")


def test_cexpr_bad_wedge(invoke):
    assert invoke("cexpr", "derive", "(p ^", "p")[0] == EXIT_PARSE


def test_cexpr_underivable(invoke):
    assert invoke("cexpr", "derive", "p", "q")[0] == EXIT_FAILURE


def test_star_prints_term_and_shape(invoke):
    code, out, _ = invoke("star", stdin="K I")
    term, shape = out.splitlines()
    assert code == EXIT_OK
    parse_term(term)
    assert parse_wedge(shape) == parse_wedge("(1 ^ 1)")


def test_star_rejects_open_terms(invoke):
    assert invoke("star", stdin="K x")[0] == EXIT_FAILURE


def test_lib_list_and_emit(invoke):
    code, out, _ = invoke("lib", "list")
    names = [line.split("\t")[0] for line in out.splitlines()]
    assert code == EXIT_OK
    assert len(names) >= 25
    code, out, _ = invoke("lib", "emit", "fixpoint")
    term, description = out.splitlines()
    assert code == EXIT_OK
    parse_term(term)
    assert description.startswith("-- ")


def test_lib_unknown_entry(invoke):
    assert invoke("lib", "emit", "nonesuch")[0] == EXIT_USAGE


def test_lib_test_selected(invoke):
    code, out, _ = invoke("lib", "test", "fixpoint", "pred")
    assert code == EXIT_OK
    assert [line.split()[0] for line in out.splitlines()] == ["PASS", "PASS"]


def test_prove_and_run(invoke):
    code, out, _ = invoke("prove", str(PROOFS / "projection.proof"), "--run", "@k . @l . #0")
    assert code == EXIT_OK
    statement, term, final = out.splitlines()
    assert parse_term(term) == parse_term("E K")
    assert parse_process(final) == parse_process("@k * #0")


def test_prove_rejects_bad_proof(invoke, tmp_path):
    script = tmp_path / "bad.proof"
    script.write_text("(theorem (all A (-> A A)) (gen A (intro x A (axiom y))))")
    assert invoke("prove", str(script))[0] == EXIT_FAILURE


def test_prove_rejects_bad_syntax(invoke, tmp_path):
    script = tmp_path / "bad.proof"
    script.write_text("(theorem (all A (-> A A))")
    assert invoke("prove", str(script))[0] == EXIT_PARSE


def test_code_and_decode(invoke):  # [DERIVED] Cantor pairing, frozen in test_coding
    code, out, _ = invoke("code", "I . #0")
    assert (code, out.strip()) == (EXIT_OK, "407")
    code, out, _ = invoke("code", "--decode", "407")
    assert code == EXIT_OK
    assert parse_stack(out) == parse_stack("I . #0")


def test_code_with_atom_registry(invoke, tmp_path):
    registry = tmp_path / "atoms.txt"
    code, number, _ = invoke("--atom-registry", str(registry), "code", "@a . #0")
    assert code == EXIT_OK
    assert registry.read_text().split() == ["a"]
    _, out, _ = invoke("--atom-registry", str(registry), "code", "--decode", number.strip())
    assert parse_stack(out) == parse_stack("@a . #0")


def test_code_rejects_both_inputs(invoke):
    assert invoke("code", "I . #0", "--decode", "1")[0] == EXIT_USAGE


def test_console_script_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "realizer.cli", "compile"], input=r"\x y. x", capture_output=True, text=True
    )
    assert result.returncode == EXIT_OK
    assert parse_term(result.stdout) == parse_term("E K")
