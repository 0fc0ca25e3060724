"""Command-line entry point.

Exit codes: 0 on success or a halting run, 1 on other failures (a failed
contract, an ill-typed proof, a shape mismatch), 2 when a run exhausts its
fuel, 64 on usage errors and 65 on unparsable input.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import click

from . import deduction
from .coding import AtomRegistry, OpenTermError, code_stack, decode_stack
from .forcing import ForcingError, star_compile
from .lambda_elim import EliminationError, eliminate, eliminate_defs, parse_definitions, parse_lambda
from .machine import DEFAULT_FUEL, run as run_machine
from .numerals import canonicalize, canonicalize_stack, compress, compress_process, compress_stack
from .syntax import ParseError, Process, parse_process, parse_stack, parse_term, print_process, print_stack, print_term
from .wedge import WedgeError, apply_cexpr, derive_to, parse_cexpr, parse_wedge, print_cexpr

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_FUEL = 2
EXIT_USAGE = 64
EXIT_PARSE = 65


class CommandFailed(Exception):
    def __init__(self, message: str, code: int = EXIT_FAILURE) -> None:
        super().__init__(message)
        self.code = code


@dataclass
class Config:
    default_fuel: int = DEFAULT_FUEL
    numeral_compression: bool = True
    atom_registry_path: Path | None = None

    def __post_init__(self) -> None:
        if self.default_fuel <= 0:
            raise click.BadParameter("fuel must be positive", param_hint="--fuel")
        self.registry = AtomRegistry(self._load_names())

    def _load_names(self) -> list[str]:
        if self.atom_registry_path is None or not self.atom_registry_path.exists():
            return []
        return [line.strip() for line in self.atom_registry_path.read_text().splitlines() if line.strip()]

    def save_registry(self) -> None:
        if self.atom_registry_path is not None:
            self.atom_registry_path.write_text("".join(f"{name}\n" for name in self.registry.names()))

    def term(self, term) -> str:
        return print_term(compress(term) if self.numeral_compression else canonicalize(term))

    def process(self, process: Process) -> str:
        if self.numeral_compression:
            return print_process(compress_process(process))
        return print_process(Process(canonicalize(process.head), canonicalize_stack(process.stack)))

    def stack(self, stack) -> str:
        return print_stack(compress_stack(stack) if self.numeral_compression else canonicalize_stack(stack))


def _read_source(source: str | None) -> str:
    if source is None or source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text()
    except OSError as error:
        raise click.UsageError(f"cannot read {source}: {error.strerror}") from None


def _parse_wedge(text: str):
    try:
        return parse_wedge(text)
    except WedgeError as error:
        raise CommandFailed(str(error), EXIT_PARSE) from None


pass_config = click.make_pass_decorator(Config)


@click.group()
@click.option("--fuel", "default_fuel", type=int, default=DEFAULT_FUEL, show_default=True, help="Default step budget.")
@click.option("--no-compress", is_flag=True, help="Print numerals as successor chains instead of as %n.")
@click.option("--atom-registry", type=click.Path(dir_okay=False, path_type=Path), help="File of atom names, one per line.")
@click.pass_context
def cli(context: click.Context, default_fuel: int, no_compress: bool, atom_registry: Path | None) -> None:
    """Run and transform combinator programs."""
    context.obj = Config(default_fuel, not no_compress, atom_registry)


@cli.command()
@click.argument("source", required=False)
@pass_config
def compile(config: Config, source: str | None) -> None:
    """Compile a λ-term, or `name = term` definitions, to a c-term."""
    text = _read_source(source)
    if _looks_like_definitions(text):
        for name, term in eliminate_defs(parse_definitions(text)).items():
            click.echo(f"{name} = {config.term(term)}")
    else:
        click.echo(config.term(eliminate(parse_lambda(text))))


def _looks_like_definitions(text: str) -> bool:
    return "=" in text


@cli.command()
@click.argument("source", required=False)
@click.option("--fuel", type=int, help="Step budget for this run.")
@click.option("--trace", is_flag=True, help="Print every process, one per line.")
@pass_config
def run(config: Config, source: str | None, fuel: int | None, trace: bool) -> None:
    """Run a process `term * stack` and print where it stops."""
    process = parse_process(_read_source(source))
    budget = config.default_fuel if fuel is None else fuel
    if budget < 0:
        raise click.BadParameter("fuel must be non-negative", param_hint="--fuel")
    result = run_machine(process, budget, config.registry)
    for line in result.steps if trace else result.steps[-1:]:
        click.echo(config.process(line))
    config.save_registry()
    if not result.halted:
        raise CommandFailed(f"fuel exhausted after {result.fuel_used} steps", EXIT_FUEL)
    click.echo(str(result.terminal), err=True)


@cli.group()
def cexpr() -> None:
    """Derive and apply C-expressions."""


@cexpr.command()
@click.argument("source")
@click.argument("target")
def derive(source: str, target: str) -> None:
    """Print a C-expression rewriting SOURCE into TARGET."""
    click.echo(print_cexpr(derive_to(_parse_wedge(source), _parse_wedge(target))))


@cexpr.command()
@click.argument("sequence")
@click.argument("wedge")
def apply(sequence: str, wedge: str) -> None:
    """Apply a C-expression to a meet-term."""
    try:
        parsed = parse_cexpr(sequence)
    except WedgeError as error:
        raise CommandFailed(str(error), EXIT_PARSE) from None
    click.echo(str(apply_cexpr(parsed, _parse_wedge(wedge))))


@cli.command()
@click.argument("source", required=False)
@pass_config
def star(config: Config, source: str | None) -> None:
    """Print the forced program of a closed c-term and its condition shape."""
    forced, shape = star_compile(parse_term(_read_source(source)))
    click.echo(config.term(forced))
    click.echo(str(shape))


@cli.group()
def lib() -> None:
    """Browse and check the library of named terms."""


def _entry(name: str):
    from .stdlib import lookup

    try:
        return lookup(name)
    except KeyError as error:
        raise click.UsageError(error.args[0]) from None


@lib.command("list")
def lib_list() -> None:
    """List the library terms."""
    from .stdlib import catalogue

    for name, entry in catalogue().items():
        click.echo(f"{name}\t{entry.description}")


@lib.command()
@click.argument("name")
@pass_config
def emit(config: Config, name: str) -> None:
    """Print a library term and what it does."""
    entry = _entry(name)
    click.echo(config.term(entry.term))
    click.echo(f"-- {entry.description}")


@lib.command()
@click.argument("names", nargs=-1)
def test(names: tuple[str, ...]) -> None:
    """Check the contracts of the named terms (all when none are given)."""
    from .stdlib import catalogue

    entries = [_entry(name) for name in names] if names else list(catalogue().values())
    failures = 0
    for entry in entries:
        if entry.contract is None:
            click.echo(f"SKIP {entry.name}: no contract")
            continue
        results = entry.contract.check()
        passed = sum(result.passed for result in results)
        status = "PASS" if passed == len(results) else "FAIL"
        failures += status == "FAIL"
        click.echo(f"{status} {entry.name}: {passed}/{len(results)} cases ({entry.contract.statement})")
    if failures:
        raise CommandFailed(f"{failures} contract(s) failed")


@cli.command()
@click.argument("source")
@click.option("--run", "stack_text", help="Run each extracted term against this stack.")
@pass_config
def prove(config: Config, source: str, stack_text: str | None) -> None:
    """Check the theorems of a proof script and print their extracted terms."""
    theorems = deduction.parse_script(_read_source(source))
    if not theorems:
        raise CommandFailed("the script holds no theorem")
    stack = parse_stack(stack_text) if stack_text is not None else None
    exhausted = False
    for theorem in theorems:
        term = eliminate(deduction.check_theorem(theorem))
        click.echo(f"{theorem.statement}")
        click.echo(f"  {config.term(term)}")
        if stack is not None:
            result = run_machine(Process(term, stack), config.default_fuel, config.registry)
            click.echo(f"  {config.process(result.final)}")
            exhausted = exhausted or not result.halted
    if exhausted:
        raise CommandFailed("fuel exhausted", EXIT_FUEL)


@cli.command()
@click.argument("stack", required=False)
@click.option("--decode", "number", type=int, help="Print the stack coded by this integer instead.")
@pass_config
def code(config: Config, stack: str | None, number: int | None) -> None:
    """Print the integer code of a stack literal."""
    if number is not None:
        if stack is not None:
            raise click.UsageError("give either a stack or --decode, not both")
        try:
            decoded = decode_stack(number, config.registry)
        except ValueError as error:
            raise CommandFailed(str(error)) from None
        click.echo(config.stack(decoded))
        return
    text = stack if stack is not None else sys.stdin.read()
    click.echo(str(code_stack(parse_stack(text), config.registry)))
    config.save_registry()


def main(argv: Sequence[str] | None = None) -> int:
    arguments = list(sys.argv[1:] if argv is None else argv)
    try:
        cli.main(arguments, prog_name="realizer", standalone_mode=False)
    except click.exceptions.Exit as done:
        return done.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_FAILURE
    except click.UsageError as error:
        error.show()
        return EXIT_USAGE
    except (ParseError, deduction.ScriptError) as error:
        click.echo(f"parse error: {error}", err=True)
        return EXIT_PARSE
    except CommandFailed as error:
        click.echo(str(error), err=True)
        return error.code
    except (deduction.DeductionError, EliminationError, ForcingError, OpenTermError, WedgeError, OverflowError) as error:
        click.echo(f"error: {error}", err=True)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
