"""Compile λ-terms into c-terms by first-match abstraction elimination."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .syntax import (
    B,
    C,
    E,
    I,
    K,
    W,
    Apply,
    Continuation,
    CTerm,
    ParseError,
    Parser,
    Variable,
    free_variables,
    print_term,
)


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Abs:
    binder: str
    body: LambdaTerm


@dataclass(frozen=True, slots=True)
class App:
    function: LambdaTerm
    argument: LambdaTerm


@dataclass(frozen=True, slots=True)
class Embed:
    """A c-term used as a leaf of a λ-term."""

    leaf: CTerm

    def __post_init__(self) -> None:
        if isinstance(self.leaf, (Var, Abs, App, Embed)):
            raise TypeError("an embedded leaf must be a c-term, not a λ-term")


LambdaTerm = Union[Var, Abs, App, Embed]


class EliminationError(ValueError):
    pass


def lam(binders: str, body: LambdaTerm) -> LambdaTerm:
    """``lam("x y", t)`` builds ``\\x. \\y. t``."""
    for binder in reversed(binders.split()):
        body = Abs(binder, body)
    return body


def apps(function: LambdaTerm, *arguments: LambdaTerm) -> LambdaTerm:
    for argument in arguments:
        function = App(function, argument)
    return function


def lambda_free_variables(term: LambdaTerm) -> set[str]:
    match term:
        case Var(name):
            return {name}
        case Abs(binder, body):
            return lambda_free_variables(body) - {binder}
        case App(function, argument):
            return lambda_free_variables(function) | lambda_free_variables(argument)
        case Embed(leaf):
            return free_variables(leaf)
    raise TypeError(f"not a λ-term: {term!r}")


def _occurs(name: str, term: CTerm) -> bool:
    return name in free_variables(term)


def abstract(binder: str, body: CTerm) -> CTerm:
    """Eliminate one binder from a binder-free body, first applicable rule wins."""
    rewrites = 0
    while True:
        if not _occurs(binder, body):
            return Apply(K, body)
        if body == Variable(binder):
            return I
        if isinstance(body, Continuation):
            raise EliminationError(f"cannot abstract {binder!r} out of a continuation")
        function, argument = body.function, body.argument
        if not _occurs(binder, argument):
            return Apply(Apply(C, abstract(binder, Apply(E, function))), argument)
        if argument == Variable(binder):
            if not _occurs(binder, function):
                return Apply(E, function)
            return Apply(W, abstract(binder, Apply(E, function)))
        if isinstance(argument, Continuation):
            raise EliminationError(f"cannot abstract {binder!r} out of a continuation")
        # t(uv) becomes ((B t) u) v under the same binder
        body = Apply(Apply(Apply(B, function), argument.function), argument.argument)
        rewrites += 1
        assert rewrites <= 1_000_000, "rule 6 failed to terminate"


def eliminate(term: LambdaTerm) -> CTerm:
    match term:
        case Var(name):
            return Variable(name)
        case Embed(leaf):
            return leaf
        case App(function, argument):
            return Apply(eliminate(function), eliminate(argument))
        case Abs(binder, body):
            return abstract(binder, eliminate(body))
    raise TypeError(f"not a λ-term: {term!r}")


def eliminate_defs(definitions: Iterable[tuple[str, LambdaTerm]]) -> dict[str, CTerm]:
    """Compile definitions in order; each may use the ones before it by name."""
    compiled: dict[str, CTerm] = {}
    for name, body in definitions:
        if name in compiled:
            raise EliminationError(f"{name!r} is defined twice")
        missing = lambda_free_variables(body) - compiled.keys()
        if missing:
            raise EliminationError(f"{name!r} refers to undefined {', '.join(sorted(missing))}")
        compiled[name] = eliminate(resolve(body, {key: Embed(value) for key, value in compiled.items()}))
    return compiled


def resolve(term: LambdaTerm, environment: dict[str, LambdaTerm]) -> LambdaTerm:
    """Replace free variables named in ``environment`` (whose values must be closed)."""
    match term:
        case Var(name):
            return environment.get(name, term)
        case Abs(binder, body):
            if binder in environment:
                environment = {k: v for k, v in environment.items() if k != binder}
            return Abs(binder, resolve(body, environment))
        case App(function, argument):
            return App(resolve(function, environment), resolve(argument, environment))
    return term


# -- λ-syntax ---------------------------------------------------------------


class LambdaParser(Parser):
    """Reads ``\\x y. t``; a λ extends as far right as possible."""

    def starts_primary(self) -> bool:
        return super().starts_primary() or self.current.kind == "lam"

    def lambda_application(self) -> LambdaTerm:
        if not self.starts_primary():
            self.fail("expected a λ-term")
        term = self.lambda_primary()
        while self.starts_primary() and not self.at_definition():
            term = App(term, self.lambda_primary())
        return term

    def lambda_primary(self) -> LambdaTerm:
        token = self.current
        if token.kind == "lam":
            self.advance()
            binders = []
            while self.current.kind == "ident":
                binders.append(self.advance().text)
            if not binders:
                self.fail("expected a binder")
            self.expect("dot")
            return lam(" ".join(binders), self.lambda_application())
        if token.kind == "(":
            self.advance()
            term = self.lambda_application()
            self.expect(")")
            return term
        leaf = self.primary()
        if isinstance(leaf, Variable):
            return Var(leaf.name)
        return Embed(leaf)

    def definitions(self) -> list[tuple[str, LambdaTerm]]:
        found = []
        while self.current.kind != "eof":
            name = self.expect("ident").text
            self.expect("=")
            found.append((name, self.lambda_application()))
        return found


def parse_lambda(text: str) -> LambdaTerm:
    parser = LambdaParser(text)
    term = parser.lambda_application()
    parser.finish()
    return term


def parse_definitions(text: str) -> list[tuple[str, LambdaTerm]]:
    """Read ``name = term`` definitions, one after another."""
    return LambdaParser(text).definitions()


def print_lambda(term: LambdaTerm) -> str:
    match term:
        case Var(name):
            return name
        case Embed(leaf):
            return print_term(leaf)
        case Abs():
            binders = []
            while isinstance(term, Abs):
                binders.append(term.binder)
                term = term.body
            return f"(\\{' '.join(binders)}. {print_lambda(term)})"
        case App():
            parts = []
            while isinstance(term, App):
                parts.append(term.argument)
                term = term.function
            parts.append(term)
            return "(" + " ".join(print_lambda(part) for part in reversed(parts)) + ")"
    raise TypeError(f"not a λ-term: {term!r}")


__all__ = [
    "Abs",
    "App",
    "Embed",
    "EliminationError",
    "LambdaParser",
    "LambdaTerm",
    "ParseError",
    "Var",
    "abstract",
    "apps",
    "eliminate",
    "eliminate_defs",
    "lam",
    "lambda_free_variables",
    "parse_definitions",
    "parse_lambda",
    "print_lambda",
    "resolve",
]
