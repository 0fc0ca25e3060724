"""Named library terms and the machine behaviour they promise."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from ..builder import Ingredient, build, build_lambda
from ..lambda_elim import Abs, Var, eliminate
from ..machine import DEFAULT_FUEL, put_slot, steps_to
from ..syntax import Atom, CTerm, Process, Stack, app, is_closed, stack_of, substitute


@dataclass(frozen=True)
class Case:
    """``start`` must pass through ``target`` within ``fuel`` steps."""

    start: Process
    target: Process
    fuel: int = DEFAULT_FUEL
    label: str = ""


@dataclass(frozen=True)
class CaseResult:
    case: Case
    steps: int | None

    @property
    def passed(self) -> bool:
        return self.steps is not None


@dataclass(frozen=True)
class Contract:
    statement: str
    cases: Callable[[], Sequence[Case]] = field(compare=False)

    def check(self) -> list[CaseResult]:
        return [CaseResult(case, steps_to(case.start, case.target, case.fuel)) for case in self.cases()]


@dataclass(frozen=True)
class NamedTerm:
    name: str
    term: CTerm
    description: str
    contract: Contract | None = None

    @property
    def closed(self) -> bool:
        return is_closed(self.term)


def atoms_named(*names: str) -> list[Atom]:
    return [Atom(name) for name in names]


def slotted(*items: CTerm, token: CTerm) -> Stack:
    """A stack holding ``items`` with ``token`` in the slot."""
    return put_slot(stack_of(*items), token)


def open_term(text: str, environment: Mapping[str, Ingredient] | None = None, **bindings: CTerm) -> CTerm:
    """Compile ``text`` with the names in ``bindings`` left free, then plug them in."""
    scope = {**(environment or {}), **{name: Var(name) for name in bindings}}
    return substitute(eliminate(build_lambda(text, scope)), bindings)


def unfolding(text: str, environment: Mapping[str, Ingredient] | None = None) -> tuple[CTerm, Contract]:
    """Compile ``λx⃗. body`` and the contract that it reduces to ``body[x⃗]`` on fresh atoms."""
    environment = dict(environment or {})
    term_text = build_lambda(text, environment)
    binders = []
    body = term_text
    while isinstance(body, Abs):
        binders.append(body.binder)
        body = body.body
    compiled = eliminate(term_text)
    if not binders:
        raise ValueError("an unfolding contract needs at least one binder")
    open_body = eliminate(body)
    arguments = atoms_named(*binders)
    target_head = substitute(open_body, dict(zip(binders, arguments)))
    tail = Atom("rest")

    def cases() -> list[Case]:
        return [Case(Process(compiled, stack_of(*arguments, tail)), Process(target_head, stack_of(tail)))]

    statement = f"applied to {' '.join('@' + b for b in binders)} it unfolds to its body"
    return compiled, Contract(statement, cases)


def unfolding_entry(name: str, text: str, description: str, environment: Mapping[str, Ingredient] | None = None) -> NamedTerm:
    term, contract = unfolding(text, environment)
    return NamedTerm(name, term, description, contract)


__all__ = [
    "Case",
    "CaseResult",
    "Contract",
    "NamedTerm",
    "app",
    "atoms_named",
    "build",
    "open_term",
    "slotted",
    "unfolding",
    "unfolding_entry",
]
