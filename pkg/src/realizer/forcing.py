"""Condition-threading programs: γ̄ wrappers, star compilation and adapters.

A condition token lives in the stack slot (the entry just above the stack
constant). ``cbar(γ)`` reads it, rewrites it with the primitives of ``γ`` and
writes it back before handing control to its argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .builder import build, image
from .numerals import canonicalize
from .syntax import (
    READ,
    WRITE,
    Apply,
    Atom,
    Combinator,
    Continuation,
    CTerm,
    Kind,
    NumLit,
    Stack,
    Variable,
)
from .wedge import (
    A0,
    A1,
    ONE,
    CExpr,
    Meet,
    PVar,
    WedgeTerm,
    combinator_cexprs,
    derive_to,
    meet,
)


class ForcingError(ValueError):
    pass


class OpenTerm(ForcingError):
    pass


_p, _q, _r = PVar("p"), PVar("q"), PVar("r")


@lru_cache(maxsize=None)
def cbar(cexpr: CExpr) -> CTerm:
    """The program ``λx. read (λy. write x (γ y))``."""
    return build(r"\x. read (\y. write x (g y))", {"g": cexpr})


def schema(source: WedgeTerm, target: WedgeTerm) -> CExpr:
    return derive_to(source, target)


@lru_cache(maxsize=1)
def gammas() -> dict[str, CExpr]:
    return combinator_cexprs()


ALPHA0: CExpr = (A0,)


def alpha0_bar() -> CTerm:
    return cbar(ALPHA0)


@lru_cache(maxsize=1)
def _combinator_stars() -> dict[Kind, CTerm]:
    table = gammas()
    environment = {"a0": alpha0_bar()}
    stars = {
        Kind.I: Apply(cbar(table["I"]), Combinator(Kind.I)),
        Kind.K: Apply(cbar(table["K"]), Combinator(Kind.K)),
        Kind.C: Apply(cbar(table["C"]), Combinator(Kind.C)),
        Kind.W: Apply(cbar(table["W"]), Combinator(Kind.W)),
        Kind.E: build(r"\x y. gE (a0 x y)", {**environment, "gE": cbar(table["E"])}),
        Kind.B: build(r"\x y z. gB (a0 x (a0 y z))", {**environment, "gB": cbar(table["B"])}),
        Kind.CC: build(
            r"read (\x y. cc (\k. write y (gcc x) (read (\x y. k (write y (gk x))))))",
            {"gcc": table["cc"], "gk": table["k"]},
        ),
    }
    return stars


def combinator_star(kind: Kind) -> CTerm:
    stars = _combinator_stars()
    if kind not in stars:
        raise ForcingError(f"{kind.value} has no forced counterpart")
    return stars[kind]


def star_compile(term: CTerm) -> tuple[CTerm, WedgeTerm]:
    """The forced program and its condition shape."""
    match term:
        case Combinator(kind):
            return combinator_star(kind), ONE
        case Apply(function, argument):
            function_star, function_shape = star_compile(function)
            argument_star, argument_shape = star_compile(argument)
            return Apply(Apply(alpha0_bar(), function_star), argument_star), Meet(function_shape, argument_shape)
        case Atom():
            return term, ONE
        case NumLit():
            return star_compile(canonicalize(term))
        case Variable(name):
            raise OpenTerm(f"cannot force the open term variable {name!r}")
        case Continuation():
            raise ForcingError("continuations are forced with cont_star, not star_compile")
    raise TypeError(f"not a c-term: {term!r}")


def cont_star(saved: Stack) -> CTerm:
    """The forced continuation ``read (λx y. k_π (write y (γk x)))``."""
    return build(r"read (\x y. kp (write y (gk x)))", {"kp": Continuation(saved), "gk": gammas()["k"]})


# -- adapters between forced and plain realizers ------------------------------


@dataclass(frozen=True, slots=True)
class PropAtom:
    pass


@dataclass(frozen=True, slots=True)
class PropArrow:
    premise: PropShape
    conclusion: PropShape


PropShape = Union[PropAtom, PropArrow]

GAMMA_REASSOCIATE: CExpr = derive_to(meet(_p, _q, _r), Meet(Meet(_p, _q), _r))


def adapter_chi(shape: PropShape) -> tuple[CTerm, CTerm]:
    """Adapters turning a realizer of a forcing statement into a forced realizer, and back."""
    match shape:
        case PropAtom():
            return READ, WRITE
        case PropArrow(premise, conclusion):
            chi_a, chi_a_prime = adapter_chi(premise)
            chi_b, chi_b_prime = adapter_chi(conclusion)
            forward = build(
                r"\x y. g0 (chiB (x (chiA' y)))",
                {"g0": cbar(GAMMA_REASSOCIATE), "chiB": chi_b, "chiA'": chi_a_prime},
            )
            backward = build(
                r"\x y. chiB' (a0 x (chiA y))",
                {"chiB'": chi_b_prime, "a0": alpha0_bar(), "chiA": chi_a},
            )
            return forward, backward
    raise TypeError(shape)


@dataclass(frozen=True, slots=True)
class Bottom:
    pass


@dataclass(frozen=True, slots=True)
class FoArrow:
    premise: FoShape
    conclusion: FoShape


@dataclass(frozen=True, slots=True)
class PredGuard:
    """A predicate-symbol hypothesis in front of ``body``."""

    body: FoShape


@dataclass(frozen=True, slots=True)
class EqGuard:
    """An equational hypothesis in front of ``body``."""

    body: FoShape


@dataclass(frozen=True, slots=True)
class EpsGuard:
    """Membership in the generic ideal, handled as a leaf."""


FoShape = Union[Bottom, FoArrow, PredGuard, EqGuard, EpsGuard]

_TO_LEFT: CExpr = derive_to(Meet(_p, _q), _p)
_ADD_ONE: CExpr = (A1,)
_DROP_ONE: CExpr = derive_to(Meet(_p, ONE), _p)


def adapter_delta(shape: FoShape) -> tuple[CTerm, CTerm]:
    """Adapters between ``C[p] → F`` realizers and forced realizers of ``F``."""
    match shape:
        case Bottom():
            return (
                build(r"\x. read (\y. x (a y))", {"a": _TO_LEFT}),
                build(r"\x y. write x (a y)", {"a": _ADD_ONE}),
            )
        case EpsGuard():
            return (
                build(r"\x. read (\y. x (a y))", {"a": _DROP_ONE}),
                build(r"\x y. write x (a y)", {"a": _ADD_ONE}),
            )
        case EqGuard(body):
            return adapter_delta(body)
        case PredGuard(body):
            delta_b, delta_b_prime = adapter_delta(body)
            return (
                build(
                    r"\x y. a (dB (\z. x z y))",
                    {"a": cbar(derive_to(meet(_p, ONE, _r), Meet(_p, _r))), "dB": delta_b},
                ),
                build(r"\x y z. dB' (a0 x z) (a y)", {"dB'": delta_b_prime, "a0": alpha0_bar(), "a": _ADD_ONE}),
            )
        case FoArrow(premise, conclusion):
            delta_a, delta_a_prime = adapter_delta(premise)
            delta_b, delta_b_prime = adapter_delta(conclusion)
            source = meet(_p, _q, _r)
            return (
                build(
                    r"\x y. read (\z. write (dB (\d. x (a z) (dA' y (b z)))) (g z))",
                    {
                        "dB": delta_b,
                        "dA'": delta_a_prime,
                        "a": derive_to(source, _p),
                        "b": derive_to(source, _q),
                        "g": derive_to(source, Meet(ONE, _r)),
                    },
                ),
                build(
                    r"\x y z. dB' (a0 x (dA (\d. z))) (a y)",
                    {"dB'": delta_b_prime, "a0": alpha0_bar(), "dA": delta_a, "a": _ADD_ONE},
                ),
            )
    raise TypeError(shape)


__all__ = [
    "Bottom",
    "EpsGuard",
    "EqGuard",
    "FoArrow",
    "ForcingError",
    "OpenTerm",
    "PredGuard",
    "PropArrow",
    "PropAtom",
    "adapter_chi",
    "adapter_delta",
    "alpha0_bar",
    "cbar",
    "combinator_star",
    "cont_star",
    "gammas",
    "image",
    "schema",
    "star_compile",
]
