"""Meet-terms over condition variables and the C-expressions that rewrite them.

A C-expression is stored as a tuple of primitives in the order they are
applied to a condition; it prints in the opposite (composition) order, so
``(b1)(a2)`` first applies ``a2`` and then ``b1``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True, slots=True)
class One:
    def __str__(self) -> str:
        return "1"


@dataclass(frozen=True, slots=True)
class PVar:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Meet:
    left: WedgeTerm
    right: WedgeTerm

    def __str__(self) -> str:
        return f"({self.left} ^ {self.right})"


WedgeTerm = Union[One, PVar, Meet]
ONE = One()


def meet(*parts: WedgeTerm) -> WedgeTerm:
    """Right-nested meet: ``meet(p, q, r)`` is ``p ^ (q ^ r)``."""
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = Meet(part, result)
    return result


def variables(term: WedgeTerm) -> set[str]:
    match term:
        case PVar(name):
            return {name}
        case Meet(left, right):
            return variables(left) | variables(right)
    return set()


def substitute_wedge(term: WedgeTerm, bindings: dict[str, WedgeTerm]) -> WedgeTerm:
    match term:
        case PVar(name):
            return bindings.get(name, term)
        case Meet(left, right):
            return Meet(substitute_wedge(left, bindings), substitute_wedge(right, bindings))
    return term


class WedgeError(ValueError):
    pass


class ShapeMismatch(WedgeError):
    def __init__(self, primitive: Primitive, index: int, term: WedgeTerm) -> None:
        super().__init__(f"{primitive.value} (position {index}) does not apply to {term}")
        self.primitive = primitive
        self.index = index
        self.term = term


class VariableAbsent(WedgeError):
    def __init__(self, variable: str, term: WedgeTerm) -> None:
        super().__init__(f"variable {variable} does not occur in {term}")
        self.variable = variable


class Primitive(enum.Enum):
    A0 = "a0"
    A1 = "a1"
    A2 = "a2"
    B0 = "b0"
    B1 = "b1"
    B2 = "b2"


_p, _q, _r, _s = PVar("p"), PVar("q"), PVar("r"), PVar("s")

SCHEMAS: dict[Primitive, tuple[WedgeTerm, WedgeTerm]] = {
    Primitive.A0: (Meet(Meet(_p, _q), _r), Meet(_p, Meet(_q, _r))),
    Primitive.A1: (_p, Meet(_p, ONE)),
    Primitive.A2: (Meet(_p, _q), _q),
    Primitive.B0: (_p, Meet(_p, _p)),
    Primitive.B1: (Meet(_p, _q), Meet(_q, _p)),
    Primitive.B2: (Meet(Meet(Meet(_p, _q), _r), _s), Meet(Meet(_p, Meet(_q, _r)), _s)),
}


def match_schema(pattern: WedgeTerm, term: WedgeTerm, bindings: dict[str, WedgeTerm]) -> bool:
    match pattern:
        case PVar(name):
            if name in bindings:
                return bindings[name] == term
            bindings[name] = term
            return True
        case One():
            return term == ONE
        case Meet(left, right):
            return (
                isinstance(term, Meet)
                and match_schema(left, term.left, bindings)
                and match_schema(right, term.right, bindings)
            )
    return False


def apply_prim(primitive: Primitive, term: WedgeTerm, index: int = 0) -> WedgeTerm:
    source, target = SCHEMAS[primitive]
    bindings: dict[str, WedgeTerm] = {}
    if not match_schema(source, term, bindings):
        raise ShapeMismatch(primitive, index, term)
    return substitute_wedge(target, bindings)


CExpr = tuple[Primitive, ...]


def apply_cexpr(cexpr: CExpr, term: WedgeTerm) -> WedgeTerm:
    for index, primitive in enumerate(cexpr):
        term = apply_prim(primitive, term, index)
    return term


def cexpr_from_composition(*primitives: Primitive) -> CExpr:
    """Build from the written (outermost first) order."""
    return tuple(reversed(primitives))


def print_cexpr(cexpr: CExpr) -> str:
    if not cexpr:
        return "id"
    return "".join(f"({primitive.value})" for primitive in reversed(cexpr))


def parse_cexpr(text: str) -> CExpr:
    text = text.strip()
    if text == "id":
        return ()
    names = re.findall(r"\(\s*([ab][012])\s*\)", text)
    if re.sub(r"\(\s*[ab][012]\s*\)|\s", "", text):
        raise WedgeError(f"not a C-expression: {text!r}")
    return tuple(Primitive(name) for name in reversed(names))


A0, A1, A2, B0, B1, B2 = (Primitive.A0, Primitive.A1, Primitive.A2, Primitive.B0, Primitive.B1, Primitive.B2)

# the five derived sequences, in application order
BETA0_PRIME: CExpr = (B0, A0, A2, B1)
BETA2_PRIME: CExpr = (B1, A0, B1, A0, B1)
BETA1_PRIME: CExpr = (B1, *BETA0_PRIME, *BETA2_PRIME, B1, A2, A0, B1, B2, A0, A2)
BETA3: CExpr = (B1, *BETA1_PRIME, B1)
BETA3_PRIME: CExpr = (*BETA1_PRIME, A0, *BETA1_PRIME, *BETA2_PRIME, *BETA1_PRIME)

DERIVED: dict[str, tuple[CExpr, WedgeTerm, WedgeTerm]] = {
    "beta0'": (BETA0_PRIME, Meet(_p, _q), Meet(Meet(_p, _q), _q)),
    "beta1'": (BETA1_PRIME, Meet(Meet(_p, _q), _r), Meet(Meet(_q, _p), _r)),
    "beta2'": (BETA2_PRIME, Meet(_p, Meet(_q, _r)), Meet(Meet(_p, _q), _r)),
    "beta3": (BETA3, Meet(_p, Meet(_q, _r)), Meet(_p, Meet(_r, _q))),
    "beta3'": (BETA3_PRIME, Meet(Meet(_p, Meet(_q, _r)), _s), Meet(Meet(_p, Meet(_r, _q)), _s)),
}


def adjoin_var(term: WedgeTerm, variable: str) -> CExpr:
    """A C-expression turning ``term`` into ``term ^ variable``."""
    if variable not in variables(term):
        raise VariableAbsent(variable, term)
    if term == PVar(variable):
        return (B0,)
    assert isinstance(term, Meet)
    u, v = term.left, term.right
    if v == PVar(variable):
        return BETA0_PRIME
    if variable not in variables(v):
        return (B1, *adjoin_var(Meet(v, u), variable), *BETA1_PRIME)
    assert isinstance(v, Meet)
    v0, v1 = v.left, v.right
    if variable not in variables(v1):
        return (*BETA3, *adjoin_var(Meet(u, Meet(v1, v0)), variable), *BETA3_PRIME)
    return (*BETA2_PRIME, *adjoin_var(Meet(Meet(u, v0), v1), variable), B2)


def adjoin_term(term: WedgeTerm, extra: WedgeTerm) -> CExpr:
    """A C-expression turning ``term`` into ``term ^ extra``."""
    match extra:
        case One():
            return (A1,)
        case PVar(name):
            return adjoin_var(term, name)
        case Meet(left, right):
            first = adjoin_term(term, left)
            second = adjoin_term(Meet(term, left), right)
            return (*first, *second, A0)
    raise TypeError(extra)


def derive_to(source: WedgeTerm, target: WedgeTerm) -> CExpr:
    missing = variables(target) - variables(source)
    if missing:
        raise VariableAbsent(sorted(missing)[0], source)
    return (*adjoin_term(source, target), A2)


# schemas of the eight combinator conditions: (source, target)
COMBINATOR_SCHEMAS: dict[str, tuple[WedgeTerm, WedgeTerm]] = {
    "I": (Meet(_p, _q), _q),
    "K": (meet(ONE, _p, _q, _r), Meet(_p, _r)),
    "E": (meet(ONE, _p, _q, _r), Meet(Meet(_p, _q), _r)),
    "W": (meet(ONE, _p, _q, _r), meet(_p, _q, _q, _r)),
    "C": (meet(ONE, _p, _q, _r, _s), meet(_p, _r, _q, _s)),
    "B": (meet(ONE, _p, _q, _r, _s), Meet(meet(_p, _q, _r), _s)),
    "cc": (meet(ONE, _p, _q), meet(_p, _q, _q)),
    "k": (meet(_p, _q, _r), Meet(_q, _p)),
}


def combinator_cexprs() -> dict[str, CExpr]:
    return {name: derive_to(source, target) for name, (source, target) in COMBINATOR_SCHEMAS.items()}


# -- parsing ----------------------------------------------------------------

_WEDGE_TOKEN = re.compile(r"\s*(?:(𝟙|1)|([A-Za-z_][A-Za-z0-9_']*)|(\^|∧)|(\()|(\)))")


def parse_wedge(text: str) -> WedgeTerm:
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        found = _WEDGE_TOKEN.match(text, position)
        if found is None:
            raise WedgeError(f"unexpected character at {position} in {text!r}")
        kinds = ("one", "var", "meet", "(", ")")
        kind = next(k for k, g in zip(kinds, found.groups()) if g is not None)
        tokens.append((kind, found.group().strip()))
        position = found.end()
    tokens.append(("eof", ""))
    index = 0

    def operand() -> WedgeTerm:
        nonlocal index
        kind, value = tokens[index]
        index += 1
        if kind == "one":
            return ONE
        if kind == "var":
            return PVar(value)
        if kind == "(":
            inner = expression()
            if tokens[index][0] != ")":
                raise WedgeError(f"missing ')' in {text!r}")
            index += 1
            return inner
        raise WedgeError(f"unexpected {value or 'end of input'!r} in {text!r}")

    def expression() -> WedgeTerm:
        nonlocal index
        left = operand()
        if tokens[index][0] == "meet":
            index += 1
            right = operand()
            if tokens[index][0] == "meet":
                raise WedgeError(f"chained ^ is ambiguous, add parentheses: {text!r}")
            return Meet(left, right)
        return left

    result = expression()
    if tokens[index][0] != "eof":
        raise WedgeError(f"trailing input in {text!r}")
    return result
