"""Primitive recursive programs compiled to continuation-passing c-terms.

A compiled program of arity k runs as ``θ ⋆ m₁·…·m_k·f·π`` and ends in
``f ⋆ r·π`` where ``r`` is an iterator computing the result. Recursion goes
through the recursion argument itself used as an iterator, so no fixpoint is
needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from ..builder import build
from ..numerals import SUCCESSOR, ZERO
from ..syntax import CTerm
from .core import storage


class ArityError(ValueError):
    pass


@dataclass(frozen=True)
class Zero:
    arity: int = 0


@dataclass(frozen=True)
class Succ:
    arity: int = 1


@dataclass(frozen=True)
class Proj:
    index: int
    arity: int

    def __post_init__(self) -> None:
        if not 0 <= self.index < self.arity:
            raise ArityError(f"projection index {self.index} out of range for arity {self.arity}")


@dataclass(frozen=True)
class Compose:
    outer: Program
    inner: tuple[Program, ...]

    def __post_init__(self) -> None:
        if len(self.inner) != self.outer.arity:
            raise ArityError(f"outer program takes {self.outer.arity} arguments, got {len(self.inner)}")
        if not self.inner:
            raise ArityError("composition needs at least one inner program")
        arities = {program.arity for program in self.inner}
        if len(arities) != 1:
            raise ArityError(f"inner programs disagree on arity: {sorted(arities)}")

    @property
    def arity(self) -> int:
        return self.inner[0].arity


@dataclass(frozen=True)
class PrimRec:
    """``h(0, y⃗) = base(y⃗)`` and ``h(i+1, y⃗) = step(i, h(i, y⃗), y⃗)``."""

    base: Program
    step: Program

    def __post_init__(self) -> None:
        if self.step.arity != self.base.arity + 2:
            raise ArityError(f"step must take {self.base.arity + 2} arguments, takes {self.step.arity}")

    @property
    def arity(self) -> int:
        return self.base.arity + 1


Program = Union[Zero, Succ, Proj, Compose, PrimRec]


def evaluate(program: Program, *args: int) -> int:
    """Reference semantics on Python integers."""
    if len(args) != program.arity:
        raise ArityError(f"expected {program.arity} arguments, got {len(args)}")
    match program:
        case Zero():
            return 0
        case Succ():
            return args[0] + 1
        case Proj(index):
            return args[index]
        case Compose(outer, inner):
            return evaluate(outer, *(evaluate(g, *args) for g in inner))
        case PrimRec(base, step):
            n, rest = args[0], args[1:]
            accumulator = evaluate(base, *rest)
            for i in range(n):
                accumulator = evaluate(step, i, accumulator, *rest)
            return accumulator
    raise TypeError(program)


def _names(prefix: str, count: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(count)]


def _compile(program: Program) -> CTerm:
    env = {"sigma": SUCCESSOR, "zero": ZERO}
    match program:
        case Zero(arity):
            binders = " ".join([*_names("m", arity), "c"])
            return build(rf"\{binders}. c zero", env)
        case Succ():
            return build(r"\m c. c (sigma m)", env)
        case Proj(index, arity):
            binders = " ".join([*_names("m", arity), "c"])
            return build(rf"\{binders}. c m{index}", env)
        case Compose(outer, inner):
            inputs = " ".join(_names("m", program.arity))
            results = _names("r", len(inner))
            body = f"f {' '.join(results)} c"
            for position in reversed(range(len(inner))):
                body = f"g{position} {inputs} (\\{results[position]}. {body})"
            env.update({f"g{i}": compile_program(g) for i, g in enumerate(inner)})
            env["f"] = compile_program(outer)
            return build(rf"\{inputs} c. {body}", env)
        case PrimRec(base, step):
            extra = " ".join(_names("y", base.arity))
            env["base"] = compile_program(base)
            env["step"] = compile_program(step)
            start = rf"(\k. base {extra} (\b. k zero b))"
            advance = rf"(\s k. s (\i a. step i a {extra} (\r. k (sigma i) r)))"
            return build(rf"\n {extra} c. n {advance} {start} (\i a. c a)", env)
    raise TypeError(program)


@lru_cache(maxsize=None)
def compile_program(program: Program) -> CTerm:
    """``θ ⋆ m⃗·f·π`` reaches ``f ⋆ r·π`` with ``r`` an iterator for ``program(m⃗)``."""
    return _compile(program)


@lru_cache(maxsize=None)
def compile_stored(program: Program) -> CTerm:
    """Like :func:`compile_program` but hands ``f`` an evaluated numeral."""
    inputs = " ".join(_names("m", program.arity))
    return build(
        rf"\{inputs} f. p {inputs} (\r. t f r)",
        {"p": compile_program(program), "t": storage()},
    )


# the functions named by the library
ADD = PrimRec(Proj(0, 1), Compose(Succ(), (Proj(1, 3),)))
MUL = PrimRec(Zero(1), Compose(ADD, (Proj(2, 3), Proj(1, 3))))
PRED = PrimRec(Zero(0), Proj(0, 2))
# 0 + 1 + … + (n-1) + n
TRIANGLE = PrimRec(Zero(0), Compose(ADD, (Compose(Succ(), (Proj(0, 2),)), Proj(1, 2))))
# (m, n) ↦ m + (m+n)(m+n+1)/2
PAIRING = Compose(
    ADD,
    (Proj(0, 2), Compose(TRIANGLE, (Compose(ADD, (Proj(0, 2), Proj(1, 2))),))),
)

PROGRAMS: dict[str, Program] = {
    "add": ADD,
    "mul": MUL,
    "pred": PRED,
    "triangle": TRIANGLE,
    "pairing": PAIRING,
}
