"""Witnesses for the six condition-manipulating tautologies.

Conjunction is encoded as ``A ∧ B ≡ (A → B → ⊥) → ⊥`` and truth as
``⊥ → ⊥``. Each witness comes with a derivation script that the deduction
checker turns back into the same λ-term.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..builder import build
from ..deduction import Theorem, check_theorem, parse_script
from ..lambda_elim import eliminate, parse_lambda
from ..syntax import CTerm


@dataclass(frozen=True)
class Witness:
    name: str
    text: str
    statement: str
    script: str

    @property
    def term(self) -> CTerm:
        return eliminate(parse_lambda(self.text))

    def theorem(self) -> Theorem:
        (theorem,) = parse_script(f"(theorem {self.statement} {self.script})")
        return theorem

    def extracted(self) -> CTerm:
        return eliminate(check_theorem(self.theorem()))


_PAIR_XYZ = "(intro h (-> Y Z bot) (elim (elim (axiom h) (axiom y)) (axiom z)))"
_REASSOCIATE = (
    "(elim (axiom a) (intro x X (intro y Y "
    f"(elim (elim (axiom k) (axiom x)) {_PAIR_XYZ}))))"
)

WITNESSES: tuple[Witness, ...] = (
    Witness(
        "a0",
        r"\p k. p (\a z. a (\x y. k x (\h. h y z)))",
        "(all X (all Y (all Z (-> (and (and X Y) Z) (and X (and Y Z))))))",
        "(gen X (gen Y (gen Z (intro p (and (and X Y) Z) (intro k (-> X (and Y Z) bot) "
        f"(elim (axiom p) (intro a (and X Y) (intro z Z {_REASSOCIATE}))))))))",
    ),
    Witness(
        "a1",
        r"\x k. k x (\z. z)",
        "(all X (-> X (and X top)))",
        "(gen X (intro x X (intro k (-> X top bot) "
        "(elim (elim (axiom k) (axiom x)) (intro z bot (axiom z))))))",
    ),
    Witness(
        "a2",
        r"\p. cc (\k. p (\x y. k y))",
        "(all X (all Y (-> (and X Y) Y)))",
        "(gen X (gen Y (intro p (and X Y) (elim (const cc (-> (-> (-> Y bot) Y) Y)) "
        "(intro k (-> Y bot) (inst-pred (elim (axiom p) "
        "(intro x X (intro y Y (elim (axiom k) (axiom y))))) () Y))))))",
    ),
    Witness(
        "b0",
        r"\x k. k x x",
        "(all X (-> X (and X X)))",
        "(gen X (intro x X (intro k (-> X X bot) (elim (elim (axiom k) (axiom x)) (axiom x)))))",
    ),
    Witness(
        "b1",
        r"\p k. p (\x y. k y x)",
        "(all X (all Y (-> (and X Y) (and Y X))))",
        "(gen X (gen Y (intro p (and X Y) (intro k (-> Y X bot) "
        "(elim (axiom p) (intro x X (intro y Y (elim (elim (axiom k) (axiom y)) (axiom x)))))))))",
    ),
    Witness(
        "b2",
        r"\p k. p (\a u. k (\k. a (\a z. a (\x y. k x (\h. h y z)))) u)",
        "(all X (all Y (all Z (all U (-> (and (and (and X Y) Z) U) (and (and X (and Y Z)) U))))))",
        "(gen X (gen Y (gen Z (gen U (intro p (and (and (and X Y) Z) U) "
        "(intro k (-> (and X (and Y Z)) U bot) (elim (axiom p) (intro b (and (and X Y) Z) (intro u U "
        "(elim (elim (axiom k) (intro k (-> X (and Y Z) bot) "
        f"(elim (axiom b) (intro a (and X Y) (intro z Z {_REASSOCIATE}))))) (axiom u)))))))))))",
    ),
)


def witness(name: str) -> Witness:
    for item in WITNESSES:
        if item.name == name:
            return item
    raise KeyError(name)


@lru_cache(maxsize=1)
def transfer() -> CTerm:
    """``λf u m h. u m (λn x. h n (f x))``: lifts a pointwise map to the condition predicate."""
    return build(r"\f u m h. u m (\n x. h n (f x))")


def wrapped(name: str) -> CTerm:
    return build("t w", {"t": transfer(), "w": witness(name).term})
