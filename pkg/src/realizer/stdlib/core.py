"""Booleans, fixpoints, storage operators and numeral dispatchers."""

from __future__ import annotations

from functools import lru_cache

from ..builder import build
from ..numerals import SUCCESSOR, ZERO
from ..syntax import CTerm

TRUE: CTerm = build(r"\x y. x")
FALSE: CTerm = build(r"\x y. y")
NOT: CTerm = build(r"\b x y. b y x")

_BASE = {"sigma": SUCCESSOR, "zero": ZERO, "true": TRUE, "false": FALSE, "not": NOT}


def _build(text: str, **extra: CTerm) -> CTerm:
    return build(text, {**_BASE, **extra})


@lru_cache(maxsize=1)
def fixpoint() -> CTerm:
    """``Y = A A`` with ``A = λa f. f (a a f)``."""
    half = _build(r"\a f. f (a a f)")
    return _build("h h", h=half)


@lru_cache(maxsize=1)
def fixpoint_swapped() -> CTerm:
    """``λx. Y (λy z. x z y)``: the fixpoint taking its recursive call second."""
    return _build(r"\x. y (\u z. x z u)", y=fixpoint())


@lru_cache(maxsize=1)
def storage_successor() -> CTerm:
    return _build(r"\g x. g (sigma x)")


@lru_cache(maxsize=1)
def storage() -> CTerm:
    """``T ⋆ φ·n·π`` evaluates ``n`` and continues with ``φ ⋆ n̄·π``."""
    return _build(r"\f n. n s f zero", s=storage_successor())


@lru_cache(maxsize=1)
def parity() -> CTerm:
    """``e ⋆ n·ξ·η·π`` continues with ``ξ`` for even ``n`` and ``η`` for odd."""
    return _build(r"\n. n not true")


@lru_cache(maxsize=1)
def mod4_dispatch() -> CTerm:
    """Three-way branch on ``n mod 4``: even, 1 and 3 pick the first, second and third."""
    start = _build(r"\k. k (\x y z. x) (\x y z. y) (\x y z. x) (\x y z. z)")
    rotate = _build(r"\t k. t (\a b c d. k b c d a)")
    return _build(r"\n x y z. n rot start (\a b c d. a x y z)", rot=rotate, start=start)


@lru_cache(maxsize=1)
def double() -> CTerm:
    return _build(r"\n f x. n (\y. f (f y)) x")


@lru_cache(maxsize=1)
def double_plus_one() -> CTerm:
    return _build(r"\n f x. f (d n f x)", d=double())


# iterate over (value, flag) pairs: the flag flips every step and the value
# grows on every second step
@lru_cache(maxsize=1)
def half() -> CTerm:
    start = _build(r"\k. k zero false")
    advance = _build(r"\s k. s (\h b. b (k (sigma h) false) (k h true))")
    return _build(r"\n f x. n step start (\h b. h f x)", step=advance, start=start)


@lru_cache(maxsize=1)
def predecessor() -> CTerm:
    start = _build(r"\k. k zero zero")
    advance = _build(r"\s k. s (\a b. k b (sigma b))")
    return _build(r"\n f x. n step start (\a b. a f x)", step=advance, start=start)


@lru_cache(maxsize=1)
def compare() -> CTerm:
    """``cp ⋆ m·n·ξ·η·ζ·π``: ``ξ`` if m < n, ``η`` if n < m, ``ζ`` if equal."""
    positive = _build(r"\k. k (\d a b. a) (\a b. b)")
    return _build(
        r"\m n x y z. pos (m p n) x (pos (n p m) y z)",
        pos=positive,
        p=predecessor(),
    )


def dispatchers() -> dict[str, CTerm]:
    return {
        "pred": predecessor(),
        "cp": compare(),
        "e": parity(),
        "e4": mod4_dispatch(),
        "d0": double(),
        "d1": double_plus_one(),
        "d2": half(),
    }
