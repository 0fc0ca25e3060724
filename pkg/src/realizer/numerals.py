"""Iterator numerals and their compressed literal form.

``%n`` stands for ``σⁿ 0`` with ``0 = (K I)`` and ``σ`` the successor
compiled from ``\\n f x. f (n f x)``. Every comparison that must ignore the
choice of representation goes through :func:`compress`.
"""

from __future__ import annotations

from functools import lru_cache

from .lambda_elim import eliminate, parse_lambda
from .syntax import (
    I,
    K,
    Apply,
    Continuation,
    CTerm,
    NumLit,
    Process,
    Stack,
    stack_items,
    stack_of,
)

ZERO: CTerm = Apply(K, I)
SUCCESSOR: CTerm = eliminate(parse_lambda(r"\n f x. f (n f x)"))


def numeral(n: int) -> NumLit:
    return NumLit(n)


def expand_numeral(n: int) -> CTerm:
    term = ZERO
    for _ in range(n):
        term = Apply(SUCCESSOR, term)
    return term


def canonicalize(term: CTerm) -> CTerm:
    """Expand every numeral literal into its σ-tower."""
    match term:
        case NumLit(value):
            return expand_numeral(value)
        case Apply(function, argument):
            return Apply(canonicalize(function), canonicalize(argument))
        case Continuation(saved):
            return Continuation(canonicalize_stack(saved))
    return term


def canonicalize_stack(stack: Stack) -> Stack:
    items, constant = stack_items(stack)
    return stack_of(*map(canonicalize, items), constant=constant)


@lru_cache(maxsize=1)
def _compressed_successor() -> CTerm:
    return compress(SUCCESSOR)


# identity-keyed, as in free-variable search: forced terms share subterms heavily
_COMPRESS_CACHE: dict[int, tuple[CTerm, CTerm]] = {}
_COMPRESS_CACHE_LIMIT = 500_000


def compress(term: CTerm) -> CTerm:
    """Fold every σ-tower over ``(K I)`` into a numeral literal, bottom-up."""
    match term:
        case Apply(function, argument):
            hit = _COMPRESS_CACHE.get(id(term))
            if hit is not None and hit[0] is term:
                return hit[1]
            result = _compress_apply(term, compress(function), compress(argument))
            if len(_COMPRESS_CACHE) >= _COMPRESS_CACHE_LIMIT:
                _COMPRESS_CACHE.clear()
            _COMPRESS_CACHE[id(term)] = (term, result)
            return result
        case Continuation(saved):
            return Continuation(compress_stack(saved))
    return term


def _compress_apply(term: Apply, function: CTerm, argument: CTerm) -> CTerm:
    if function == K and argument == I:
        return NumLit(0)
    if isinstance(argument, NumLit) and function == _compressed_successor():
        return NumLit(argument.value + 1)
    if function is term.function and argument is term.argument:
        return term
    return Apply(function, argument)


def compress_stack(stack: Stack) -> Stack:
    items, constant = stack_items(stack)
    return stack_of(*map(compress, items), constant=constant)


def compress_process(process: Process) -> Process:
    return Process(compress(process.head), compress_stack(process.stack))


def equivalent(left: CTerm, right: CTerm) -> bool:
    """Structural equality once numerals are put in compressed form."""
    return left == right or compress(left) == compress(right)


def equivalent_processes(left: Process, right: Process) -> bool:
    return left == right or compress_process(left) == compress_process(right)


def as_number(term: CTerm) -> int | None:
    """The value of a numeral in either form, else ``None``."""
    compressed = compress(term)
    return compressed.value if isinstance(compressed, NumLit) else None

