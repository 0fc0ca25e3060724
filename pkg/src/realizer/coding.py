"""Injective numbering of terms and stacks, as consumed by ``quote``."""

from __future__ import annotations

import math
import threading

from .syntax import (
    Apply,
    Atom,
    Combinator,
    Continuation,
    CTerm,
    Kind,
    NumLit,
    Push,
    Stack,
    StackConstant,
    Variable,
)

COMBINATOR_ORDER = (
    Kind.B,
    Kind.C,
    Kind.E,
    Kind.I,
    Kind.K,
    Kind.W,
    Kind.CC,
    Kind.QUOTE,
    Kind.READ,
    Kind.WRITE,
)
_TERM_TAGS = {"combinator": 0, "apply": 1, "continuation": 2, "atom": 3}

# numerals past this many bits of code are refused rather than computed
MAX_CODE_BITS = 1 << 22


class OpenTermError(ValueError):
    pass


def pair(a: int, b: int) -> int:
    """Cantor pairing, a bijection from ℕ² to ℕ."""
    s = a + b
    return a + s * (s + 1) // 2


def unpair(z: int) -> tuple[int, int]:
    s = (math.isqrt(8 * z + 1) - 1) // 2
    a = z - s * (s + 1) // 2
    return a, s - a


class AtomRegistry:
    """Session-stable numbering of atom names."""

    def __init__(self, names: list[str] | None = None) -> None:
        self._lock = threading.Lock()
        self._names: list[str] = []
        self._index: dict[str, int] = {}
        for name in names or []:
            self.index(name)

    def index(self, name: str) -> int:
        with self._lock:
            if name not in self._index:
                self._index[name] = len(self._names)
                self._names.append(name)
            return self._index[name]

    def name(self, index: int) -> str:
        if not 0 <= index < len(self._names):
            raise ValueError(f"no atom registered under index {index}")
        return self._names[index]

    def names(self) -> list[str]:
        return list(self._names)


DEFAULT_REGISTRY = AtomRegistry()


def code_term(term: CTerm, registry: AtomRegistry = DEFAULT_REGISTRY) -> int:
    match term:
        case Combinator(kind):
            return pair(0, COMBINATOR_ORDER.index(kind))
        case Apply(function, argument):
            return pair(1, pair(code_term(function, registry), code_term(argument, registry)))
        case Continuation(saved):
            return pair(2, code_stack(saved, registry))
        case Atom(name):
            return pair(3, registry.index(name))
        case NumLit(value):
            return _code_numeral(value, registry)
        case Variable(name):
            raise OpenTermError(f"cannot code the open term variable {name!r}")
    raise TypeError(f"not a c-term: {term!r}")


def _code_numeral(value: int, registry: AtomRegistry) -> int:
    from .numerals import SUCCESSOR, ZERO

    if value and 2 * _bits_lower_bound(SUCCESSOR) - 2 > MAX_CODE_BITS:
        raise OverflowError(f"the code of %{value} is too large to compute")
    successor = code_term(SUCCESSOR, registry)
    code = code_term(ZERO, registry)
    for _ in range(value):
        code = pair(1, pair(successor, code))
        if code.bit_length() > MAX_CODE_BITS:
            raise OverflowError(f"the code of %{value} is too large to compute")
    return code


def _bits_lower_bound(term: CTerm) -> float:
    """A lower bound on log2 of an atom-free term's code."""
    # pair(a, b) >= (a + b)**2 / 2, so log2 pair(a, b) >= 2 log2 max(a, b) - 1
    if isinstance(term, Apply):
        inner = max(_bits_lower_bound(term.function), _bits_lower_bound(term.argument))
        return 2 * (2 * inner - 1) - 1
    if isinstance(term, Combinator):
        return math.log2(max(pair(0, COMBINATOR_ORDER.index(term.kind)), 1))
    return 0.0


def code_stack(stack: Stack, registry: AtomRegistry = DEFAULT_REGISTRY) -> int:
    items = []
    while isinstance(stack, Push):
        items.append(stack.top)
        stack = stack.rest
    code = pair(0, stack.index)
    for item in reversed(items):
        code = pair(1, pair(code_term(item, registry), code))
    return code


def decode_term(code: int, registry: AtomRegistry = DEFAULT_REGISTRY) -> CTerm:
    tag, payload = unpair(code)
    match tag:
        case 0:
            if payload >= len(COMBINATOR_ORDER):
                raise ValueError(f"no combinator numbered {payload}")
            return Combinator(COMBINATOR_ORDER[payload])
        case 1:
            function, argument = unpair(payload)
            return Apply(decode_term(function, registry), decode_term(argument, registry))
        case 2:
            return Continuation(decode_stack(payload, registry))
        case 3:
            return Atom(registry.name(payload))
    raise ValueError(f"{code} is not the code of a term")


def decode_stack(code: int, registry: AtomRegistry = DEFAULT_REGISTRY) -> Stack:
    items = []
    while True:
        tag, payload = unpair(code)
        if tag == 0:
            stack: Stack = StackConstant(payload)
            break
        if tag != 1:
            raise ValueError(f"{code} is not the code of a stack")
        top, code = unpair(payload)
        items.append(decode_term(top, registry))
    for item in reversed(items):
        stack = Push(item, stack)
    return stack
