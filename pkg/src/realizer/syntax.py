"""Terms, stacks and processes of the combinator machine.

The concrete syntax (ASCII, with a few unicode aliases accepted on input)::

    term     B C E I K W cc quote read write   elementary combinators
             x, f', _tmp                       variables (lowercase or underscore)
             @name                             atom (uninterpreted constant)
             %n                                compressed numeral
             k[stack]                          continuation constant
             (t u v)  or  t u v                left-associated application
    stack    t . u . #n                        pushes ending in a stack constant
    process  term * stack

``;`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union


class Kind(enum.Enum):
    B = "B"
    C = "C"
    E = "E"
    I = "I"
    K = "K"
    W = "W"
    CC = "cc"
    QUOTE = "quote"
    READ = "read"
    WRITE = "write"


COMBINATOR_NAMES = {kind.value: kind for kind in Kind}
_UNICODE_NAMES = {"ς": Kind.QUOTE, "χ": Kind.READ, "χ′": Kind.WRITE, "χ'": Kind.WRITE}


@dataclass(frozen=True, slots=True)
class Variable:
    name: str


@dataclass(frozen=True, slots=True)
class Atom:
    name: str


@dataclass(frozen=True, slots=True)
class Combinator:
    kind: Kind


@dataclass(frozen=True, slots=True)
class Apply:
    function: CTerm
    argument: CTerm


@dataclass(frozen=True, slots=True)
class Continuation:
    saved: Stack


@dataclass(frozen=True, slots=True)
class NumLit:
    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("numeral literal must be a natural number")


@dataclass(frozen=True, slots=True)
class StackConstant:
    index: int


@dataclass(frozen=True, slots=True)
class Push:
    top: CTerm
    rest: Stack


@dataclass(frozen=True, slots=True)
class Process:
    head: CTerm
    stack: Stack

    def __str__(self) -> str:
        return print_process(self)


CTerm = Union[Variable, Atom, Combinator, Apply, Continuation, NumLit]
Stack = Union[StackConstant, Push]

B = Combinator(Kind.B)
C = Combinator(Kind.C)
E = Combinator(Kind.E)
I = Combinator(Kind.I)
K = Combinator(Kind.K)
W = Combinator(Kind.W)
CC = Combinator(Kind.CC)
QUOTE = Combinator(Kind.QUOTE)
READ = Combinator(Kind.READ)
WRITE = Combinator(Kind.WRITE)


def app(function: CTerm, *arguments: CTerm) -> CTerm:
    """Left-associated application: ``app(f, a, b)`` is ``((f a) b)``."""
    for argument in arguments:
        function = Apply(function, argument)
    return function


def stack_of(*items: CTerm, constant: int = 0) -> Stack:
    stack: Stack = StackConstant(constant)
    for item in reversed(items):
        stack = Push(item, stack)
    return stack


def stack_items(stack: Stack) -> tuple[list[CTerm], int]:
    """Split a stack into its pushed terms (top first) and its constant index."""
    items = []
    while isinstance(stack, Push):
        items.append(stack.top)
        stack = stack.rest
    return items, stack.index


def spine(term: CTerm) -> tuple[CTerm, list[CTerm]]:
    """Split ``(h a1 ... an)`` into ``h`` and ``[a1, ..., an]``."""
    arguments = []
    while isinstance(term, Apply):
        arguments.append(term.argument)
        term = term.function
    arguments.reverse()
    return term, arguments


def size(term: CTerm) -> int:
    """Node count; continuation stacks count their pushed terms."""
    total = 0
    pending: list[CTerm] = [term]
    while pending:
        node = pending.pop()
        total += 1
        match node:
            case Apply(function, argument):
                pending.append(function)
                pending.append(argument)
            case Continuation(saved):
                items, _ = stack_items(saved)
                pending.extend(items)
    return total


def substitute(term: CTerm, bindings: Mapping[str, CTerm]) -> CTerm:
    """Replace variables by terms; atoms are never touched."""
    if not bindings:
        return term
    match term:
        case Variable(name):
            return bindings.get(name, term)
        case Apply(function, argument):
            return Apply(substitute(function, bindings), substitute(argument, bindings))
        case Continuation(saved):
            return Continuation(substitute_stack(saved, bindings))
        case _:
            return term


def substitute_stack(stack: Stack, bindings: Mapping[str, CTerm]) -> Stack:
    items, constant = stack_items(stack)
    return stack_of(*(substitute(item, bindings) for item in items), constant=constant)


# identity-keyed cache; entries hold their term so ids are never reused while cached
_FREE_CACHE: dict[int, tuple[CTerm, frozenset[str]]] = {}
_FREE_CACHE_LIMIT = 500_000


def _free(term: CTerm) -> frozenset[str]:
    match term:
        case Variable(name):
            return frozenset((name,))
        case Apply(function, argument):
            hit = _FREE_CACHE.get(id(term))
            if hit is not None and hit[0] is term:
                return hit[1]
            found = _free(function) | _free(argument)
            if len(_FREE_CACHE) >= _FREE_CACHE_LIMIT:
                _FREE_CACHE.clear()
            _FREE_CACHE[id(term)] = (term, found)
            return found
        case Continuation(saved):
            return frozenset().union(*(_free(item) for item in stack_items(saved)[0]))
    return frozenset()


def free_variables(term: CTerm) -> set[str]:
    return set(_free(term))


def is_closed(term: CTerm) -> bool:
    return not free_variables(term)


def atoms(term: CTerm) -> set[str]:
    found: set[str] = set()
    pending: list[CTerm] = [term]
    while pending:
        match pending.pop():
            case Atom(name):
                found.add(name)
            case Apply(function, argument):
                pending.append(function)
                pending.append(argument)
            case Continuation(saved):
                pending.extend(stack_items(saved)[0])
    return found


def contains_continuation(term: CTerm) -> bool:
    pending: list[CTerm] = [term]
    while pending:
        match pending.pop():
            case Continuation():
                return True
            case Apply(function, argument):
                pending.append(function)
                pending.append(argument)
    return False


# -- printing ---------------------------------------------------------------


def print_term(term: CTerm) -> str:
    match term:
        case Variable(name):
            return name
        case Atom(name):
            return "@" + name
        case Combinator(kind):
            return kind.value
        case NumLit(value):
            return f"%{value}"
        case Continuation(saved):
            return f"k[{print_stack(saved)}]"
        case Apply():
            head, arguments = spine(term)
            return "(" + " ".join(print_term(part) for part in [head, *arguments]) + ")"
    raise TypeError(f"not a c-term: {term!r}")


def print_stack(stack: Stack) -> str:
    items, constant = stack_items(stack)
    return " . ".join([*(print_term(item) for item in items), f"#{constant}"])


def print_process(process: Process) -> str:
    return f"{print_term(process.head)} * {print_stack(process.stack)}"


# -- parsing ----------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", offset: int = 0) -> None:
        line = text.count("\n", 0, offset) + 1
        column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        super().__init__(f"{message} at line {line}, column {column}")
        self.offset = offset


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    offset: int


_TOKEN_RE = re.compile(
    r"""
    (?P<skip>\s+|;[^\n]*)
  | (?P<const>\#\d+)
  | (?P<num>%\d+)
  | (?P<atom>@[A-Za-z_][A-Za-z0-9_']*)
  | (?P<uni>χ′|χ'|χ|ς)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<lam>\\|λ)
  | (?P<dot>\.|·)
  | (?P<star>\*|⋆)
  | (?P<punct>[()\[\]=])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    offset = 0
    while offset < len(text):
        match = _TOKEN_RE.match(text, offset)
        if match is None:
            raise ParseError(f"unexpected character {text[offset]!r}", text, offset)
        kind = match.lastgroup
        if kind != "skip":
            value = match.group()
            tokens.append(Token(value if kind == "punct" else kind, value, offset))
        offset = match.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class Parser:
    """Recursive-descent reader for c-terms, stacks and processes."""

    def __init__(self, text: str, tokens: list[Token] | None = None, position: int = 0) -> None:
        self.text = text
        self.tokens = tokenize(text) if tokens is None else tokens
        self.position = position

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def peek(self, ahead: int = 1) -> Token:
        return self.tokens[min(self.position + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.current
        self.position += 1
        return token

    def expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            self.fail(f"expected {kind!r}")
        return self.advance()

    def fail(self, message: str):
        token = self.current
        shown = token.text or "end of input"
        raise ParseError(f"{message}, found {shown!r}", self.text, token.offset)

    def finish(self) -> None:
        if self.current.kind != "eof":
            self.fail("unexpected trailing input")

    def starts_primary(self) -> bool:
        return self.current.kind in ("ident", "atom", "num", "uni", "(")

    def application(self) -> CTerm:
        if not self.starts_primary():
            self.fail("expected a term")
        term = self.primary()
        while self.starts_primary() and not self.at_definition():
            term = Apply(term, self.primary())
        return term

    def at_definition(self) -> bool:
        return self.current.kind == "ident" and self.peek().kind == "="

    def primary(self) -> CTerm:
        token = self.current
        match token.kind:
            case "(":
                self.advance()
                term = self.application()
                self.expect(")")
                return term
            case "atom":
                self.advance()
                return Atom(token.text[1:])
            case "num":
                self.advance()
                return NumLit(int(token.text[1:]))
            case "uni":
                self.advance()
                return Combinator(_UNICODE_NAMES[token.text])
            case "ident":
                if token.text == "k" and self.peek().kind == "[":
                    return self.continuation()
                self.advance()
                return identifier_term(token.text, self.text, token.offset)
        self.fail("expected a term")

    def continuation(self) -> Continuation:
        self.expect("ident")
        self.expect("[")
        saved = self.stack()
        self.expect("]")
        return Continuation(saved)

    def stack(self) -> Stack:
        items = []
        while self.current.kind != "const":
            items.append(self.application())
            if self.current.kind != "const":
                self.expect("dot")
        return stack_of(*items, constant=int(self.advance().text[1:]))

    def process(self) -> Process:
        head = self.application()
        self.expect("star")
        return Process(head, self.stack())


def identifier_term(name: str, text: str = "", offset: int = 0) -> CTerm:
    if name in COMBINATOR_NAMES:
        return Combinator(COMBINATOR_NAMES[name])
    if name[0].isupper():
        raise ParseError(f"unknown combinator {name!r}", text, offset)
    return Variable(name)


def parse_term(text: str) -> CTerm:
    parser = Parser(text)
    term = parser.application()
    parser.finish()
    return term


def parse_stack(text: str) -> Stack:
    parser = Parser(text)
    stack = parser.stack()
    parser.finish()
    return stack


def parse_process(text: str) -> Process:
    parser = Parser(text)
    process = parser.process()
    parser.finish()
    return process


def all_subterms(term: CTerm) -> Iterable[CTerm]:
    pending: list[CTerm] = [term]
    while pending:
        node = pending.pop()
        yield node
        if isinstance(node, Apply):
            pending.append(node.argument)
            pending.append(node.function)
