"""The deterministic machine: one rule per head, bounded runs and traces."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .coding import DEFAULT_REGISTRY, AtomRegistry, code_stack
from .numerals import SUCCESSOR, ZERO, compress_process
from .syntax import (
    Apply,
    Atom,
    Combinator,
    Continuation,
    Kind,
    NumLit,
    Process,
    Push,
    Stack,
    StackConstant,
    Variable,
    print_process,
)

DEFAULT_FUEL = 100_000

# entries each combinator consumes before it can fire
ARITY = {
    Kind.I: 1,
    Kind.K: 2,
    Kind.E: 2,
    Kind.W: 2,
    Kind.C: 3,
    Kind.B: 3,
    Kind.CC: 1,
    Kind.QUOTE: 1,
    Kind.READ: 1,
    Kind.WRITE: 2,
}


@dataclass(frozen=True, slots=True)
class StuckAtomHead:
    atom: str

    def __str__(self) -> str:
        return f"stuck: atom @{self.atom} in head position"


@dataclass(frozen=True, slots=True)
class StuckVariableHead:
    variable: str

    def __str__(self) -> str:
        return f"stuck: variable {self.variable} in head position"


@dataclass(frozen=True, slots=True)
class InsufficientArguments:
    combinator: str
    needed: int
    available: int

    def __str__(self) -> str:
        return f"stuck: {self.combinator} needs {self.needed} arguments, has {self.available}"


@dataclass(frozen=True, slots=True)
class NoSlot:
    def __str__(self) -> str:
        return "stuck: read found no slot above the stack constant"


HaltReason = Union[StuckAtomHead, StuckVariableHead, InsufficientArguments, NoSlot]


@dataclass(frozen=True, slots=True)
class Next:
    process: Process


@dataclass(frozen=True, slots=True)
class Halt:
    reason: HaltReason

    def __str__(self) -> str:
        return str(self.reason)


@dataclass(frozen=True, slots=True)
class FuelExhausted:
    def __str__(self) -> str:
        return "fuel exhausted"


StepResult = Union[Next, Halt]
FUEL_EXHAUSTED = FuelExhausted()


@dataclass(frozen=True)
class Trace:
    steps: tuple[Process, ...]
    terminal: Halt | FuelExhausted
    fuel_used: int = field(default=0)

    @property
    def final(self) -> Process:
        return self.steps[-1]

    @property
    def halted(self) -> bool:
        return isinstance(self.terminal, Halt)


def put_slot(stack: Stack, token) -> Stack:
    """Insert ``token`` just above the stack constant."""
    items = []
    while isinstance(stack, Push):
        items.append(stack.top)
        stack = stack.rest
    result: Stack = Push(token, stack)
    for item in reversed(items):
        result = Push(item, result)
    return result


class SlotError(ValueError):
    pass


def get_slot(stack: Stack):
    """Remove and return the entry just above the stack constant."""
    items = []
    while isinstance(stack, Push):
        items.append(stack.top)
        stack = stack.rest
    if not items:
        raise SlotError("no slot above a bare stack constant")
    token = items.pop()
    result: Stack = stack
    for item in reversed(items):
        result = Push(item, result)
    return token, result


def _pop(stack: Stack, count: int):
    items = []
    while len(items) < count and isinstance(stack, Push):
        items.append(stack.top)
        stack = stack.rest
    return items, stack


def step(process: Process, registry: AtomRegistry = DEFAULT_REGISTRY) -> StepResult:
    head, stack = process.head, process.stack
    match head:
        case Apply(function, argument):
            return Next(Process(function, Push(argument, stack)))
        case Atom(name):
            return Halt(StuckAtomHead(name))
        case Variable(name):
            return Halt(StuckVariableHead(name))
        case NumLit(0):
            return Next(Process(ZERO.function, Push(ZERO.argument, stack)))
        case NumLit(value):
            return Next(Process(SUCCESSOR, Push(NumLit(value - 1), stack)))
        case Continuation(saved):
            if not isinstance(stack, Push):
                return Halt(InsufficientArguments("k", 1, 0))
            return Next(Process(stack.top, saved))
        case Combinator(kind):
            return _fire(kind, stack, registry)
    raise TypeError(f"not a c-term: {head!r}")


def _fire(kind: Kind, stack: Stack, registry: AtomRegistry) -> StepResult:
    needed = ARITY[kind]
    args, rest = _pop(stack, needed)
    if len(args) < needed:
        return Halt(InsufficientArguments(kind.value, needed, len(args)))
    match kind:
        case Kind.I:
            return Next(Process(args[0], rest))
        case Kind.K:
            return Next(Process(args[0], rest))
        case Kind.E:
            return Next(Process(Apply(args[0], args[1]), rest))
        case Kind.W:
            return Next(Process(args[0], Push(args[1], Push(args[1], rest))))
        case Kind.C:
            return Next(Process(args[0], Push(args[2], Push(args[1], rest))))
        case Kind.B:
            return Next(Process(args[0], Push(Apply(args[1], args[2]), rest)))
        case Kind.CC:
            return Next(Process(args[0], Push(Continuation(rest), rest)))
        case Kind.QUOTE:
            return Next(Process(args[0], Push(NumLit(code_stack(rest, registry)), rest)))
        case Kind.READ:
            if isinstance(rest, StackConstant):
                return Halt(NoSlot())
            token, below = get_slot(rest)
            return Next(Process(args[0], Push(token, below)))
        case Kind.WRITE:
            return Next(Process(args[0], put_slot(rest, args[1])))
    raise AssertionError(kind)


def iterate(process: Process, fuel: int, registry: AtomRegistry = DEFAULT_REGISTRY) -> Iterator[Process | Halt | FuelExhausted]:
    """Yield the processes of the run, then its terminal marker."""
    yield process
    for _ in range(fuel):
        result = step(process, registry)
        if isinstance(result, Halt):
            yield result
            return
        process = result.process
        yield process
    result = step(process, registry)
    yield result if isinstance(result, Halt) else FUEL_EXHAUSTED


def run(process: Process, fuel: int = DEFAULT_FUEL, registry: AtomRegistry = DEFAULT_REGISTRY) -> Trace:
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    steps = []
    terminal = FUEL_EXHAUSTED
    for item in iterate(process, fuel, registry):
        if isinstance(item, Process):
            steps.append(item)
        else:
            terminal = item
    return Trace(tuple(steps), terminal, len(steps) - 1)


def unwind(process: Process) -> Process:
    """Push the arguments of an application head until the head is not one."""
    head, stack = process.head, process.stack
    while isinstance(head, Apply):
        head, stack = head.function, Push(head.argument, stack)
    return Process(head, stack)


def steps_to(start: Process, target: Process, fuel: int, registry: AtomRegistry = DEFAULT_REGISTRY) -> int | None:
    """Index of the first trace entry equal to ``target`` (numerals compressed).

    A target whose head is an application also matches in its unwound form:
    ``(t u) ⋆ π`` and ``t ⋆ u·π`` are one push apart, and the machine may
    arrive at the second without passing through the first.
    """
    wanted = (compress_process(target), compress_process(unwind(target)))
    for index, item in enumerate(iterate(start, fuel, registry)):
        if not isinstance(item, Process):
            return None
        if item == target or (any(_same_shape(item, w) for w in wanted) and _compressed_in(item, wanted)):
            return index
    return None


def _compressed_in(process: Process, wanted) -> bool:
    # equality rather than set membership: hashing a large term walks all of it
    compressed = compress_process(process)
    return any(compressed == item for item in wanted)


def _same_shape(process: Process, wanted: Process) -> bool:
    # cheap filter before compressing a whole process
    head = process.head
    if isinstance(wanted.head, NumLit):
        return isinstance(head, (NumLit, Apply))
    return type(head) is type(wanted.head) and _depth(process.stack) == _depth(wanted.stack)


def _depth(stack: Stack) -> int:
    depth = 0
    while isinstance(stack, Push):
        depth += 1
        stack = stack.rest
    return depth


def reaches(start: Process, target: Process, fuel: int = DEFAULT_FUEL, registry: AtomRegistry = DEFAULT_REGISTRY) -> bool:
    return steps_to(start, target, fuel, registry) is not None


def format_trace(trace: Trace, compressed: bool = True) -> list[str]:
    lines = []
    for process in trace.steps:
        lines.append(print_process(compress_process(process) if compressed else process))
    return lines
