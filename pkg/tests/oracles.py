"""Independent reference implementations used to cross-check the package.

Nothing here imports the code under test except the data constructors, so a
mistake shared by both sides has to be made twice.
"""

from __future__ import annotations

from realizer.syntax import Apply, Atom, Combinator, Kind, Variable


def cantor_pair(a: int, b: int) -> int:
    return a + (a + b) * (a + b + 1) // 2


def cantor_unpair(z: int) -> tuple[int, int]:
    # smallest diagonal w with w(w+1)/2 <= z, by search
    w = 0
    while (w + 1) * (w + 2) // 2 <= z:
        w += 1
    a = z - w * (w + 1) // 2
    return a, w - a


def occurs(name: str, term) -> bool:
    if isinstance(term, Variable):
        return term.name == name
    if isinstance(term, Apply):
        return occurs(name, term.function) or occurs(name, term.argument)
    return False


def bracket(name: str, term):
    """Abstraction by recursion instead of the package's rewrite loop."""
    if not occurs(name, term):
        return Apply(Combinator(Kind.K), term)
    if term == Variable(name):
        return Combinator(Kind.I)
    function, argument = term.function, term.argument
    e = Combinator(Kind.E)
    if not occurs(name, argument):
        return Apply(Apply(Combinator(Kind.C), bracket(name, Apply(e, function))), argument)
    if argument == Variable(name):
        if not occurs(name, function):
            return Apply(e, function)
        return Apply(Combinator(Kind.W), bracket(name, Apply(e, function)))
    b = Combinator(Kind.B)
    return bracket(name, Apply(Apply(Apply(b, function), argument.function), argument.argument))


def weak_head_run(head, stack: list, fuel: int):
    """A list-based machine for the six pure combinators; returns every state."""
    states = [(head, tuple(stack))]
    for _ in range(fuel):
        if isinstance(head, Apply):
            stack = [head.argument, *stack]
            head = head.function
        elif isinstance(head, Combinator):
            need = {Kind.I: 1, Kind.K: 2, Kind.E: 2, Kind.W: 2, Kind.C: 3, Kind.B: 3}.get(head.kind)
            if need is None or len(stack) < need:
                break
            args, stack = stack[:need], stack[need:]
            kind = head.kind
            if kind in (Kind.I, Kind.K):
                head = args[0]
            elif kind is Kind.E:
                head = Apply(args[0], args[1])
            elif kind is Kind.W:
                head, stack = args[0], [args[1], args[1], *stack]
            elif kind is Kind.C:
                head, stack = args[0], [args[2], args[1], *stack]
            else:
                head, stack = args[0], [Apply(args[1], args[2]), *stack]
        else:
            break
        states.append((head, tuple(stack)))
    return states


def atoms(*names: str):
    return [Atom(name) for name in names]
