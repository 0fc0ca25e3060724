"""Hypothesis strategies for terms, stacks and meet-terms."""

from hypothesis import strategies as st

from realizer.syntax import (
    Apply,
    Atom,
    Combinator,
    Continuation,
    Kind,
    NumLit,
    Push,
    StackConstant,
    Variable,
)
from realizer.wedge import ONE, Meet, PVar, Primitive

NAMES = st.sampled_from(["a", "b", "c", "x", "y", "z", "f_1", "k'"])
COMBINATORS = st.sampled_from(list(Kind)).map(Combinator)


def terms(max_leaves: int = 40, variables: bool = True, continuations: bool = True, numerals: bool = True):
    leaves = [COMBINATORS, NAMES.map(Atom)]
    if variables:
        leaves.append(NAMES.map(Variable))
    if numerals:
        leaves.append(st.integers(0, 40).map(NumLit))

    def extend(children):
        options = [st.builds(Apply, children, children)]
        if continuations:
            options.append(st.lists(children, max_size=3).map(lambda items: Continuation(_stack(items, 0))))
        return st.one_of(options)

    return st.recursive(st.one_of(leaves), extend, max_leaves=max_leaves)


def _stack(items, constant):
    result = StackConstant(constant)
    for item in reversed(items):
        result = Push(item, result)
    return result


def stacks(elements=None, min_size: int = 0, max_size: int = 4):
    elements = elements if elements is not None else terms(max_leaves=8)
    return st.builds(_stack, st.lists(elements, min_size=min_size, max_size=max_size), st.integers(0, 3))


def body_terms(binders, max_leaves: int = 24):
    """Closed-apart-from-``binders`` bodies over atoms, combinators and the binders."""
    leaves = st.one_of(
        st.sampled_from(binders).map(Variable),
        st.sampled_from(["u", "v", "w"]).map(Atom),
        st.sampled_from([Kind.I, Kind.K, Kind.B, Kind.W]).map(Combinator),
    )
    return st.recursive(leaves, lambda children: st.builds(Apply, children, children), max_leaves=max_leaves)


def wedges(names=("p", "q", "r", "s"), max_leaves: int = 12):
    leaves = st.one_of(st.just(ONE), st.sampled_from(names).map(PVar))
    return st.recursive(leaves, lambda children: st.builds(Meet, children, children), max_leaves=max_leaves)


primitives = st.sampled_from(list(Primitive))


def depth(term) -> int:
    if isinstance(term, Apply):
        return 1 + max(depth(term.function), depth(term.argument))
    return 0
