import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realizer.builder import image, instantiate, primitive_atom
from realizer.forcing import (
    Bottom,
    EpsGuard,
    EqGuard,
    FoArrow,
    ForcingError,
    OpenTerm,
    PredGuard,
    PropArrow,
    PropAtom,
    adapter_chi,
    adapter_delta,
    alpha0_bar,
    cbar,
    combinator_star,
    cont_star,
    gammas,
    star_compile,
)
from realizer.machine import Halt, NoSlot, put_slot, reaches, run, steps_to
from realizer.syntax import (
    READ,
    WRITE,
    Apply,
    Atom,
    Combinator,
    Continuation,
    Kind,
    Process,
    Push,
    Variable,
    is_closed,
    parse_term,
    print_term,
    stack_of,
)
from realizer.wedge import ONE, Meet, Primitive, PVar, derive_to
from strategies import primitives, stacks, terms

token = Atom("t")
xi, eta, zeta = Atom("xi"), Atom("eta"), Atom("zeta")
atom_stacks = stacks(st.sampled_from(["a", "b", "c"]).map(Atom), max_size=3)




def with_slot(items, rest, slot):
    stack = put_slot(rest, slot)
    for item in reversed(items):
        stack = Push(item, stack)
    return stack


# [PAPER] the wrapper rewrites the slot and hands over control
@settings(max_examples=200)
@given(st.lists(primitives, max_size=6).map(tuple), atom_stacks)
def test_cbar_law(cexpr, rest):
    start = Process(cbar(cexpr), with_slot([xi], rest, token))
    target = Process(xi, put_slot(rest, image(cexpr, token)))
    assert reaches(start, target, 200)


def test_cbar_examples():
    rest = stack_of(Atom("y"))
    assert reaches(Process(cbar((Primitive.A2,)), with_slot([xi], rest, token)), Process(xi, put_slot(rest, Apply(Atom("a2"), token))), 50)
    assert reaches(Process(cbar(()), with_slot([xi], rest, token)), Process(xi, put_slot(rest, token)), 50)
    composed = image((Primitive.A2, Primitive.B1), token)
    assert composed == parse_term("(@b1 (@a2 @t))")


def test_instantiate_replaces_primitive_atoms():
    term = image((Primitive.A2, Primitive.B1), token)
    assert instantiate(term, {Primitive.A2: READ}) == Apply(primitive_atom(Primitive.B1), Apply(READ, token))


# [PAPER] star compilation on its displayed cases
def test_star_compile_examples():
    table = gammas()
    assert star_compile(parse_term("I")) == (Apply(cbar(table["I"]), parse_term("I")), ONE)
    k_star, _ = star_compile(parse_term("K"))
    i_star, _ = star_compile(parse_term("I"))
    assert star_compile(parse_term("(K I)")) == (Apply(Apply(alpha0_bar(), k_star), i_star), Meet(ONE, ONE))
    assert star_compile(Atom("a")) == (Atom("a"), ONE)
    with pytest.raises(OpenTerm):
        star_compile(Variable("x"))
    with pytest.raises(ForcingError):
        star_compile(Continuation(stack_of()))
    with pytest.raises(ForcingError):
        combinator_star(Kind.QUOTE)


@given(terms(max_leaves=10, variables=False, continuations=False, numerals=False).filter(
    lambda t: "quote" not in print_term(t) and "read" not in print_term(t) and "write" not in print_term(t)
), terms(max_leaves=4, variables=False, continuations=False, numerals=False).filter(
    lambda t: not any(name in print_term(t) for name in ("quote", "read", "write"))
))
def test_one_tree_law(t, u):
    assert star_compile(Apply(t, u))[1] == Meet(star_compile(t)[1], star_compile(u)[1])
    assert is_closed(star_compile(t)[0])


def test_forced_w_trace():
    table = gammas()
    rest = stack_of(Atom("w"))
    start = Process(Apply(cbar(table["W"]), Combinator(Kind.W)), with_slot([xi, eta], rest, token))
    assert reaches(start, Process(xi, with_slot([eta, eta], rest, image(table["W"], token))), 100_000)


def test_forced_b_trace():
    table = gammas()
    a0 = alpha0_bar()
    rest = stack_of(Atom("w"))
    start = Process(combinator_star(Kind.B), with_slot([xi, eta, zeta], rest, token))
    target = Process(Apply(Apply(a0, xi), Apply(Apply(a0, eta), zeta)), put_slot(rest, image(table["B"], token)))
    assert steps_to(start, target, 100_000) is not None


def test_forced_cc_trace():
    table = gammas()
    rest = stack_of(Atom("w"))
    start = Process(combinator_star(Kind.CC), with_slot([xi], rest, token))
    target = Process(xi, with_slot([cont_star(rest)], rest, image(table["cc"], token)))
    assert steps_to(start, target, 100_000) is not None


def test_forced_continuation_trace():
    table = gammas()
    saved, other = stack_of(Atom("p")), stack_of(Atom("o"))
    start = Process(cont_star(saved), with_slot([xi], other, token))
    assert reaches(start, Process(xi, put_slot(saved, image(table["k"], token))), 100_000)


def test_forced_continuation_needs_a_slot():
    trace = run(Process(cont_star(stack_of()), stack_of()), 10)
    assert trace.terminal == Halt(NoSlot())
    assert parse_term(print_term(cont_star(stack_of()))) == cont_star(stack_of())


prop_shapes = st.recursive(st.just(PropAtom()), lambda inner: st.builds(PropArrow, inner, inner), max_leaves=6)
fo_shapes = st.recursive(
    st.sampled_from([Bottom(), EpsGuard()]),
    lambda inner: st.one_of(st.builds(FoArrow, inner, inner), st.builds(PredGuard, inner), st.builds(EqGuard, inner)),
    max_leaves=6,
)


def test_adapter_base_cases():
    assert adapter_chi(PropAtom()) == (READ, WRITE)
    assert adapter_delta(EqGuard(Bottom())) == adapter_delta(Bottom())
    forward, backward = adapter_chi(PropArrow(PropAtom(), PropAtom()))
    assert is_closed(forward) and is_closed(backward)


@settings(max_examples=60)
@given(prop_shapes)
def test_chi_adapters_closed(shape):
    assert all(is_closed(term) for term in adapter_chi(shape))


@settings(max_examples=60)
@given(fo_shapes)
def test_delta_adapters_closed(shape):
    assert all(is_closed(term) for term in adapter_delta(shape))


def test_bottom_adapter_traces():
    forward, backward = adapter_delta(Bottom())
    rest = stack_of(Atom("w"))
    # forward reads the slot and keeps its left part; backward writes it back with a unit
    started = Process(forward, with_slot([xi], rest, token))
    left = derive_to(Meet(PVar("p"), PVar("q")), PVar("p"))
    assert reaches(started, Process(xi, stack_of(image(left, token), Atom("w"))), 100_000)
    written = Process(backward, stack_of(xi, token, Atom("w")))
    assert reaches(written, Process(xi, put_slot(rest, Apply(Atom("a1"), token))), 100_000)
