import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realizer.syntax import (
    CC,
    I,
    K,
    READ,
    Apply,
    Atom,
    Combinator,
    Continuation,
    Kind,
    NumLit,
    ParseError,
    Process,
    Push,
    StackConstant,
    Variable,
    free_variables,
    is_closed,
    parse_process,
    parse_stack,
    parse_term,
    print_process,
    print_stack,
    print_term,
    stack_of,
    substitute,
)
from strategies import depth, stacks, terms

x, y = Variable("x"), Variable("y")


# [TRIVIAL] grammar-forced parses
@pytest.mark.parametrize(
    "text, expected",
    [
        ("I", I),
        ("(K x)", Apply(K, x)),
        ("k[@t . #0]", Continuation(Push(Atom("t"), StackConstant(0)))),
        ("(K x y)", Apply(Apply(K, x), y)),
        ("%3", NumLit(3)),
        ("read", READ),
        ("χ′", Combinator(Kind.WRITE)),
        ("ς", Combinator(Kind.QUOTE)),
        ("cc ; a comment\n", CC),
    ],
)
def test_parse_term(text, expected):
    assert parse_term(text) == expected


@pytest.mark.parametrize(
    "term, text",
    [
        (Apply(Apply(K, x), y), "(K x y)"),
        (NumLit(0), "%0"),
        (READ, "read"),
        (Apply(x, Apply(K, y)), "(x (K y))"),
        (Continuation(stack_of(Atom("t"))), "k[@t . #0]"),
    ],
)
def test_print_term(term, text):
    assert print_term(term) == text


def test_process_and_stack_text():
    process = parse_process("K ⋆ @x · @y · #0")
    assert process == Process(K, stack_of(Atom("x"), Atom("y")))
    assert print_process(process) == "K * @x . @y . #0"
    assert print_stack(parse_stack("#2")) == "#2"


@pytest.mark.parametrize("text", ["(K x", "Foo", "K ? x", "@", "(K) )", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_term(text)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as caught:
        parse_term("(K\n  ?)")
    assert "line 2" in str(caught.value)


# [TRIVIAL] substitution and free variables
def test_substitute_examples():
    assert substitute(Apply(x, y), {"x": I}) == Apply(I, y)
    assert substitute(I, {"x": K}) == I
    assert substitute(Continuation(stack_of(x)), {"x": K}) == Continuation(stack_of(K))
    assert substitute(Atom("x"), {"x": K}) == Atom("x")


def test_free_variables_examples():
    assert free_variables(Apply(x, Apply(K, y))) == {"x", "y"}
    assert free_variables(parse_term("(W (E E))")) == set()
    assert free_variables(Apply(Atom("a"), x)) == {"x"}
    assert free_variables(Continuation(stack_of(x))) == {"x"}
    assert is_closed(parse_term("(K @a)"))


@settings(max_examples=10_000)
@given(terms(max_leaves=60))
def test_print_parse_roundtrip(term):
    assert depth(term) <= 60
    assert parse_term(print_term(term)) == term


@given(stacks())
def test_stack_roundtrip(stack):
    assert parse_stack(print_stack(stack)) == stack


@given(terms(max_leaves=20), terms(max_leaves=6), terms(max_leaves=6))
def test_substitution_composes(term, u, v):
    if "x" in free_variables(v):
        v = substitute(v, {"x": I})
    sequential = substitute(substitute(term, {"x": u}), {"y": v})
    simultaneous = substitute(term, {"x": substitute(u, {"y": v}), "y": v})
    assert sequential == simultaneous


@given(terms(max_leaves=20), terms(max_leaves=6))
def test_free_variables_after_substitution(term, u):
    if "x" in free_variables(term):
        assert free_variables(substitute(term, {"x": u})) == (free_variables(term) - {"x"}) | free_variables(u)


@given(st.integers(0, 5))
def test_stack_constants_roundtrip(index):
    assert parse_stack(f"#{index}") == StackConstant(index)
