import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from realizer.wedge import (
    A0,
    A1,
    A2,
    B0,
    B1,
    B2,
    BETA0_PRIME,
    COMBINATOR_SCHEMAS,
    DERIVED,
    ONE,
    Meet,
    PVar,
    ShapeMismatch,
    VariableAbsent,
    WedgeError,
    adjoin_term,
    adjoin_var,
    apply_cexpr,
    apply_prim,
    cexpr_from_composition,
    combinator_cexprs,
    derive_to,
    parse_cexpr,
    parse_wedge,
    print_cexpr,
    substitute_wedge,
    variables,
)
from strategies import primitives, wedges

p, q, r, s = (PVar(name) for name in "pqrs")
w = parse_wedge


def depth(term) -> int:
    return 1 + max(depth(term.left), depth(term.right)) if isinstance(term, Meet) else 0


# [PAPER] primitive schemas
def test_apply_prim_examples():
    assert apply_prim(A2, w("(p ^ q)")) == q
    assert apply_prim(B1, w("((p ^ q) ^ r)")) == w("(r ^ (p ^ q))")
    assert apply_prim(A1, p) == Meet(p, ONE)
    assert apply_prim(B0, ONE) == Meet(ONE, ONE)
    assert apply_prim(B2, w("(((p ^ q) ^ r) ^ s)")) == w("((p ^ (q ^ r)) ^ s)")
    with pytest.raises(ShapeMismatch):
        apply_prim(A0, w("(p ^ q)"))


def test_apply_cexpr_reports_index():
    with pytest.raises(ShapeMismatch) as caught:
        apply_cexpr((A2, A2), w("(p ^ q)"))
    assert caught.value.index == 1
    assert apply_cexpr((), w("(p ^ q)")) == w("(p ^ q)")


# [PAPER] the derived sequences, as displayed and by their schemas
def test_derived_sequences():
    assert BETA0_PRIME == (B0, A0, A2, B1) == cexpr_from_composition(B1, A2, A0, B0)
    assert print_cexpr(BETA0_PRIME) == "(b1)(a2)(a0)(b0)"
    for name, (cexpr, source, target) in DERIVED.items():
        assert apply_cexpr(cexpr, source) == target, name


def test_derived_schema_examples():
    assert apply_cexpr(DERIVED["beta2'"][0], w("(p ^ (q ^ r))")) == w("((p ^ q) ^ r)")
    assert apply_cexpr(DERIVED["beta3"][0], w("(p ^ (q ^ r))")) == w("(p ^ (r ^ q))")
    assert apply_cexpr(DERIVED["beta3'"][0], w("((p ^ (q ^ r)) ^ s)")) == w("((p ^ (r ^ q)) ^ s)")


def test_adjoin_var_examples():
    assert adjoin_var(p, "p") == (B0,)
    assert adjoin_var(w("(u ^ p)"), "p") == BETA0_PRIME
    term = w("((p ^ q) ^ r)")
    assert apply_cexpr(adjoin_var(term, "q"), term) == Meet(term, q)
    with pytest.raises(VariableAbsent):
        adjoin_var(term, "s")


def test_adjoin_term_examples():
    assert adjoin_term(p, ONE) == (A1,)
    term = w("(p ^ q)")
    assert apply_cexpr(adjoin_term(term, w("(q ^ p)")), term) == Meet(term, w("(q ^ p)"))
    with pytest.raises(VariableAbsent):
        adjoin_term(p, q)


def test_derive_to_examples():
    assert apply_cexpr(derive_to(w("(1 ^ (p ^ (q ^ r)))"), w("(p ^ r)")), w("(1 ^ (p ^ (q ^ r)))")) == w("(p ^ r)")
    assert apply_cexpr(derive_to(w("(p ^ (q ^ r))"), w("(q ^ p)")), w("(p ^ (q ^ r))")) == w("(q ^ p)")
    term = w("((p ^ 1) ^ q)")
    assert apply_cexpr(derive_to(term, term), term) == term


# [PAPER] the eight combinator schemas; W duplicates q as its later use requires
def test_combinator_cexpr_table():
    table = combinator_cexprs()
    assert set(table) == {"I", "K", "E", "W", "C", "B", "cc", "k"}
    for name, (source, target) in COMBINATOR_SCHEMAS.items():
        assert apply_cexpr(table[name], source) == target, name
    assert COMBINATOR_SCHEMAS["W"][1] == w("(p ^ (q ^ (q ^ r)))")
    assert apply_cexpr(table["cc"], w("(1 ^ (p ^ q))")) == w("(p ^ (q ^ q))")


@st.composite
def derivable_pairs(draw):
    source = draw(wedges())
    names = sorted(variables(source))
    if names:
        target = draw(wedges(names=tuple(names)))
    else:
        target = draw(wedges(names=("p",)).filter(lambda term: not variables(term)))
    return source, target


@settings(max_examples=1000)
@given(derivable_pairs())
def test_derivation_sound(pair):
    source, target = pair
    assume(depth(source) <= 6 and depth(target) <= 6)
    assert apply_cexpr(derive_to(source, target), source) == target


@given(wedges(), wedges())
def test_derive_to_refuses_missing_variables(source, target):
    missing = variables(target) - variables(source)
    assume(missing)
    with pytest.raises(VariableAbsent):
        derive_to(source, target)


@given(primitives, wedges())
def test_prims_commute_with_renaming(primitive, term):
    renaming = {"p": PVar("p2"), "q": PVar("q2"), "r": PVar("r2"), "s": PVar("s2")}
    try:
        applied = apply_prim(primitive, term)
    except ShapeMismatch:
        with pytest.raises(ShapeMismatch):
            apply_prim(primitive, substitute_wedge(term, renaming))
        return
    assert substitute_wedge(applied, renaming) == apply_prim(primitive, substitute_wedge(term, renaming))


@given(st.lists(primitives, max_size=8).map(tuple))
def test_cexpr_text_roundtrip(cexpr):
    assert parse_cexpr(print_cexpr(cexpr)) == cexpr


@given(wedges())
def test_wedge_text_roundtrip(term):
    assert parse_wedge(str(term)) == term


@pytest.mark.parametrize("text", ["(p ^", "p ^ q ^ r", "(p q)", "p)", "$"])
def test_wedge_parse_errors(text):
    with pytest.raises(WedgeError):
        parse_wedge(text)


def test_cexpr_parse_errors():
    with pytest.raises(WedgeError):
        parse_cexpr("(a3)")
    assert parse_cexpr("id") == ()
