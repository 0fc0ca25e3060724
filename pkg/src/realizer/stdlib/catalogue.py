"""The library of named proof-like terms, each with the run it promises.

Condition tokens are the atom ``@t``; C-expression primitives stay atoms so a
slot holding ``(γ)τ`` is the nested image of ``@t``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from ..builder import image
from ..forcing import ALPHA0, alpha0_bar, cbar, combinator_star, cont_star, gammas, star_compile
from ..machine import DEFAULT_FUEL
from ..numerals import SUCCESSOR, ZERO, expand_numeral
from ..syntax import Apply, Atom, CTerm, Kind, NumLit, Process, app, stack_of
from ..wedge import CExpr, Meet, PVar, WedgeTerm, derive_to, parse_wedge
from . import core
from .contracts import Case, Contract, NamedTerm, build, open_term, slotted, unfolding_entry
from .recursion import PROGRAMS, compile_stored, evaluate
from .tautologies import WITNESSES, transfer, witness, wrapped

TOKEN = Atom("t")
REST = Atom("w")
f, g, x, y, z = (Atom(name) for name in ("f", "g", "x", "y", "z"))
xi, eta, zeta = Atom("xi"), Atom("eta"), Atom("zeta")


def schema(source: str | WedgeTerm, target: str | WedgeTerm) -> CExpr:
    if isinstance(source, str):
        source = parse_wedge(source)
    if isinstance(target, str):
        target = parse_wedge(target)
    return derive_to(source, target)


def _contract(statement: str, cases: Callable[[], list[Case]]) -> Contract:
    return Contract(statement, cases)


def _process(head: CTerm, *items: CTerm) -> Process:
    return Process(head, stack_of(*items))


def _slotted_process(head: CTerm, *items: CTerm, token: CTerm) -> Process:
    return Process(head, slotted(*items, token=token))


# -- numerals, storage and dispatch ---------------------------------------------


def _core_entries() -> list[NamedTerm]:
    fixpoint = core.fixpoint()
    storage = core.storage()
    successor = core.storage_successor()
    entries = [
        NamedTerm(
            "fixpoint",
            fixpoint,
            "Fixpoint combinator: Y applied to f unfolds to f (Y f).",
            _contract(
                "Y * @f . #0 reaches @f * (Y @f) . #0",
                lambda: [Case(_process(fixpoint, f), _process(f, Apply(fixpoint, f)), 1000)],
            ),
        ),
        unfolding_entry(
            "fixpoint_swapped",
            r"\x. y (\u z. x z u)",
            "Fixpoint that hands the recursive call as the second argument.",
            {"y": fixpoint},
        ),
        NamedTerm(
            "storage_successor",
            successor,
            "Step of the storage operator: passes the successor of its argument on.",
            _contract(
                "S * @g . n . #0 reaches @g * (n+1) . #0",
                lambda: [
                    *(Case(_process(successor, g, NumLit(n)), _process(g, NumLit(n + 1))) for n in range(4)),
                    Case(_process(successor, g, x), _process(g, Apply(SUCCESSOR, x))),
                ],
            ),
        ),
        NamedTerm(
            "storage",
            storage,
            "Storage operator: evaluates a numeral before handing it to its continuation.",
            _contract(
                "T * @f . @x . #0 reaches @x * S . @f . 0 . #0, and T * @f . n . #0 reaches @f * n . #0",
                lambda: [
                    Case(_process(storage, f, x), _process(x, successor, f, ZERO)),
                    *(Case(_process(storage, f, NumLit(n)), _process(f, NumLit(n))) for n in range(6)),
                ],
            ),
        ),
    ]
    samples = range(0, 9)
    x_, y_, z_ = x, y, z
    table = core.dispatchers()
    entries += [
        NamedTerm(
            "pred",
            table["pred"],
            "Predecessor on iterator numerals, with pred 0 = 0.",
            _stored_contract(table["pred"], lambda n: max(n - 1, 0), "pred"),
        ),
        NamedTerm(
            "cp",
            table["cp"],
            "Three-way comparison of two numerals: less, greater or equal picks the first, second or third branch.",
            _contract(
                "cp * m . n . @x . @y . @z . #0 reaches @x, @y or @z for m < n, n < m or m = n",
                lambda: [
                    Case(
                        _process(table["cp"], NumLit(m), NumLit(n), x_, y_, z_),
                        _process(x_ if m < n else y_ if n < m else z_),
                    )
                    for m in range(4)
                    for n in range(4)
                ],
            ),
        ),
        NamedTerm(
            "e",
            table["e"],
            "Parity test: even numerals pick the first branch, odd ones the second.",
            _contract(
                "e * n . @x . @y . #0 reaches @x for even n, @y for odd n",
                lambda: [
                    Case(_process(table["e"], NumLit(n), x_, y_), _process(x_ if n % 2 == 0 else y_))
                    for n in samples
                ],
            ),
        ),
        NamedTerm(
            "e4",
            table["e4"],
            "Dispatch modulo four: even, 1 and 3 pick the first, second and third branch.",
            _contract(
                "e4 * n . @x . @y . @z . #0 reaches @x (n even), @y (n = 1 mod 4) or @z (n = 3 mod 4)",
                lambda: [
                    Case(_process(table["e4"], NumLit(n), x_, y_, z_), _process(mod4_branch(n, x_, y_, z_)))
                    for n in samples
                ],
            ),
        ),
        NamedTerm("d0", table["d0"], "Doubling on numerals.", _stored_contract(table["d0"], lambda n: 2 * n, "d0")),
        NamedTerm(
            "d1",
            table["d1"],
            "Doubling plus one on numerals.",
            _stored_contract(table["d1"], lambda n: 2 * n + 1, "d1"),
        ),
        NamedTerm(
            "d2",
            table["d2"],
            "Halving, rounded down, on numerals.",
            _stored_contract(table["d2"], lambda n: n // 2, "d2"),
        ),
    ]
    for name in ("add", "mul", "pairing"):
        program = PROGRAMS[name]
        entries.append(
            NamedTerm(
                f"program_{name}",
                compile_stored(program),
                f"Compiled primitive recursive {name}: hands the evaluated result to its last argument.",
                _program_contract(name),
            )
        )
    return entries


def mod4_branch(n: int, first: CTerm, second: CTerm, third: CTerm) -> CTerm:
    if n % 2 == 0:
        return first
    return second if n % 4 == 1 else third


def _stored_contract(term: CTerm, oracle: Callable[[int], int], name: str) -> Contract:
    storage = core.storage()
    return _contract(
        f"T * @f . ({name} n) . #0 reaches @f * {name}(n) . #0",
        lambda: [
            Case(_process(storage, f, Apply(term, NumLit(n))), _process(f, NumLit(oracle(n)))) for n in range(9)
        ],
    )


def _program_contract(name: str) -> Contract:
    program = PROGRAMS[name]
    term = compile_stored(program)
    samples = [(1, 2), (3, 0), (2, 3)] if program.arity == 2 else [(n,) for n in range(4)]
    return _contract(
        f"{name} * m... . @f . #0 reaches @f * {name}(m...) . #0",
        lambda: [
            Case(
                _process(term, *map(NumLit, args), f),
                _process(f, NumLit(evaluate(program, *args))),
                1_000_000,
            )
            for args in samples
        ],
    )


# -- forced numerals and combinators ----------------------------------------------


@lru_cache(maxsize=1)
def forced_successor_parts() -> dict[str, object]:
    lift = schema("(1 ^ (p ^ (q ^ r)))", "(p ^ (q ^ r))")
    successor = build(r"\f x. g f (sigma x)", {"g": cbar(lift), "sigma": SUCCESSOR})
    rearrange = schema("(1 ^ (p ^ (q ^ r)))", "(q ^ (1 ^ (p ^ (1 ^ r))))")
    storage = build(r"\f x. g x s f zero", {"g": cbar(rearrange), "s": successor, "zero": ZERO})
    return {"lift": lift, "successor": successor, "rearrange": rearrange, "storage": storage}


@lru_cache(maxsize=1)
def counting_parts() -> dict[str, object]:
    one_sigma = star_compile(SUCCESSOR)[1]
    start = schema("(1 ^ (1 ^ q))", "((1 ^ 1) ^ q)")
    tick = derive_to(Meet(PVar("p"), PVar("q")), Meet(Meet(one_sigma, PVar("p")), PVar("q")))
    counter = build(r"\k x. g0 (k g x)", {"g0": cbar(start), "g": cbar(tick)})
    successor_star = Apply(alpha0_bar(), star_compile(SUCCESSOR)[0])
    lift = build(r"\g y. g (b y)", {"b": successor_star})
    numeral_star = build(r"\k f. k u f z", {"u": lift, "z": star_compile(ZERO)[0]})
    both = build(r"\x. g x (j x)", {"g": counter, "j": numeral_star})
    return {"start": start, "tick": tick, "counter": counter, "numeral_star": numeral_star, "both": both}


def counter_image(n: int, token: CTerm = TOKEN) -> CTerm:
    """The slot left by the counter after ``n`` ticks: ``(γ)ⁿ(γ₀)τ``."""
    parts = counting_parts()
    return image(parts["start"] + parts["tick"] * n, token)


def numeral_star(n: int) -> CTerm:
    return star_compile(expand_numeral(n))[0]


def _forced_entries() -> list[NamedTerm]:
    parts = forced_successor_parts()
    counting = counting_parts()
    table = gammas()
    a0 = alpha0_bar()
    entries = [
        NamedTerm(
            "forced_successor",
            parts["successor"],
            "Storage step that also rewrites the condition in the slot.",
            _contract(
                "S * @psi . @nu . @w^t reaches @psi * (sigma @nu) . @w^(gamma t)",
                lambda: [
                    Case(
                        _slotted_process(parts["successor"], xi, x, REST, token=TOKEN),
                        _slotted_process(xi, Apply(SUCCESSOR, x), REST, token=image(parts["lift"], TOKEN)),
                    )
                ],
            ),
        ),
        NamedTerm(
            "forced_storage",
            parts["storage"],
            "Storage operator threading a condition through the slot.",
            _contract(
                "T * @phi . @nu . @w^t reaches @nu * S . @phi . 0 . @w^(gamma' t)",
                lambda: [
                    Case(
                        _slotted_process(parts["storage"], f, x, REST, token=TOKEN),
                        _slotted_process(
                            x, parts["successor"], f, ZERO, REST, token=image(parts["rearrange"], TOKEN)
                        ),
                    )
                ],
            ),
        ),
        NamedTerm(
            "condition_counter",
            counting["counter"],
            "Applies one condition rewrite per unit of a numeral, after an initial one.",
            _contract(
                "g * n . @x . @w^t reaches @x * @w^((gamma)^n (gamma0) t)",
                lambda: [
                    Case(
                        _slotted_process(counting["counter"], NumLit(n), x, REST, token=TOKEN),
                        _slotted_process(x, REST, token=counter_image(n)),
                    )
                    for n in range(4)
                ],
            ),
        ),
        NamedTerm(
            "numeral_star",
            counting["numeral_star"],
            "Turns a numeral into the forced translation of the same numeral.",
            _contract(
                "j * n . @x . #0 reaches @x * n* . #0",
                lambda: [Case(_process(counting["numeral_star"], NumLit(n), x), _process(x, numeral_star(n))) for n in range(4)],
            ),
        ),
        NamedTerm(
            "forced_numeral",
            counting["both"],
            "Combines the counter and the numeral translation on one numeral.",
            _contract(
                "J * n . @x . @w^t reaches @x * n* . @w^((gamma)^n (gamma0) t)",
                lambda: [
                    Case(
                        _slotted_process(counting["both"], NumLit(n), x, REST, token=TOKEN),
                        _slotted_process(x, numeral_star(n), REST, token=counter_image(n)),
                    )
                    for n in range(3)
                ],
            ),
        ),
        NamedTerm(
            "reassociate",
            a0,
            "Condition wrapper for the primitive a0: applies its first argument to the second.",
            _contract(
                "a0bar * @x . @y . @w^t reaches @x * @y . @w^(a0 t)",
                lambda: [
                    Case(
                        _slotted_process(a0, x, y, REST, token=TOKEN),
                        _slotted_process(x, y, REST, token=image(ALPHA0, TOKEN)),
                    )
                ],
            ),
        ),
    ]
    forced = {kind: combinator_star(kind) for kind in (Kind.I, Kind.K, Kind.E, Kind.W, Kind.C, Kind.B, Kind.CC)}

    def slot(name: str) -> CTerm:
        return image(table[name], TOKEN)

    behaviours = {
        Kind.I: ("I* * @x . @w^t reaches @x * @w^(gI t)", [x, REST], _slotted_process(x, REST, token=slot("I"))),
        Kind.K: ("K* * @x . @y . @w^t reaches @x * @w^(gK t)", [x, y, REST], _slotted_process(x, REST, token=slot("K"))),
        Kind.E: (
            "E* * @x . @y . @w^t reaches (a0bar @x @y) * @w^(gE t)",
            [x, y, REST],
            _slotted_process(app(a0, x, y), REST, token=slot("E")),
        ),
        Kind.W: (
            "W* * @x . @y . @w^t reaches @x * @y . @y . @w^(gW t)",
            [x, y, REST],
            _slotted_process(x, y, y, REST, token=slot("W")),
        ),
        Kind.C: (
            "C* * @x . @y . @z . @w^t reaches @x * @z . @y . @w^(gC t)",
            [x, y, z, REST],
            _slotted_process(x, z, y, REST, token=slot("C")),
        ),
        Kind.B: (
            "B* * @x . @y . @z . @w^t reaches (a0bar @x) (a0bar @y @z) * @w^(gB t)",
            [x, y, z, REST],
            _slotted_process(Apply(Apply(a0, x), app(a0, y, z)), REST, token=slot("B")),
        ),
        Kind.CC: (
            "cc* * @x . @w^t reaches @x * k*_(@w) . @w^(gcc t)",
            [x, REST],
            _slotted_process(x, cont_star(stack_of(REST)), REST, token=slot("cc")),
        ),
    }
    for kind, term in forced.items():
        statement, items, target = behaviours[kind]
        fuel = 400_000 if kind is Kind.CC else DEFAULT_FUEL
        entries.append(
            NamedTerm(
                f"forced_{kind.value}",
                term,
                f"Forced counterpart of the combinator {kind.value}.",
                _contract(
                    statement,
                    lambda term=term, items=items, target=target, fuel=fuel: [
                        Case(_slotted_process(term, *items, token=TOKEN), target, fuel)
                    ],
                ),
            )
        )
    return entries


# -- the generic ideal and density ------------------------------------------------


def _ideal_entries() -> list[NamedTerm]:
    a0 = alpha0_bar()
    unit_shape = schema("(1 ^ (p ^ q))", "(p ^ 1)")
    unit = cbar(unit_shape)

    refute_value = schema("(1 ^ (p ^ q))", "q")
    refute_slot = schema("(1 ^ (p ^ q))", "(p ^ (1 ^ 1))")
    refutation = build(r"\x. read (\y. write x (b y) (a y))", {"a": refute_value, "b": refute_slot})

    split_outer = schema("(1 ^ (p' ^ (q' ^ q)))", "(q' ^ ((q ^ p') ^ 1))")
    split_inner = schema("((q ^ p') ^ p)", "(p' ^ (p ^ q))")
    split = build(r"\x y. a (y (b x))", {"a": cbar(split_outer), "b": cbar(split_inner)})

    swap = schema("(p ^ q)", "(q ^ p)")
    refute_meet_outer = schema("(1 ^ (r ^ (q ^ r')))", "(r ^ (1 ^ q))")
    refute_meet = build(r"\x y. g (x (\z. write y (b z)))", {"g": cbar(refute_meet_outer), "b": swap})

    down_slot = schema("(1 ^ (p' ^ (r ^ q)))", "((r ^ 1) ^ (1 ^ 1))")
    down_value = schema("(1 ^ (p' ^ (r ^ q)))", "(q ^ p')")
    downward_env = {"a0": a0, "b": swap, "a": down_slot, "c": down_value}
    downward = build(r"\x y. read (\z. write (a0 y (\u. write x (b u))) (a z) (c z))", downward_env)

    duplicate = schema("(q ^ r)", "(q ^ (q ^ r))")
    density_step = build(r"read (\d x y. write x (a y))", {"a": duplicate})
    density_shape = schema("(1 ^ (p ^ (q ^ r)))", "(p ^ (1 ^ q))")
    density = build(r"b (\x y. x (v y))", {"b": cbar(density_shape), "v": density_step})

    t2 = Atom("t2")
    return [
        NamedTerm(
            "ideal_unit",
            unit,
            "Condition wrapper sending 1 ^ (p ^ q) to p ^ 1.",
            _contract(
                "abar * @xi . @w^t reaches @xi * @w^(alpha t)",
                lambda: [Case(_slotted_process(unit, xi, REST, token=TOKEN), _slotted_process(xi, REST, token=image(unit_shape, TOKEN)))],
            ),
        ),
        NamedTerm(
            "ideal_from_refutation",
            refutation,
            "Splits the slot condition into a value argument and a new slot.",
            _contract(
                "theta * @eta . @w^t reaches @eta * (alpha t) . @w^(beta t)",
                lambda: [
                    Case(
                        _slotted_process(refutation, eta, REST, token=TOKEN),
                        _slotted_process(eta, image(refute_value, TOKEN), REST, token=image(refute_slot, TOKEN)),
                    )
                ],
            ),
        ),
        NamedTerm(
            "ideal_meet_split",
            split,
            "Passes a condition-wrapped first argument to the second.",
            _contract(
                "theta * @xi . @eta . @w^t reaches @eta * (bbar @xi) . @w^(alpha t)",
                lambda: [
                    Case(
                        _slotted_process(split, xi, eta, REST, token=TOKEN),
                        _slotted_process(eta, Apply(cbar(split_inner), xi), REST, token=image(split_outer, TOKEN)),
                    ),
                    Case(
                        _slotted_process(cbar(split_inner), xi, REST, token=t2),
                        _slotted_process(xi, REST, token=image(split_inner, t2)),
                    ),
                ],
            ),
        ),
        NamedTerm(
            "ideal_refute_meet",
            refute_meet,
            "Hands its first argument a swapped-condition writer for the second.",
            _contract(
                "theta * @eta . @xi . @w^t reaches @eta * (\\z. write @xi (beta z)) . @w^(gamma t)",
                lambda: [
                    Case(
                        _slotted_process(refute_meet, eta, xi, REST, token=TOKEN),
                        _slotted_process(
                            eta,
                            open_term(r"\z. write y (b z)", {"b": swap}, y=xi),
                            REST,
                            token=image(refute_meet_outer, TOKEN),
                        ),
                    )
                ],
            ),
        ),
        NamedTerm(
            "ideal_downward",
            downward,
            "Moves a realizer along an inclusion of conditions.",
            _contract(
                "theta * @xi . @eta . @w^t reaches (a0bar @eta L) * (alpha' t) . @w^(alpha t)",
                lambda: [
                    Case(
                        _slotted_process(downward, xi, eta, REST, token=TOKEN),
                        _slotted_process(
                            open_term(r"a0 y (\u. write x (b u))", {"a0": a0, "b": swap}, x=xi, y=eta),
                            image(down_value, TOKEN),
                            REST,
                            token=image(down_slot, TOKEN),
                        ),
                    )
                ],
            ),
        ),
        NamedTerm(
            "density_step",
            density_step,
            "Reads the slot, discards it and writes a duplicated condition taken from the stack.",
            _contract(
                "v * @eta . @t . @w^t2 reaches @eta * @w^(alpha @t)",
                lambda: [
                    Case(
                        _slotted_process(density_step, eta, TOKEN, REST, token=t2),
                        _slotted_process(eta, REST, token=image(duplicate, TOKEN)),
                    )
                ],
            ),
        ),
        NamedTerm(
            "density",
            density,
            "Density of the generic ideal: feeds the density step to its first argument.",
            _contract(
                "theta * @xi . @eta . @w^t reaches @xi * (v @eta) . @w^(beta t)",
                lambda: [
                    Case(
                        _slotted_process(density, xi, eta, REST, token=TOKEN),
                        _slotted_process(xi, Apply(density_step, eta), REST, token=image(density_shape, TOKEN)),
                    )
                ],
            ),
        ),
    ]


# -- dependent choice and the chain condition ---------------------------------------


@lru_cache(maxsize=1)
def choice_terms() -> dict[str, CTerm]:
    order_out = schema("((p ^ q) ^ r)", "(r ^ q)")
    order_in = schema("((p ^ q) ^ r)", "(p ^ r)")
    widen = build(r"\x y. x (b y)", {"b": order_in})
    terms: dict[str, CTerm] = {}
    terms["dse"] = build(
        r"\a. (\h. a I I (\x y. h)) (\z. cc (\k. a (\x. x z) bp (\x y. k (y (al x)))))",
        {"bp": widen, "al": order_out},
    )
    terms["dse0"] = build(r"\x. dse (quote (yp x))", {"dse": terms["dse"], "yp": core.fixpoint_swapped()})
    terms["rec"] = build(r"\k x y1 y2 y3 u z v. z k x y1 y2 y3 (u z v)")
    terms["cd1"] = build(r"\x y. dse0 (\l z1 z2 z3 z4. y (rec l z1 z2 z3 z4 x))", terms)
    terms["cdc1"] = build(r"\n. n (\x y. x (\z. cd1 z y)) (\x. x (\x y. y))", terms)
    terms["cdc4"] = build(r"\a b c. b (\x0 x1 x2 x3 x y. x (x1 y)) (\x. x a) c")
    terms["lef0"] = build(r"\x y z. cc (\k. y (\u. k (x u)) z)")
    terms["lef1"] = build(r"\x y z u. lef0 (cc (\h. y (\v. h (x v u)) z))", terms)
    return terms


_CHOICE_TEXT = {
    "dse": r"\a. (\h. a I I (\x y. h)) (\z. cc (\k. a (\x. x z) bp (\x y. k (y (al x)))))",
    "dse0": r"\x. dse (quote (yp x))",
    "rec": r"\k x y1 y2 y3 u z v. z k x y1 y2 y3 (u z v)",
    "cd1": r"\x y. dse0 (\l z1 z2 z3 z4. y (rec l z1 z2 z3 z4 x))",
    "cdc1": r"\n. n (\x y. x (\z. cd1 z y)) (\x. x (\x y. y))",
    "cdc4": r"\a b c. b (\x0 x1 x2 x3 x y. x (x1 y)) (\x. x a) c",
    "lef0": r"\x y z. cc (\k. y (\u. k (x u)) z)",
    "lef1": r"\x y z u. lef0 (cc (\h. y (\v. h (x v u)) z))",
}

_CHOICE_DESCRIPTIONS = {
    "dse": "Existence of an extension step for a sequence of conditions, by a control jump.",
    "dse0": "Least witness search: the extension step applied to the quoted fixpoint.",
    "rec": "One step of the inductively defined sequence graph.",
    "cd1": "Extends a sequence graph by one index using the least-witness search.",
    "cdc1": "Iterates the one-step extension along a numeral.",
    "cdc4": "Refutes a sequence value whose condition is rejected.",
    "lef0": "Transports forcing of a formula down an inclusion of conditions.",
    "lef1": "Transports weak forcing down an inclusion of conditions.",
}


def _choice_entries() -> list[NamedTerm]:
    terms = choice_terms()
    order_out = schema("((p ^ q) ^ r)", "(r ^ q)")
    order_in = schema("((p ^ q) ^ r)", "(p ^ r)")
    environment = {
        **terms,
        "bp": build(r"\x y. x (b y)", {"b": order_in}),
        "al": order_out,
        "yp": core.fixpoint_swapped(),
    }
    entries = []
    for name, text in _CHOICE_TEXT.items():
        entry = unfolding_entry(name, text, _CHOICE_DESCRIPTIONS[name], environment)
        assert entry.term == terms[name]
        entries.append(entry)

    compare = core.compare()
    uniqueness = build(
        r"\k l x y1 y2 y3 u v1 v2 v3. cp l k (x l v1 v2 v3) (u k y1 y2 y3)", {"cp": compare}
    )
    ys = [Atom(f"y{i}") for i in range(1, 4)]
    vs = [Atom(f"v{i}") for i in range(1, 4)]
    other = Atom("u")

    def uniqueness_cases() -> list[Case]:
        cases = []
        for k in range(4):
            for k2 in range(4):
                start = _process(uniqueness, NumLit(k), NumLit(k2), xi, *ys, other, *vs, zeta, REST)
                if k2 < k:
                    target = _process(xi, NumLit(k2), *vs, REST)
                elif k < k2:
                    target = _process(other, NumLit(k), *ys, REST)
                else:
                    target = _process(zeta, REST)
                cases.append(Case(start, target))
        return cases

    entries.append(
        NamedTerm(
            "dse1",
            uniqueness,
            "Uniqueness of the least witness: compares two candidate indices.",
            _contract("dse1 * k . k' . @xi . y... . @u . v... . @zeta . @w follows the comparison of k and k'", uniqueness_cases),
        )
    )
    entries.append(unfolding_entry("sequence_start", r"\x y. y", "The sequence graph holds at index zero."))
    entries.append(unfolding_entry("sequence_start_unique", r"\x. x I I", "The value at index zero is the start value."))

    dec_env = {**terms, "sigma": SUCCESSOR, "for": Atom("for")}
    entries.append(unfolding_entry("dec0", r"\a b x. b (cdc4 x)", "First decomposition step: refutes rejected values.", dec_env))
    entries.append(unfolding_entry("dec1", r"\a b. a (\x y. y)", "Second decomposition step: inclusion below the start.", dec_env))
    entries.append(
        unfolding_entry(
            "dec2",
            r"\a b n. cc (\k. cdc1 (sigma n) (\x. k (lef1 (for n x) (a n x))))",
            "Third decomposition step: weak forcing at every index.",
            dec_env,
        )
    )

    drop_one = schema("(1 ^ p)", "p")
    crl_env = {
        "be": schema("(p ^ q)", "((p ^ q) ^ q)"),
        "al": schema("p", "(p ^ p)"),
        "alp": schema("((p ^ r) ^ q)", "(r ^ 1)"),
        "bep": schema("((p ^ r) ^ q)", "(p ^ q)"),
        "alpp": schema("((p ^ r) ^ 1)", "(p ^ r)"),
    }
    crl2 = unfolding_entry(
        "crl2",
        r"\x0 y0 z0 u. (\y z. y0 (\x. x0 y z (be x)) (al u)) (\d x y. x (alp y) (bep y)) (\n x y. z0 n x (alpp y))",
        "Builds a contradiction from a condition below a weakly forced predicate.",
        crl_env,
    )
    crl1 = unfolding_entry(
        "crl1",
        r"\x y z u v. x (crl2 u y z) (d v)",
        "Reduces the ultrafilter condition to the contradiction builder.",
        {"crl2": crl2.term, "d": drop_one},
    )
    entries += [crl1, crl2]
    return entries


# -- tautologies and integer coding -------------------------------------------------


def _shuffle_cases(name: str) -> list[Case]:
    """Run a witness against the pair encoding ``⟨a, b⟩ = λk. k a b``."""
    term = witness(name).term
    a, b, c, d, k, s = (Atom(n) for n in ("a", "b", "c", "d", "k", "s"))

    def pair(left: CTerm, right: CTerm) -> CTerm:
        return build(r"\k. k l r", {"l": left, "r": right})

    match name:
        case "a0":
            consumer = build(r"\x q. q (\y z. k x y z)", {"k": k})
            return [Case(_process(term, pair(pair(a, b), c), consumer, REST), _process(k, a, b, c, REST))]
        case "a1":
            return [Case(_process(term, a, k, REST), _process(k, a, build(r"\z. z"), REST))]
        case "a2":
            return [Case(_process(term, pair(a, b), s, REST), _process(b, s, REST))]
        case "b0":
            return [Case(_process(term, a, k, REST), _process(k, a, a, REST))]
        case "b1":
            return [Case(_process(term, pair(a, b), k, REST), _process(k, b, a, REST))]
        case "b2":
            consumer = build(r"\q u. q (\x r. r (\y z. k x y z u))", {"k": k})
            start = _process(term, pair(pair(pair(a, b), c), d), consumer, REST)
            return [Case(start, _process(k, a, b, c, d, REST))]
    raise KeyError(name)


_TAUTOLOGY_DESCRIPTIONS = {
    "a0": "Reassociates a nested conjunction to the right.",
    "a1": "Adds a true component to a conjunction.",
    "a2": "Projects a conjunction onto its second component.",
    "b0": "Duplicates a formula into a conjunction.",
    "b1": "Swaps the components of a conjunction.",
    "b2": "Reassociates the left part of a nested conjunction.",
}


def _tautology_entries() -> list[NamedTerm]:
    lift = transfer()
    entries = [
        unfolding_entry(
            "transfer",
            r"\f u m h. u m (\n x. h n (f x))",
            "Lifts a pointwise implication between sets to their infinity predicates.",
        )
    ]
    assert entries[0].term == lift
    for item in WITNESSES:
        entries.append(
            NamedTerm(
                f"witness_{item.name}",
                item.term,
                _TAUTOLOGY_DESCRIPTIONS[item.name],
                _contract(
                    f"runs as {item.name} on pair-encoded arguments",
                    lambda name=item.name: _shuffle_cases(name),
                ),
            )
        )
    for item in WITNESSES:
        term = wrapped(item.name)
        u, m, h = Atom("u"), Atom("m"), Atom("h")

        def cases(term=term, item=item) -> list[Case]:
            inner = open_term(r"\n x. h n (f x)", {"f": item.term}, h=h)
            return [Case(_process(term, u, m, h, REST), _process(u, m, inner, REST))]

        entries.append(
            NamedTerm(
                f"condition_{item.name}",
                term,
                f"Condition primitive {item.name} on infinite sets: {_TAUTOLOGY_DESCRIPTIONS[item.name].lower()}",
                _contract(f"transfer {item.name} * @u . @m . @h . #0 reaches @u * @m . (\\n x. @h n ({item.name} x))", cases),
            )
        )
    entries.append(
        unfolding_entry("represent_predicate", r"\x. x I", "Representation of a predicate on integers by a set.")
    )
    return entries


# -- comparison of ordinal codes -------------------------------------------------------


def _order_entries() -> list[NamedTerm]:
    env = {
        "e": core.parity(),
        "e4": core.mod4_dispatch(),
        "d0": core.double(),
        "d2": core.half(),
        "p": core.predecessor(),
        "sigma": SUCCESSOR,
    }
    entries = [
        unfolding_entry(
            "inclusion_transitive",
            r"\f g i x h. f i x (\j y. g j y h)",
            "Transitivity of inclusion between coded sequences.",
        ),
        unfolding_entry(
            "inclusion_meet",
            r"\f i y u. e i (f (d2 i) y (\j. u (d0 j))) (u i y)",
            "Inclusion is preserved by meeting both sides with a third condition.",
            env,
        ),
        unfolding_entry(
            "inclusion_condition",
            r"\f g i k x w u v z. f k w (\l t. f i x (\j y. g j l y t u v z))",
            "Inclusion transports the infinity predicate.",
        ),
        unfolding_entry(
            "inclusion_reassociate",
            r"\i y u. e4 i (u (d0 i) y) (u (sigma (sigma i)) y) (u (p (p (p i))) y)",
            "Reassociation of meets is an inclusion: dispatches on the index modulo four.",
            env,
        ),
        unfolding_entry(
            "inclusion_successor",
            r"\i x y. y (sigma i) x",
            "Each condition is included in its successor extension.",
            env,
        ),
    ]
    cases = _order_cases(env)
    entries[1] = NamedTerm(entries[1].name, entries[1].term, entries[1].description, cases["inclusion_meet"])
    entries[3] = NamedTerm(entries[3].name, entries[3].term, entries[3].description, cases["inclusion_reassociate"])
    return entries


def _order_cases(env) -> dict[str, Contract]:
    meet = build(r"\f i y u. e i (f (d2 i) y (\j. u (d0 j))) (u i y)", env)
    reassociate = build(r"\i y u. e4 i (u (d0 i) y) (u (sigma (sigma i)) y) (u (p (p (p i))) y)", env)
    u = Atom("u")
    d0, d2, p = env["d0"], env["d2"], env["p"]

    def meet_cases() -> list[Case]:
        result = []
        for n in range(6):
            start = _process(meet, f, NumLit(n), y, u, REST)
            if n % 2 == 0:
                target = _process(f, Apply(d2, NumLit(n)), y, open_term(r"\j. u (d0 j)", {"d0": d0}, u=u), REST)
            else:
                target = _process(u, NumLit(n), y, REST)
            result.append(Case(start, target))
        return result

    def reassociate_cases() -> list[Case]:
        result = []
        for n in range(8):
            start = _process(reassociate, NumLit(n), y, u, REST)
            number = NumLit(n)
            target = mod4_branch(
                n,
                _process(u, Apply(d0, number), y, REST),
                _process(u, app(SUCCESSOR, app(SUCCESSOR, number)), y, REST),
                _process(u, Apply(p, Apply(p, Apply(p, number))), y, REST),
            )
            result.append(Case(start, target))
        return result

    return {
        "inclusion_meet": _contract("even indices go to the halved index, odd ones straight to u", meet_cases),
        "inclusion_reassociate": _contract("the index modulo four selects the rewritten index", reassociate_cases),
    }


@lru_cache(maxsize=1)
def catalogue() -> dict[str, NamedTerm]:
    """Every library term by name, built once."""
    entries: dict[str, NamedTerm] = {}
    for section in (_core_entries, _forced_entries, _ideal_entries, _choice_entries, _tautology_entries, _order_entries):
        for entry in section():
            if entry.name in entries:
                raise ValueError(f"duplicate catalogue entry {entry.name!r}")
            entries[entry.name] = entry
    return entries


def lookup(name: str) -> NamedTerm:
    try:
        return catalogue()[name]
    except KeyError:
        raise KeyError(f"no library term named {name!r}") from None
