"""Second-order natural deduction: a checker that extracts λ-terms.

Formulas use only → and the two universal quantifiers. Derivations are trees
given explicitly; :func:`check` validates every node and returns the
extracted λ-term together with the conclusion. Quantifier rules leave the
term unchanged.

Proof scripts are s-expressions::

    (theorem (all (X 1) (-> (X (s 0)) (X 0) (X (s 0))))
      (gen X (intro x (X (s 0)) (intro y (X 0) (axiom x)))))
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .lambda_elim import Abs, App, Embed, LambdaTerm, Var, eliminate
from .machine import DEFAULT_FUEL, Trace, run
from .syntax import COMBINATOR_NAMES, Atom, Combinator, CTerm, ParseError, Process, stack_of


class DeductionError(ValueError):
    """A rule was applied to premises that do not fit it."""


# -- first-order terms --------------------------------------------------------


@dataclass(frozen=True)
class FVar:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class FApp:
    symbol: str
    args: tuple[FirstOrderTerm, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.symbol
        return f"({self.symbol} {' '.join(map(str, self.args))})"


FirstOrderTerm = Union[FVar, FApp]

BUILTIN_FUNCTIONS = {"0": 0, "s": 1, "+": 2, "*": 2, "pair": 2}


def term_variables(term: FirstOrderTerm) -> set[str]:
    if isinstance(term, FVar):
        return {term.name}
    return set().union(*(term_variables(arg) for arg in term.args))


def substitute_term(term: FirstOrderTerm, bindings: Mapping[str, FirstOrderTerm]) -> FirstOrderTerm:
    if isinstance(term, FVar):
        return bindings.get(term.name, term)
    return FApp(term.symbol, tuple(substitute_term(arg, bindings) for arg in term.args))


# -- formulas -----------------------------------------------------------------


@dataclass(frozen=True)
class PredVarApp:
    name: str
    args: tuple[FirstOrderTerm, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"({self.name} {' '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Arrow:
    premise: Formula
    conclusion: Formula

    def __str__(self) -> str:
        parts = [self.premise]
        rest = self.conclusion
        while isinstance(rest, Arrow):
            parts.append(rest.premise)
            rest = rest.conclusion
        parts.append(rest)
        return f"(-> {' '.join(map(str, parts))})"


@dataclass(frozen=True)
class ForallInd:
    var: str
    body: Formula

    def __str__(self) -> str:
        return f"(all {self.var} {self.body})"


@dataclass(frozen=True)
class ForallPred:
    var: str
    arity: int
    body: Formula

    def __str__(self) -> str:
        binder = self.var if self.arity == 0 else f"({self.var} {self.arity})"
        return f"(all {binder} {self.body})"


Formula = Union[PredVarApp, Arrow, ForallInd, ForallPred]


def arrows(*parts: Formula) -> Formula:
    """``arrows(A, B, C)`` is ``A → (B → C)``."""
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = Arrow(part, result)
    return result


BOTTOM: Formula = ForallPred("Z", 0, PredVarApp("Z"))
TOP: Formula = Arrow(BOTTOM, BOTTOM)


def negation(formula: Formula) -> Formula:
    return Arrow(formula, BOTTOM)


def conjunction(left: Formula, right: Formula) -> Formula:
    """``A ∧ B`` as ``(A → B → ⊥) → ⊥``."""
    return negation(arrows(left, right, BOTTOM))


def free_individuals(formula: Formula) -> set[str]:
    match formula:
        case PredVarApp(_, args):
            return set().union(*(term_variables(arg) for arg in args))
        case Arrow(premise, conclusion):
            return free_individuals(premise) | free_individuals(conclusion)
        case ForallInd(var, body):
            return free_individuals(body) - {var}
        case ForallPred(_, _, body):
            return free_individuals(body)
    raise TypeError(formula)


def free_predicates(formula: Formula) -> dict[str, int]:
    """Free predicate variables with their arities."""
    match formula:
        case PredVarApp(name, args):
            return {name: len(args)}
        case Arrow(premise, conclusion):
            merged = dict(free_predicates(premise))
            for name, arity in free_predicates(conclusion).items():
                if merged.setdefault(name, arity) != arity:
                    raise DeductionError(f"predicate {name} used with arities {merged[name]} and {arity}")
            return merged
        case ForallInd(_, body):
            return free_predicates(body)
        case ForallPred(var, arity, body):
            inner = free_predicates(body)
            if inner.get(var, arity) != arity:
                raise DeductionError(f"predicate {var} bound with arity {arity} but used with {inner[var]}")
            inner.pop(var, None)
            return inner
    raise TypeError(formula)


def check_arities(formula: Formula) -> None:
    free_predicates(formula)


def _fresh(base: str, avoid: set[str]) -> str:
    stem = base.rstrip("0123456789'")
    for index in itertools.count(1):
        candidate = f"{stem}{index}"
        if candidate not in avoid:
            return candidate
    raise AssertionError("unreachable")


def _all_names(formula: Formula) -> set[str]:
    match formula:
        case PredVarApp(name, args):
            return {name}.union(*(term_variables(arg) for arg in args))
        case Arrow(premise, conclusion):
            return _all_names(premise) | _all_names(conclusion)
        case ForallInd(var, body) | ForallPred(var, _, body):
            return {var} | _all_names(body)
    raise TypeError(formula)


def substitute_individual(formula: Formula, var: str, term: FirstOrderTerm) -> Formula:
    """``A[t/x]``, renaming binders that would capture variables of ``t``."""
    incoming = term_variables(term)
    match formula:
        case PredVarApp(name, args):
            return PredVarApp(name, tuple(substitute_term(arg, {var: term}) for arg in args))
        case Arrow(premise, conclusion):
            return Arrow(substitute_individual(premise, var, term), substitute_individual(conclusion, var, term))
        case ForallInd(bound, body):
            if bound == var or var not in free_individuals(body):
                return formula
            if bound in incoming:
                renamed = _fresh(bound, incoming | _all_names(body) | {var})
                body = substitute_individual(body, bound, FVar(renamed))
                bound = renamed
            return ForallInd(bound, substitute_individual(body, var, term))
        case ForallPred(bound, arity, body):
            return ForallPred(bound, arity, substitute_individual(body, var, term))
    raise TypeError(formula)


def _rename_predicate(formula: Formula, old: str, new: str) -> Formula:
    match formula:
        case PredVarApp(name, args):
            return PredVarApp(new if name == old else name, args)
        case Arrow(premise, conclusion):
            return Arrow(_rename_predicate(premise, old, new), _rename_predicate(conclusion, old, new))
        case ForallInd(var, body):
            return ForallInd(var, _rename_predicate(body, old, new))
        case ForallPred(var, arity, body):
            if var == old:
                return formula
            return ForallPred(var, arity, _rename_predicate(body, old, new))
    raise TypeError(formula)


def substitute_predicate(formula: Formula, var: str, binders: Sequence[str], replacement: Formula) -> Formula:
    """``A[F/X y₁…y_k]``: each ``X t₁…t_k`` becomes ``F[t⃗/y⃗]``."""
    binders = tuple(binders)
    outside_individuals = free_individuals(replacement) - set(binders)
    outside_predicates = set(free_predicates(replacement))

    def go(node: Formula) -> Formula:
        match node:
            case PredVarApp(name, args) if name == var:
                if len(args) != len(binders):
                    raise DeductionError(f"{var} has arity {len(args)} here but {len(binders)} binders were given")
                result = replacement
                # simultaneous substitution through fresh intermediates
                avoid = _all_names(replacement) | set().union(*(term_variables(arg) for arg in args)) | set(binders)
                temporaries = []
                for binder in binders:
                    temporary = _fresh(binder + "_", avoid)
                    avoid.add(temporary)
                    temporaries.append(temporary)
                    result = substitute_individual(result, binder, FVar(temporary))
                for temporary, arg in zip(temporaries, args):
                    result = substitute_individual(result, temporary, arg)
                return result
            case PredVarApp():
                return node
            case Arrow(premise, conclusion):
                return Arrow(go(premise), go(conclusion))
            case ForallInd(bound, body):
                if bound in outside_individuals:
                    renamed = _fresh(bound, outside_individuals | _all_names(body))
                    body = substitute_individual(body, bound, FVar(renamed))
                    bound = renamed
                return ForallInd(bound, go(body))
            case ForallPred(bound, arity, body):
                if bound == var:
                    return node
                if bound in outside_predicates:
                    renamed = _fresh(bound, outside_predicates | _all_names(body) | {var})
                    body = _rename_predicate(body, bound, renamed)
                    bound = renamed
                return ForallPred(bound, arity, go(body))
        raise TypeError(node)

    return go(formula)


def alpha_equivalent(left: Formula, right: Formula) -> bool:
    def same(a: Formula, b: Formula, ind: dict, ind_back: dict, pred: dict, pred_back: dict) -> bool:
        match a, b:
            case PredVarApp(x, xs), PredVarApp(y, ys):
                if pred.get(x, x) != y or pred_back.get(y, y) != x or len(xs) != len(ys):
                    return False
                return all(
                    substitute_term(s, {k: FVar(v) for k, v in ind.items()}) == t
                    and substitute_term(t, {k: FVar(v) for k, v in ind_back.items()}) == s
                    for s, t in zip(xs, ys)
                )
            case Arrow(p, c), Arrow(q, d):
                return same(p, q, ind, ind_back, pred, pred_back) and same(c, d, ind, ind_back, pred, pred_back)
            case ForallInd(x, p), ForallInd(y, q):
                return same(p, q, {**ind, x: y}, {**ind_back, y: x}, pred, pred_back)
            case ForallPred(x, m, p), ForallPred(y, n, q):
                return m == n and same(p, q, ind, ind_back, {**pred, x: y}, {**pred_back, y: x})
        return False

    return same(left, right, {}, {}, {}, {})


# -- derivations ---------------------------------------------------------------


@dataclass(frozen=True)
class Axiom:
    name: str
    formula: Formula | None = None


@dataclass(frozen=True)
class ArrowIntro:
    var: str
    premise: Formula
    body: Derivation


@dataclass(frozen=True)
class ArrowElim:
    function: Derivation
    argument: Derivation
    conclusion: Formula | None = None


@dataclass(frozen=True)
class ForallIntro:
    var: str
    body: Derivation


@dataclass(frozen=True)
class ForallElimInd:
    body: Derivation
    term: FirstOrderTerm


@dataclass(frozen=True)
class ForallElimPred:
    body: Derivation
    binders: tuple[str, ...]
    formula: Formula


@dataclass(frozen=True)
class DeclaredConstant:
    """An axiom constant such as ``cc`` used at a stated formula."""

    name: str
    formula: Formula


Derivation = Union[Axiom, ArrowIntro, ArrowElim, ForallIntro, ForallElimInd, ForallElimPred, DeclaredConstant]

Context = Sequence[tuple[str, Formula]]


def constant_term(name: str) -> CTerm:
    kind = COMBINATOR_NAMES.get(name)
    return Combinator(kind) if kind is not None else Atom(name)


def _describe(node: Derivation) -> str:
    return type(node).__name__


def check(derivation: Derivation, context: Context = ()) -> tuple[LambdaTerm, Formula]:
    """The extracted λ-term and the proved formula."""
    match derivation:
        case Axiom(name, annotation):
            for bound, formula in reversed(list(context)):
                if bound == name:
                    if annotation is not None and not alpha_equivalent(annotation, formula):
                        raise DeductionError(f"Axiom {name}: annotated {annotation} but context says {formula}")
                    return Var(name), formula
            raise DeductionError(f"Axiom {name}: not in context")
        case ArrowIntro(var, premise, body):
            check_arities(premise)
            term, conclusion = check(body, [*context, (var, premise)])
            return Abs(var, term), Arrow(premise, conclusion)
        case ArrowElim(function, argument, annotation):
            function_term, function_formula = check(function, context)
            argument_term, argument_formula = check(argument, context)
            if not isinstance(function_formula, Arrow):
                raise DeductionError(f"ArrowElim: {function_formula} is not an implication")
            if not alpha_equivalent(function_formula.premise, argument_formula):
                raise DeductionError(
                    f"ArrowElim: argument proves {argument_formula}, expected {function_formula.premise}"
                )
            conclusion = function_formula.conclusion
            if annotation is not None and not alpha_equivalent(annotation, conclusion):
                raise DeductionError(f"ArrowElim: annotated {annotation} but derived {conclusion}")
            return App(function_term, argument_term), conclusion
        case ForallIntro(var, body):
            term, formula = check(body, context)
            for name, hypothesis in context:
                if var in free_individuals(hypothesis) or var in free_predicates(hypothesis):
                    raise DeductionError(f"ForallIntro: eigenvariable {var} occurs in hypothesis {name}")
            predicates = free_predicates(formula)
            if var in predicates or (var[:1].isupper() and var not in free_individuals(formula)):
                return term, ForallPred(var, predicates.get(var, 0), formula)
            return term, ForallInd(var, formula)
        case ForallElimInd(body, fo_term):
            term, formula = check(body, context)
            if not isinstance(formula, ForallInd):
                raise DeductionError(f"ForallElimInd: {formula} is not an individual quantification")
            return term, substitute_individual(formula.body, formula.var, fo_term)
        case ForallElimPred(body, binders, replacement):
            term, formula = check(body, context)
            if not isinstance(formula, ForallPred):
                raise DeductionError(f"ForallElimPred: {formula} is not a predicate quantification")
            if formula.arity != len(binders):
                raise DeductionError(
                    f"ForallElimPred: {formula.var} has arity {formula.arity}, got {len(binders)} binders"
                )
            check_arities(replacement)
            return term, substitute_predicate(formula.body, formula.var, binders, replacement)
        case DeclaredConstant(name, formula):
            check_arities(formula)
            return Embed(constant_term(name)), formula
    raise TypeError(f"not a derivation: {derivation!r}")


def extract(derivation: Derivation, context: Context = ()) -> CTerm:
    term, _ = check(derivation, context)
    return eliminate(term)


def extract_and_run(derivation: Derivation, stack_args: Iterable[CTerm], fuel: int = DEFAULT_FUEL) -> Trace:
    return run(Process(extract(derivation), stack_of(*stack_args)), fuel)


# -- proof scripts -------------------------------------------------------------

_SEXP_TOKEN = re.compile(r"\s*(?:;[^\n]*|(\()|(\))|([^\s();]+))")


@dataclass(frozen=True)
class Symbol:
    text: str
    offset: int = field(default=0, compare=False)


def read_sexps(text: str) -> list:
    """Read every s-expression in ``text`` into nested lists of :class:`Symbol`."""
    stack: list[list] = [[]]
    openers: list[int] = []
    position = 0
    while position < len(text):
        found = _SEXP_TOKEN.match(text, position)
        if found is None or found.end() == position:
            if text[position:].strip() == "":
                break
            raise ParseError("unexpected character", text, position)
        opener, closer, atom = found.groups()
        if opener:
            openers.append(found.start(1))
            stack.append([])
        elif closer:
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", text, found.start(2))
            openers.pop()
            finished = stack.pop()
            stack[-1].append(finished)
        elif atom:
            stack[-1].append(Symbol(atom, found.start(3)))
        position = found.end()
    if len(stack) != 1:
        raise ParseError("unclosed '('", text, openers[-1])
    return stack[0]


class ScriptError(DeductionError):
    pass


def _head(expression) -> str | None:
    if isinstance(expression, list) and expression and isinstance(expression[0], Symbol):
        return expression[0].text
    return None


class ScriptReader:
    def __init__(self, functions: Mapping[str, int] | None = None) -> None:
        self.functions = dict(BUILTIN_FUNCTIONS if functions is None else functions)

    def term(self, expression) -> FirstOrderTerm:
        if isinstance(expression, Symbol):
            if self.functions.get(expression.text) == 0:
                return FApp(expression.text)
            if expression.text.isdigit():
                return self._numeral(int(expression.text))
            return FVar(expression.text)
        if not expression or not isinstance(expression[0], Symbol):
            raise ScriptError(f"malformed term {expression!r}")
        symbol = expression[0].text
        if symbol not in self.functions:
            raise ScriptError(f"undeclared function symbol {symbol!r}")
        args = tuple(self.term(arg) for arg in expression[1:])
        if len(args) != self.functions[symbol]:
            raise ScriptError(f"{symbol} takes {self.functions[symbol]} arguments, got {len(args)}")
        return FApp(symbol, args)

    def _numeral(self, value: int) -> FirstOrderTerm:
        term: FirstOrderTerm = FApp("0")
        for _ in range(value):
            term = FApp("s", (term,))
        return term

    def formula(self, expression) -> Formula:
        if isinstance(expression, Symbol):
            match expression.text:
                case "bot" | "⊥":
                    return BOTTOM
                case "top" | "⊤":
                    return TOP
            return PredVarApp(expression.text)
        head = _head(expression)
        if head is None:
            raise ScriptError(f"malformed formula {expression!r}")
        rest = expression[1:]
        match head:
            case "->" | "→":
                if len(rest) < 2:
                    raise ScriptError("-> needs at least two formulas")
                return arrows(*(self.formula(part) for part in rest))
            case "and" | "∧":
                if len(rest) != 2:
                    raise ScriptError("and takes two formulas")
                return conjunction(self.formula(rest[0]), self.formula(rest[1]))
            case "not" | "¬":
                if len(rest) != 1:
                    raise ScriptError("not takes one formula")
                return negation(self.formula(rest[0]))
            case "all" | "∀":
                if len(rest) != 2:
                    raise ScriptError("all takes a binder and a formula")
                binder, body = rest
                if isinstance(binder, list):
                    if len(binder) != 2 or not all(isinstance(item, Symbol) for item in binder):
                        raise ScriptError("predicate binder must be (X arity)")
                    return ForallPred(binder[0].text, int(binder[1].text), self.formula(body))
                if binder.text[:1].isupper():
                    return ForallPred(binder.text, 0, self.formula(body))
                return ForallInd(binder.text, self.formula(body))
        return PredVarApp(head, tuple(self.term(arg) for arg in rest))

    def derivation(self, expression) -> Derivation:
        head = _head(expression)
        rest = expression[1:] if head else []
        match head:
            case "axiom":
                formula = self.formula(rest[1]) if len(rest) > 1 else None
                return Axiom(self._name(rest[0]), formula)
            case "intro":
                self._arity(head, rest, 3)
                return ArrowIntro(self._name(rest[0]), self.formula(rest[1]), self.derivation(rest[2]))
            case "elim":
                if len(rest) not in (2, 3):
                    raise ScriptError("elim takes two derivations and an optional formula")
                annotation = self.formula(rest[2]) if len(rest) == 3 else None
                return ArrowElim(self.derivation(rest[0]), self.derivation(rest[1]), annotation)
            case "gen":
                self._arity(head, rest, 2)
                return ForallIntro(self._name(rest[0]), self.derivation(rest[1]))
            case "inst":
                self._arity(head, rest, 2)
                return ForallElimInd(self.derivation(rest[0]), self.term(rest[1]))
            case "inst-pred":
                self._arity(head, rest, 3)
                if not isinstance(rest[1], list):
                    raise ScriptError("inst-pred binders must be a list")
                binders = tuple(self._name(item) for item in rest[1])
                return ForallElimPred(self.derivation(rest[0]), binders, self.formula(rest[2]))
            case "const":
                self._arity(head, rest, 2)
                return DeclaredConstant(self._name(rest[0]), self.formula(rest[1]))
        raise ScriptError(f"unknown derivation node {expression!r}")

    @staticmethod
    def _name(expression) -> str:
        if not isinstance(expression, Symbol):
            raise ScriptError(f"expected a name, got {expression!r}")
        return expression.text

    @staticmethod
    def _arity(head: str, rest: list, count: int) -> None:
        if len(rest) != count:
            raise ScriptError(f"{head} takes {count} arguments, got {len(rest)}")


@dataclass(frozen=True)
class Theorem:
    statement: Formula
    derivation: Derivation


def parse_script(text: str) -> list[Theorem]:
    """Read ``(function f k)`` declarations and ``(theorem F D)`` entries."""
    reader = ScriptReader()
    theorems = []
    for expression in read_sexps(text):
        head = _head(expression)
        if head == "function":
            if len(expression) != 3:
                raise ScriptError("function takes a name and an arity")
            reader.functions[ScriptReader._name(expression[1])] = int(expression[2].text)
        elif head == "theorem":
            if len(expression) != 3:
                raise ScriptError("theorem takes a formula and a derivation")
            theorems.append(Theorem(reader.formula(expression[1]), reader.derivation(expression[2])))
        else:
            raise ScriptError(f"unexpected top-level form {expression!r}")
    return theorems


def parse_derivation(text: str) -> Derivation:
    expressions = read_sexps(text)
    if len(expressions) != 1:
        raise ScriptError("expected exactly one derivation")
    return ScriptReader().derivation(expressions[0])


def parse_formula(text: str) -> Formula:
    expressions = read_sexps(text)
    if len(expressions) != 1:
        raise ScriptError("expected exactly one formula")
    return ScriptReader().formula(expressions[0])


def check_theorem(theorem: Theorem) -> LambdaTerm:
    """Check the derivation and that it proves the stated formula."""
    term, formula = check(theorem.derivation)
    if not alpha_equivalent(formula, theorem.statement):
        raise DeductionError(f"derivation proves {formula}, not the stated {theorem.statement}")
    return term
