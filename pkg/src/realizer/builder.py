"""Build c-terms from λ-text with named ingredients.

Names free in the text are looked up in an environment whose values are
c-terms (embedded as constants), λ-terms (spliced in) or C-expressions. A
C-expression ``g`` applied to an argument, as in ``g y``, stands for the image
of ``y`` under the primitive atoms of ``g``.
"""

from __future__ import annotations

from typing import Mapping, Union

from .lambda_elim import Abs, App, Embed, LambdaTerm, Var, eliminate, lambda_free_variables, parse_lambda
from .syntax import Apply, Atom, CTerm, Process, Stack, stack_items, stack_of
from .wedge import CExpr, Primitive

Ingredient = Union[CTerm, LambdaTerm, CExpr]


class BuildError(ValueError):
    pass


def primitive_atom(primitive: Primitive) -> Atom:
    return Atom(primitive.value)


def image(cexpr: CExpr, token: CTerm) -> CTerm:
    """``(γ)τ`` as a term: primitive atoms nested in application order."""
    for primitive in cexpr:
        token = Apply(primitive_atom(primitive), token)
    return token


def _image_lambda(cexpr: CExpr, token: LambdaTerm) -> LambdaTerm:
    for primitive in cexpr:
        token = App(Embed(primitive_atom(primitive)), token)
    return token


def _is_cexpr(value) -> bool:
    return isinstance(value, tuple) and all(isinstance(item, Primitive) for item in value)


def _splice(value: Ingredient) -> LambdaTerm:
    if isinstance(value, (Var, Abs, App, Embed)):
        return value
    return Embed(value)


def resolve_names(term: LambdaTerm, environment: Mapping[str, Ingredient], bound: frozenset = frozenset()) -> LambdaTerm:
    match term:
        case Var(name):
            if name in bound:
                return term
            if name not in environment:
                raise BuildError(f"unknown name {name!r}")
            value = environment[name]
            if _is_cexpr(value):
                raise BuildError(f"C-expression {name!r} must be applied to an argument")
            return _splice(value)
        case Abs(binder, body):
            return Abs(binder, resolve_names(body, environment, bound | {binder}))
        case App(Var(name), argument) if name not in bound and _is_cexpr(environment.get(name)):
            return _image_lambda(environment[name], resolve_names(argument, environment, bound))
        case App(function, argument):
            return App(resolve_names(function, environment, bound), resolve_names(argument, environment, bound))
    return term


def build_lambda(text: str, environment: Mapping[str, Ingredient] | None = None) -> LambdaTerm:
    return resolve_names(parse_lambda(text), environment or {})


def build(text: str, environment: Mapping[str, Ingredient] | None = None) -> CTerm:
    """Compile λ-text whose free names come from ``environment``."""
    term = build_lambda(text, environment)
    leftover = lambda_free_variables(term)
    if leftover:
        raise BuildError(f"unbound names {sorted(leftover)}")
    return eliminate(term)


def instantiate(term: CTerm, realizers: Mapping[Primitive, CTerm]) -> CTerm:
    """Replace primitive atoms by concrete realizers."""
    names = {primitive.value: value for primitive, value in realizers.items()}
    match term:
        case Atom(name) if name in names:
            return names[name]
        case Apply(function, argument):
            return Apply(instantiate(function, realizers), instantiate(argument, realizers))
    return term


def instantiate_stack(stack: Stack, realizers: Mapping[Primitive, CTerm]) -> Stack:
    items, constant = stack_items(stack)
    return stack_of(*(instantiate(item, realizers) for item in items), constant=constant)


def instantiate_process(process: Process, realizers: Mapping[Primitive, CTerm]) -> Process:
    return Process(instantiate(process.head, realizers), instantiate_stack(process.stack, realizers))


__all__ = [
    "BuildError",
    "Ingredient",
    "build",
    "build_lambda",
    "image",
    "instantiate",
    "instantiate_process",
    "primitive_atom",
    "resolve_names",
]
