"""Library terms: numerals, storage, recursion and the named catalogue."""

from ..numerals import numeral
from .catalogue import catalogue, lookup
from .contracts import Case, Contract, NamedTerm
from .core import dispatchers, fixpoint, storage
from .recursion import PROGRAMS, compile_program, compile_stored, evaluate

__all__ = [
    "PROGRAMS",
    "Case",
    "Contract",
    "NamedTerm",
    "catalogue",
    "compile_program",
    "compile_stored",
    "dispatchers",
    "evaluate",
    "fixpoint",
    "lookup",
    "numeral",
    "storage",
]
