"""Executable realizability machinery: a combinator machine with control and
stack introspection, a λ-to-combinator compiler, condition-threading program
transformations and a library of checked proof-like terms."""

import sys

# terms such as long slot images are deep; structural equality recurses
if sys.getrecursionlimit() < 20_000:
    sys.setrecursionlimit(20_000)

__version__ = "0.1.0"
