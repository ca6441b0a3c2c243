"""Braided self-similar groups, cloning systems and Thompson-like groups of triples."""

from __future__ import annotations

from .braid import BraidWord, Permutation, parse_braid
from .recursion import GroupWord, RecursionTable, eq_in, is_identity
from .tables import get_table
from .thompson import Triple, eq, multiply, parse_triple
from .verdict import EqVerdict

__version__ = "0.1.0"

__all__ = [
    "BraidWord", "Permutation", "parse_braid", "GroupWord", "RecursionTable", "eq_in",
    "is_identity", "get_table", "Triple", "eq", "multiply", "parse_triple", "EqVerdict",
]
