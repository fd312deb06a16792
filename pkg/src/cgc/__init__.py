"""Conjugacy invariants and class-algebra structure constants for S_n, GL_n(q)
and Sp_2n(q) over small finite fields."""

from .gf import GF, field, parse_field
from .poly import Poly
from .combin import PartitionFn, SymplecticFn, modify, complete, ncomplete
from .classify import classify, build_rep, refl_length
from .center import structure_constant, product_expand

__version__ = "0.1.0"

__all__ = ["GF", "field", "parse_field", "Poly", "PartitionFn", "SymplecticFn", "modify",
           "complete", "ncomplete", "classify", "build_rep", "refl_length",
           "structure_constant", "product_expand"]
