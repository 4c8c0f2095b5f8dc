"""Exact scalar rings, matrices and polynomials."""
from .rings import QQ, GF, FiniteField, ModRing, TruncRing, QuadField, ring_from_spec
from .laurent import LaurentPoly, SymPoly
from .unipoly import UniPoly, resultant, bezout_cofactors

__all__ = [
    "QQ", "GF", "FiniteField", "ModRing", "TruncRing", "QuadField", "ring_from_spec",
    "LaurentPoly", "SymPoly", "UniPoly", "resultant", "bezout_cofactors",
]
