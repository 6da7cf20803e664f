"""modlie: exact small modular Lie algebra toolkit over finite fields."""

from .fields import GF, FieldElement, FieldSpec, Poly, make_field, nonsquare_rep, roots_univariate

__all__ = [
    "GF",
    "FieldElement",
    "FieldSpec",
    "Poly",
    "make_field",
    "nonsquare_rep",
    "roots_univariate",
]
