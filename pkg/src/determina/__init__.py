"""Certified finite-determinacy bounds for matrices over formal local rings.

The engine works over k[[x_1..x_p]] with exact rational arithmetic, reduces
every question about the formal ring to a truncated jet computation, and
certifies the answers back to the formal ring by Nakayama-style arguments.
"""

from .poly import Poly, PolyParseError, poly_parse
from .jets import JetContext, SubspaceBasis, member, span
from .ideals import CertifiedBool, Ideal
from .matrixops import PolyMatrix, Structure

__all__ = [
    "Poly",
    "PolyParseError",
    "poly_parse",
    "JetContext",
    "SubspaceBasis",
    "member",
    "span",
    "CertifiedBool",
    "Ideal",
    "PolyMatrix",
    "Structure",
]
