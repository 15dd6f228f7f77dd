"""Exact computations for nilpotent Lie algebras with complex structures."""

from .errors import NilcxError, MathematicalNegative
from .lie import LieAlgebra, central_series, check_jacobi, fingerprint
from .linalg import Subspace
from .notation import parse_salamon, parse_extended, parse_algebra_text, serialize_salamon
from .complex_structure import AlmostComplexStructure, classify, is_integrable

__all__ = [
    "NilcxError", "MathematicalNegative", "LieAlgebra", "central_series", "check_jacobi", "fingerprint",
    "Subspace", "parse_salamon", "parse_extended", "parse_algebra_text", "serialize_salamon",
    "AlmostComplexStructure", "classify", "is_integrable",
]

__version__ = "0.1.0"
