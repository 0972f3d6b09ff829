"""Exact arithmetic toolkit for idempotent matrices.

The subpackages build on each other: ``rings`` (scalars), ``matrices``
(dense exact matrices and linear algebra), ``idempotent`` (verified
idempotents and constructors), ``poset`` (the order on idempotents over
prime fields), ``smith`` (Smith normal form and factorizations), and
``groebner`` (ideals and variety dimension).
"""

from .errors import (
    BudgetExceeded,
    ConstraintViolated,
    DimensionMismatch,
    IdemError,
    InvalidArgument,
    NotComparable,
    NotIdempotent,
    ParseError,
)
from .groebner import MonomialOrder, buchberger, idempotent_ideal, variety_dimension
from .idempotent import Idempotent, diagonalize, is_idempotent, kron_idempotent
from .matrices import Matrix, determinant, invert, kronecker, rank
from .poset import build_hasse, covers, enumerate_idempotents, leq
from .rings import GF, QQ, ZZ, MultiPoly, UniPoly, gaussian_binomial, idempotent_count, ring_from_name
from .smith import idempotent_snf_factor, smith_normal_form
from .textio import format_matrix, parse_matrix

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "ConstraintViolated", "DimensionMismatch", "IdemError", "InvalidArgument",
    "NotComparable", "NotIdempotent", "ParseError",
    "MonomialOrder", "buchberger", "idempotent_ideal", "variety_dimension",
    "Idempotent", "diagonalize", "is_idempotent", "kron_idempotent",
    "Matrix", "determinant", "invert", "kronecker", "rank",
    "build_hasse", "covers", "enumerate_idempotents", "leq",
    "GF", "QQ", "ZZ", "MultiPoly", "UniPoly", "gaussian_binomial", "idempotent_count", "ring_from_name",
    "idempotent_snf_factor", "smith_normal_form",
    "format_matrix", "parse_matrix",
]
