"""Exact Lie algebra computations over Q(i), nilpotent classification by
central extension, and realizations in the one-mode Weyl algebra."""

__version__ = "0.1.0"

from .cohomology import Cocycle, central_extension, schur_multiplier
from .classify import classify_nilpotent
from .lie import LieAlgebra, Subspace, classify_structure, validate
from .lie.isomorphism import No, Yes, isomorphic
from .outcome import Unknown
from .scalars import Scalar, format_scalar, parse_scalar
from .weyl import WeylElement, commutator, lie_closure, parse_weyl, verify_realization

__all__ = [
    "Cocycle",
    "LieAlgebra",
    "No",
    "Scalar",
    "Subspace",
    "Unknown",
    "WeylElement",
    "Yes",
    "central_extension",
    "classify_nilpotent",
    "classify_structure",
    "commutator",
    "format_scalar",
    "isomorphic",
    "lie_closure",
    "parse_scalar",
    "parse_weyl",
    "schur_multiplier",
    "validate",
    "verify_realization",
]
