"""Exact Schur-ring computations over Z_n and Z x Z_n."""

__version__ = "0.1.0"

from .algebra import GroupAlgebraElement, GroupContext, GroupElement
from .automorphisms import AffineAut, AutSubgroup
from .cyclic import FinitePartition
from .errors import AxiomViolation, ContextMismatch, SchurLabError, WedgeCompatibilityError
from .structure import StructureConstants

__all__ = [
    "__version__",
    "AffineAut",
    "AutSubgroup",
    "AxiomViolation",
    "ContextMismatch",
    "FinitePartition",
    "GroupAlgebraElement",
    "GroupContext",
    "GroupElement",
    "SchurLabError",
    "StructureConstants",
    "WedgeCompatibilityError",
]
