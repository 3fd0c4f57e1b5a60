"""Exact persistence canonical form of filtered chain complexes."""

__version__ = "0.1.0"

from .field import GF2, QQ, FieldSpec, Scalar
from .matrix import ColumnMatrix, DegreePartition, GradedDifferential, standard_reduction
from .complex import FilteredComplex, adapted_basis, boundary_matrix, complex_from_matrix
from .pipeline import persistence

__all__ = [
    "GF2",
    "QQ",
    "ColumnMatrix",
    "DegreePartition",
    "FieldSpec",
    "FilteredComplex",
    "GradedDifferential",
    "Scalar",
    "adapted_basis",
    "boundary_matrix",
    "complex_from_matrix",
    "persistence",
    "standard_reduction",
]
