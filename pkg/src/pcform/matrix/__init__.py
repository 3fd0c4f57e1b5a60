from .core import (
    ColumnMatrix,
    DegreePartition,
    GradedDifferential,
    Permutation,
    is_block_diagonal,
    is_block_superdiagonal,
    is_differential,
    upper_left,
)
from .predicates import (
    is_almost_jordan,
    is_boolean,
    is_column_reduced,
    is_jordan,
    is_quasi_monomial,
    is_triangular_invertible,
    is_unitriangular,
    is_upper_triangular,
)
from .reduction import (
    NotAlmostJordanError,
    ReductionResult,
    VerificationError,
    build_vhat,
    column_pivot,
    column_reduce,
    jordan_permutation,
    normalization_factors,
    normalize,
    pivot_matrix,
    standard_reduction,
)

__all__ = [
    "ColumnMatrix",
    "DegreePartition",
    "GradedDifferential",
    "NotAlmostJordanError",
    "Permutation",
    "ReductionResult",
    "VerificationError",
    "build_vhat",
    "column_pivot",
    "column_reduce",
    "is_almost_jordan",
    "is_block_diagonal",
    "is_block_superdiagonal",
    "is_boolean",
    "is_column_reduced",
    "is_differential",
    "is_jordan",
    "is_quasi_monomial",
    "is_triangular_invertible",
    "is_unitriangular",
    "is_upper_triangular",
    "jordan_permutation",
    "normalization_factors",
    "normalize",
    "pivot_matrix",
    "standard_reduction",
    "upper_left",
]
