"""Structural predicates on exact matrices."""

from __future__ import annotations

from .core import ColumnMatrix, is_differential


def is_boolean(m: ColumnMatrix) -> bool:
    one = m.field.one
    return all(v == one for _, _, v in m.entries())


def is_quasi_monomial(m: ColumnMatrix) -> bool:
    """At most one nonzero entry in every row and every column."""
    seen_rows = set()
    for j in range(m.cols):
        c = m.column_dict(j)
        if len(c) > 1:
            return False
        for i in c:
            if i in seen_rows:
                return False
            seen_rows.add(i)
    return True


def is_upper_triangular(m: ColumnMatrix) -> bool:
    return m.is_square and all(i <= j for i, j, _ in m.entries())


def is_triangular_invertible(m: ColumnMatrix) -> bool:
    if not is_upper_triangular(m):
        return False
    return all(m.column_dict(j).get(j) for j in range(m.cols))


def is_unitriangular(m: ColumnMatrix) -> bool:
    one = m.field.one
    return is_upper_triangular(m) and all(m.column_dict(j).get(j) == one for j in range(m.cols))


def is_column_reduced(m: ColumnMatrix) -> bool:
    """No two columns share a pivot row."""
    seen = set()
    for j in range(m.cols):
        piv = m.pivot(j)
        if piv is None:
            continue
        if piv in seen:
            return False
        seen.add(piv)
    return True


def is_jordan(m: ColumnMatrix) -> bool:
    """Block sum of 1x1 zero blocks and 2x2 blocks ``[[0, 1], [0, 0]]``."""
    if not m.is_square:
        return False
    one = m.field.one
    used = set()
    for i, j, v in m.entries():
        if v != one or j != i + 1 or i in used or j in used:
            return False
        used.update((i, j))
    return True


def is_almost_jordan(m: ColumnMatrix) -> bool:
    from .reduction import NotAlmostJordanError, jordan_permutation

    try:
        jordan_permutation(m)
    except NotAlmostJordanError:
        return False
    return True


__all__ = [
    "is_almost_jordan",
    "is_boolean",
    "is_column_reduced",
    "is_differential",
    "is_jordan",
    "is_quasi_monomial",
    "is_triangular_invertible",
    "is_unitriangular",
    "is_upper_triangular",
]
