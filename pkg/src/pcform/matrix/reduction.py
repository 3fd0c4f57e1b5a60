"""Column reduction and the persistence canonical form ``D = B Dcanon B^-1``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..field import FieldSpec, RawValue
from .core import (
    Column,
    ColumnMatrix,
    DegreePartition,
    GradedDifferential,
    Permutation,
    is_block_diagonal,
    is_block_superdiagonal,
    is_differential,
)
from .predicates import (
    is_boolean,
    is_column_reduced,
    is_jordan,
    is_quasi_monomial,
    is_triangular_invertible,
    is_unitriangular,
)

STRATEGIES = ("sweep", "leftlook")
DENSE_LIMIT = 1_000_000  # matrix entries; above this "auto" takes the sparse path


class VerificationError(RuntimeError):
    """A result invariant failed.  Always an implementation bug."""


class NotAlmostJordanError(ValueError):
    pass


def column_pivot(m: ColumnMatrix, k: int) -> int | None:
    return m.pivot(k)


def _axpy(field: FieldSpec, dst: Column, coef: RawValue, src: Column) -> None:
    """``dst += coef * src`` dropping cancelled entries."""
    for i, v in src.items():
        x = field.add(dst.get(i, field.zero), field.mul(coef, v))
        if x:
            dst[i] = x
        else:
            dst.pop(i, None)


def _sweep_sparse(m: ColumnMatrix) -> tuple[list[Column], list[Column]]:
    f = m.field
    r = m.copy_columns()
    v: list[Column] = [{k: f.one} for k in range(m.cols)]
    for j in range(m.cols):
        col = r[j]
        if not col:
            continue
        piv = max(col)
        pinv = f.inv(col[piv])
        for k in range(j + 1, m.cols):
            x = r[k].get(piv)
            if x is None:
                continue
            coef = f.neg(f.mul(x, pinv))
            _axpy(f, r[k], coef, col)
            _axpy(f, v[k], coef, v[j])
    return r, v


def _sweep_kernel(m: ColumnMatrix) -> tuple[list[Column], list[Column]]:
    p = m.field.p
    n, c = m.rows, m.cols
    rt = np.zeros((c, n), dtype=np.int64)
    for i, j, x in m.entries():
        rt[j, i] = x
    vt = np.eye(c, dtype=np.int64)
    kernels.sweep_reduce_modp(rt, vt, p)
    return _from_rows(rt), _from_rows(vt)


def _from_rows(arr: np.ndarray) -> list[Column]:
    out = []
    for row in arr:
        nz = np.flatnonzero(row)
        out.append({int(i): int(row[i]) for i in nz})
    return out


def _leftlook_sparse(m: ColumnMatrix) -> tuple[list[Column], list[Column]]:
    # classic persistence reduction: clear a pivot clash with an earlier column
    f = m.field
    r = m.copy_columns()
    v: list[Column] = [{k: f.one} for k in range(m.cols)]
    owner: dict[int, int] = {}
    for j in range(m.cols):
        col = r[j]
        while col:
            piv = max(col)
            i = owner.get(piv)
            if i is None:
                owner[piv] = j
                break
            coef = f.neg(f.div(col[piv], r[i][piv]))
            _axpy(f, col, coef, r[i])
            _axpy(f, v[j], coef, v[i])
    return r, v


def column_reduce(m: ColumnMatrix, strategy: str = "sweep", backend: str = "auto") -> tuple[ColumnMatrix, ColumnMatrix]:
    """Return ``(R, V)`` with ``R = M V`` column-reduced and ``V`` unitriangular.

    ``strategy="sweep"`` is the deterministic left-to-right pass in which
    every nonzero column clears the entries of its pivot row in all columns
    to its right.  ``"leftlook"`` is the usual persistence reduction that
    subtracts earlier columns until pivots are distinct; it yields a
    different ``R`` but the same pivot positions.

    ``backend`` applies to the sweep over Z/p: ``"kernel"`` uses the dense
    compiled (or numpy) kernel, ``"sparse"`` the dict-based pure-Python
    path, ``"auto"`` the kernel for prime fields up to ``DENSE_LIMIT``
    entries (the dense arrays cost memory and lose to sparsity beyond that).
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if backend not in ("auto", "kernel", "sparse"):
        raise ValueError(f"unknown backend {backend!r}")
    if strategy == "leftlook":
        r, v = _leftlook_sparse(m)
    elif m.field.p is not None and (backend == "kernel" or (backend == "auto" and m.rows * m.cols <= DENSE_LIMIT)):
        r, v = _sweep_kernel(m)
    else:
        if backend == "kernel":
            raise ValueError("the dense kernel only supports prime fields")
        r, v = _sweep_sparse(m)
    f = m.field
    return ColumnMatrix._wrap(m.rows, m.cols, f, r), ColumnMatrix._wrap(m.cols, m.cols, f, v)


def pivot_matrix(r: ColumnMatrix) -> ColumnMatrix:
    """Replace each column pivot of a column-reduced matrix by 1, all else by 0."""
    if not is_column_reduced(r):
        raise ValueError("pivot matrix requires a column-reduced matrix")
    one = r.field.one
    cols = []
    for k in range(r.cols):
        piv = r.pivot(k)
        cols.append({} if piv is None else {piv: one})
    return ColumnMatrix._wrap(r.rows, r.cols, r.field, cols)


def build_vhat(r: ColumnMatrix, v: ColumnMatrix) -> ColumnMatrix:
    """Column ``k`` is the column of ``R`` pivoting in row ``k``, else column ``k`` of ``V``."""
    if r.rows != v.cols:
        raise ValueError("V-hat needs a square R")
    by_pivot = {}
    for k in range(r.cols):
        piv = r.pivot(k)
        if piv is not None:
            by_pivot[piv] = k
    cols = []
    for k in range(v.cols):
        src = r.column_dict(by_pivot[k]) if k in by_pivot else v.column_dict(k)
        cols.append(dict(src))
    return ColumnMatrix._wrap(v.rows, v.cols, v.field, cols)


def normalization_factors(vhat: ColumnMatrix, dcanon: ColumnMatrix) -> list[RawValue]:
    """Diagonal of ``T`` such that ``Vhat T`` is normalized and still conjugates to ``Dcanon``.

    Zero columns ``j`` of ``Dcanon`` get ``1 / Vhat[j, j]``; a nonzero column
    ``k`` pivoting in row ``j`` copies the factor of ``j``.
    """
    f = vhat.field
    n = vhat.cols
    t: list[RawValue] = [f.one] * n
    for j in range(n):
        if not dcanon.column_dict(j):
            d = vhat.column_dict(j).get(j)
            if not d:
                raise VerificationError(f"zero diagonal entry at column {j + 1} of V-hat")
            t[j] = f.inv(d)
    for k in range(n):
        col = dcanon.column_dict(k)
        if col:
            (j,) = col
            t[k] = t[j]
    return t


def normalize(vhat: ColumnMatrix, dcanon: ColumnMatrix) -> ColumnMatrix:
    return vhat.scale_columns(normalization_factors(vhat, dcanon))


def jordan_permutation(dcanon: ColumnMatrix) -> Permutation:
    """Order that turns an almost-Jordan matrix into Jordan form.

    Indices are scanned ascending: a row holding a 1 in column ``k`` emits
    itself followed by ``k``; an index with zero row and column is emitted
    alone.  Destroyer columns are emitted with their creator.
    """
    m = dcanon
    if not m.is_square:
        raise NotAlmostJordanError("matrix is not square")
    if not (is_boolean(m) and is_quasi_monomial(m)):
        raise NotAlmostJordanError("matrix is not Boolean quasi-monomial")
    partner = {}
    for i, j, _ in m.entries():
        partner[i] = j
    if any(j in partner for j in partner.values()):
        raise NotAlmostJordanError("matrix does not square to zero")
    destroyers = set(partner.values())
    order: list[int] = []
    for j in range(m.rows):
        if j in partner:
            order += [j, partner[j]]
        elif j not in destroyers:
            order.append(j)
    perm = Permutation(tuple(order))
    if not is_jordan(m.conjugate_by_permutation(perm.image)):
        raise NotAlmostJordanError("conjugated matrix is not Jordan")
    return perm


@dataclass(frozen=True, eq=False)
class ReductionResult:
    D: ColumnMatrix
    R: ColumnMatrix
    V: ColumnMatrix
    Vhat: ColumnMatrix
    Dcanon: ColumnMatrix
    T: tuple
    B: ColumnMatrix
    P: Permutation
    partition: DegreePartition | None = None

    def failed_invariants(self) -> list[str]:
        d, f = self.D, self.D.field
        bad = []

        def check(name, ok):
            if not ok:
                bad.append(name)

        check("D V = R", d @ self.V == self.R)
        check("D Vhat = R", d @ self.Vhat == self.R)
        check("Vhat Dcanon = R", self.Vhat @ self.Dcanon == self.R)
        check("D B = B Dcanon", d @ self.B == self.B @ self.Dcanon)
        check("R column-reduced", is_column_reduced(self.R))
        check("V unitriangular", is_unitriangular(self.V))
        check("Vhat triangular", is_triangular_invertible(self.Vhat))
        check("B triangular", is_triangular_invertible(self.B))
        check("Dcanon Boolean quasi-monomial", is_boolean(self.Dcanon) and is_quasi_monomial(self.Dcanon))
        check("Dcanon differential", is_differential(self.Dcanon))
        check("P Jordan", is_jordan(self.Dcanon.conjugate_by_permutation(self.P.image)))
        check(
            "B normalized",
            all(
                self.B.column_dict(j).get(j) == f.one
                for j in range(self.B.cols)
                if not self.Dcanon.column_dict(j)
            ),
        )
        if self.partition is not None:
            for name in ("V", "Vhat", "B"):
                check(f"{name} block-diagonal", is_block_diagonal(getattr(self, name), self.partition))
            check("Dcanon block-superdiagonal", is_block_superdiagonal(self.Dcanon, self.partition))
        return bad


def standard_reduction(
    d: GradedDifferential | ColumnMatrix, strategy: str = "sweep", backend: str = "auto", verify: bool = True
) -> ReductionResult:
    """Compute ``R, V, Vhat, Dcanon, B, P`` for a differential matrix.

    A plain :class:`ColumnMatrix` is treated as ungraded; it must be square
    and square to zero.  With ``verify`` every result invariant is checked
    by exact multiplication and :class:`VerificationError` is raised on
    failure.
    """
    if isinstance(d, GradedDifferential):
        m, partition = d.matrix, d.partition
    else:
        m, partition = d, None
        if not is_differential(m):
            raise ValueError("input is not a square matrix with D^2 = 0")
    r, v = column_reduce(m, strategy=strategy, backend=backend)
    vhat = build_vhat(r, v)
    dcanon = pivot_matrix(r)
    t = normalization_factors(vhat, dcanon)
    b = vhat.scale_columns(t)
    try:
        p = jordan_permutation(dcanon)
    except NotAlmostJordanError as exc:
        raise VerificationError(f"pivot matrix is not almost-Jordan: {exc}") from exc
    result = ReductionResult(m, r, v, vhat, dcanon, tuple(t), b, p, partition)
    if verify:
        bad = result.failed_invariants()
        if bad:
            raise VerificationError("reduction invariants failed: " + ", ".join(bad))
    return result
