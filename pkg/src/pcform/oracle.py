"""Independent checks: Gaussian-elimination ranks, levelwise homology and an
exhaustive search for the canonical form of tiny matrices over Z/2.

Nothing here calls the column-reduction code or the boundary-matrix builder
in :mod:`pcform.complex`; agreement between the two routes is the point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterator

import numpy as np

from . import kernels
from .complex import FilteredComplex, InvalidComplexError, validate
from .field import GF2, QQ, FieldSpec
from .matrix.core import ColumnMatrix

BRUTE_FORCE_MAX = 4


class TheoremViolation(AssertionError):
    """The exhaustive search contradicted existence or uniqueness."""


def rank_gauss(m: ColumnMatrix) -> int:
    """Rank by row-echelon elimination (row swaps, elimination below the pivot)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    f = m.field
    if f.p is not None:
        a = np.zeros((m.rows, m.cols), dtype=np.int64)
        for i, j, v in m.entries():
            a[i, j] = v
        return int(kernels.rank_modp(a, f.p))
    rows = m.to_dense()
    r = 0
    for c in range(m.cols):
        s = next((i for i in range(r, m.rows) if rows[i][c]), None)
        if s is None:
            continue
        rows[r], rows[s] = rows[s], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, m.rows):
            x = rows[i][c]
            if x:
                q = x / piv
                ri, rr = rows[i], rows[r]
                for t in range(c, m.cols):
                    if rr[t]:
                        ri[t] -= q * rr[t]
        r += 1
        if r == m.rows:
            break
    return r


@dataclass
class RankProfile:
    """Per ``(degree, level)``: chain dimension, boundary rank and nullity."""

    levels: list[int]
    dims: dict = field(default_factory=dict)
    ranks: dict = field(default_factory=dict)

    def nullity(self, n: int, p: int) -> int:
        return self.dims.get((n, p), 0) - self.ranks.get((n, p), 0)

    def homology(self, n: int, p: int) -> int:
        if not self.levels or p < self.levels[0]:
            return 0
        p = max(q for q in self.levels if q <= p)
        return self.nullity(n, p) - self.ranks.get((n + 1, p), 0)


def _boundary_block(cols: list[tuple], rows: list[tuple], field: FieldSpec) -> ColumnMatrix:
    where = {s: i for i, s in enumerate(rows)}
    entries = []
    for j, s in enumerate(cols):
        for m in range(len(s)):
            face = s[:m] + s[m + 1 :]
            entries.append((where[face], j, -1 if m % 2 else 1))
    return ColumnMatrix.from_entries(len(rows), len(cols), entries, field)


def homology_dims(fc: FilteredComplex, field: FieldSpec = QQ) -> RankProfile:
    bad = validate(fc)
    if bad:
        raise InvalidComplexError(bad)
    levels = fc.levels()
    prof = RankProfile(levels)
    top = fc.max_degree()
    for p in levels:
        by_degree: dict[int, list[tuple]] = {}
        for c in fc.cells:
            if c.level <= p:
                by_degree.setdefault(c.degree, []).append(c.vertices)
        for n in range(0, top + 1):
            cn = sorted(by_degree.get(n, []))
            prof.dims[(n, p)] = len(cn)
            if n == 0 or not cn:
                prof.ranks[(n, p)] = 0
                continue
            below = sorted(by_degree.get(n - 1, []))
            prof.ranks[(n, p)] = rank_gauss(_boundary_block(cn, below, field))
    return prof


def levelwise_homology(d: ColumnMatrix, degrees: list[int], levels: list[int]) -> RankProfile:
    """Homology of the filtered complex given by a differential and per-index degree/level."""
    prof = RankProfile(sorted(set(levels)))
    for p in prof.levels:
        alive = [i for i in range(d.rows) if levels[i] <= p]
        for n in sorted(set(degrees)):
            cols = [i for i in alive if degrees[i] == n]
            rows = [i for i in alive if degrees[i] == n - 1]
            prof.dims[(n, p)] = len(cols)
            prof.ranks[(n, p)] = rank_gauss(d.submatrix(rows, cols)) if rows and cols else 0
    return prof


# exhaustive search over Z/2 -------------------------------------------------
# Matrices are tuples of row bitmasks: bit j of row i is entry (i, j).


def _mul2(a, b):
    out = []
    for row in a:
        acc, k = 0, 0
        while row:
            if row & 1:
                acc ^= b[k]
            row >>= 1
            k += 1
        out.append(acc)
    return tuple(out)


def _inv_unitriangular2(b):
    # back substitution: row i of the inverse is e_i minus b[i] (off diagonal) times later rows
    n = len(b)
    x = [0] * n
    for i in range(n - 1, -1, -1):
        acc = 1 << i
        rest = b[i] & ~(1 << i)
        for k in range(i + 1, n):
            if rest >> k & 1:
                acc ^= x[k]
        x[i] = acc
    return tuple(x)


def _is_jordan_dense(a) -> bool:
    used = set()
    for i, row in enumerate(a):
        for j in range(len(a)):
            if row >> j & 1:
                if j != i + 1 or i in used or j in used:
                    return False
                used.update((i, j))
    return True


def _quasi_monomial2(a) -> bool:
    cols = 0
    for row in a:
        if row & (row - 1) or row & cols:
            return False
        cols |= row
    return True


def _permuted(a, pi):
    n = len(a)
    return tuple(sum(((a[pi[i]] >> pi[j]) & 1) << j for j in range(n)) for i in range(n))


def _almost_jordan_dense(a) -> bool:
    # quasi-monomial is necessary and cheap; the permutation search decides
    if not _quasi_monomial2(a):
        return False
    return any(_is_jordan_dense(_permuted(a, pi)) for pi in permutations(range(len(a))))


def unitriangular_matrices2(m: int) -> Iterator[tuple]:
    slots = [(i, j) for i in range(m) for j in range(i + 1, m)]
    for bits in product((0, 1), repeat=len(slots)):
        b = [1 << i for i in range(m)]
        for (i, j), x in zip(slots, bits):
            b[i] |= x << j
        yield tuple(b)


def _to_bits(d: ColumnMatrix):
    return tuple(sum((int(x) & 1) << j for j, x in enumerate(row)) for row in d.to_dense())


def _from_bits(a, m: int) -> ColumnMatrix:
    return ColumnMatrix.from_dense([[row >> j & 1 for j in range(m)] for row in a], GF2, cols=m)


def brute_force_canonical(d: ColumnMatrix) -> ColumnMatrix:
    """The unique almost-Jordan conjugate ``B^-1 D B`` over all triangular ``B``.

    Over Z/2 a triangular invertible matrix is unitriangular, so there are
    ``2^(m(m-1)/2)`` candidates.  Raises :class:`TheoremViolation` if none or
    more than one distinct conjugate is almost-Jordan.
    """
    if d.field != GF2:
        raise ValueError("brute force is only defined over Z/2")
    if not d.is_square or d.rows > BRUTE_FORCE_MAX:
        raise ValueError(f"brute force needs a square matrix of size <= {BRUTE_FORCE_MAX}")
    a = _to_bits(d)
    if any(_mul2(a, a)):
        raise ValueError("input does not square to zero")
    found = set()
    for b in unitriangular_matrices2(d.rows):
        x = _mul2(_mul2(_inv_unitriangular2(b), a), b)
        if _almost_jordan_dense(x):
            found.add(x)
    if not found:
        raise TheoremViolation("no triangular conjugate is almost-Jordan")
    if len(found) > 1:
        raise TheoremViolation(f"{len(found)} distinct almost-Jordan conjugates")
    (x,) = found
    return _from_bits(x, d.rows)


def square_zero_matrices2(m: int) -> Iterator[ColumnMatrix]:
    """Every ``m x m`` matrix over Z/2 with ``D^2 = 0``."""
    for a in product(range(1 << m), repeat=m):
        if not any(_mul2(a, a)):
            yield _from_bits(a, m)
