"""Random generators shared by the test modules."""

from __future__ import annotations

import random

from pcform.complex import FilteredComplex
from pcform.field import FieldSpec
from pcform.ingest import PointCloud, vietoris_rips
from pcform.matrix import ColumnMatrix, DegreePartition, GradedDifferential


def dense_inverse(a, field: FieldSpec):
    """Gauss-Jordan inverse of a dense square matrix, or None if singular."""
    n = len(a)
    m = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        s = next((i for i in range(c, n) if m[i][c]), None)
        if s is None:
            return None
        m[c], m[s] = m[s], m[c]
        inv = field.inv(m[c][c])
        m[c] = [field.mul(inv, x) for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                q = m[i][c]
                m[i] = [field.sub(x, field.mul(q, y)) for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def random_block_diagonal(rng: random.Random, part: DegreePartition, field: FieldSpec, unipotent=False, triangular=False):
    """Random invertible block-diagonal matrix and its inverse (both dense).

    ``unipotent`` makes each block upper unitriangular; ``triangular`` makes it
    upper triangular with a random nonzero diagonal.
    """
    n = part.size
    while True:
        b = [[field.zero] * n for _ in range(n)]
        for lo, hi in _ranges(part):
            for i in range(lo, hi):
                for j in range(lo, hi):
                    if unipotent or triangular:
                        if i == j:
                            b[i][j] = field.random_nonzero(rng) if triangular else field.one
                        elif i < j:
                            b[i][j] = field.random_element(rng)
                    else:
                        b[i][j] = field.random_element(rng)
        inv = dense_inverse(b, field)
        if inv is not None:
            return b, inv


def _ranges(part: DegreePartition):
    lo = 0
    for _, size in part.blocks:
        yield lo, lo + size
        lo += size


def _matmul(a, b, field):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[field.zero] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            x = a[i][t]
            if x:
                row = b[t]
                for j in range(m):
                    if row[j]:
                        out[i][j] = field.add(out[i][j], field.mul(x, row[j]))
    return out


def random_partition(rng: random.Random, max_size: int = 12) -> DegreePartition:
    while True:
        blocks = [rng.randint(0, 4) for _ in range(rng.randint(1, 4))]
        if 0 < sum(blocks) <= max_size and blocks[0] > 0:
            return DegreePartition(tuple((n, s) for n, s in enumerate(blocks) if s))


def random_graded_differential(rng: random.Random, field: FieldSpec, max_size: int = 12) -> GradedDifferential:
    """``X J X^-1`` for random Jordan-type ``J`` and random invertible block-diagonal ``X``."""
    part = random_partition(rng, max_size)
    n = part.size
    starts = dict((deg, lo) for (deg, _), (lo, _) in zip(part.blocks, _ranges(part)))
    sizes = dict(part.blocks)
    j = [[field.zero] * n for _ in range(n)]
    used = set()
    for deg in sorted(sizes):
        if deg + 1 not in sizes:
            continue
        lows = [i for i in range(starts[deg], starts[deg] + sizes[deg]) if i not in used]
        highs = list(range(starts[deg + 1], starts[deg + 1] + sizes[deg + 1]))
        rng.shuffle(lows)
        rng.shuffle(highs)
        for a, b in zip(lows, highs[: rng.randint(0, len(highs))]):
            j[a][b] = field.random_nonzero(rng)
            used.update((a, b))
    x, xinv = random_block_diagonal(rng, part, field)
    d = _matmul(_matmul(x, j, field), xinv, field)
    return GradedDifferential(ColumnMatrix.from_dense(d, field, cols=n), part)


def conjugate(d: ColumnMatrix, b, binv) -> ColumnMatrix:
    """``b^-1 d b`` for dense ``b`` with known inverse."""
    f = d.field
    out = _matmul(_matmul(binv, d.to_dense(), f), b, f)
    return ColumnMatrix.from_dense(out, f, cols=d.cols)


def random_points(rng: random.Random, max_points: int = 10, grid: int = 4) -> PointCloud:
    """Small integer grids so that distance ties are common."""
    k = rng.randint(1, max_points)
    return PointCloud(tuple((rng.randint(0, grid), rng.randint(0, grid)) for _ in range(k)))


def random_rips(rng: random.Random, max_points: int = 10, max_dim: int = 2) -> FilteredComplex:
    pc = random_points(rng, max_points)
    radius = rng.choice([None, 1, 2, 3])
    return vietoris_rips(pc, rng.randint(1, max_dim), radius)


ACCEPTANCE: list[str] = []


def report(number: int, title: str, ok: bool, detail: str = "") -> None:
    """Record and print one pass/fail line for an acceptance criterion."""
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line
