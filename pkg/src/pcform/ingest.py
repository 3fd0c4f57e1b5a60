"""Point clouds and Vietoris-Rips filtrations with exact level assignment."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .complex import Cell, FilteredComplex


class PointCloudError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class PointCloud:
    points: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        pts = tuple(tuple(Fraction(x) for x in p) for p in self.points)
        if pts and len({len(p) for p in pts}) != 1:
            raise PointCloudError("points have different dimensions")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0


_SPLIT = re.compile(r"[,\s]+")


def parse_points(text: str) -> PointCloud:
    """Rows of whitespace- or comma-separated decimals; ``#`` starts a comment.

    Coordinates are read as exact rationals so distance ties are exact.
    """
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = [t for t in _SPLIT.split(line) if t]
        try:
            row = tuple(Fraction(t) for t in tokens)
        except (ValueError, ZeroDivisionError):
            raise PointCloudError(f"non-numeric token in {line!r}", lineno) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise PointCloudError(f"expected {width} coordinates, got {len(row)}", lineno)
        rows.append(row)
    return PointCloud(tuple(rows))


def squared_distances(pc: PointCloud) -> list[list[Fraction]]:
    pts = pc.points
    n = len(pts)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        d = sum((a - b) ** 2 for a, b in zip(pts[i], pts[j]))
        out[i][j] = out[j][i] = d
    return out


def vietoris_rips_from_distances(
    sqdist: Sequence[Sequence], max_dim: int, max_radius=None
) -> FilteredComplex:
    """Rips filtration from a symmetric matrix of squared distances.

    A simplex enters once every pairwise distance is at most twice the
    radius; its birth is half its largest edge.  Distinct births become
    levels 1, 2, ... in increasing order (all vertices share level 1).
    """
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    n = len(sqdist)
    limit = None if max_radius is None else 4 * Fraction(max_radius) ** 2
    sq = [[Fraction(x) for x in row] for row in sqdist]
    # key: squared diameter (exact)
    cells: list[tuple[tuple[int, ...], Fraction]] = [((v,), Fraction(0)) for v in range(n)]
    frontier = [((v,), Fraction(0)) for v in range(n)]
    for _ in range(max_dim):
        nxt = []
        for s, diam in frontier:
            for w in range(s[-1] + 1, n):
                dw = max(sq[v][w] for v in s)
                if limit is not None and dw > limit:
                    continue
                nxt.append((s + (w,), max(diam, dw)))
        cells.extend(nxt)
        frontier = nxt
    rank = {d: i + 1 for i, d in enumerate(sorted({d for _, d in cells}))}
    return FilteredComplex(tuple(Cell(s, rank[d], _half_sqrt(d)) for s, d in cells))


def _half_sqrt(sq: Fraction) -> float:
    return math.sqrt(sq) / 2


def vietoris_rips(pc: PointCloud, max_dim: int, max_radius=None) -> FilteredComplex:
    return vietoris_rips_from_distances(squared_distances(pc), max_dim, max_radius)
