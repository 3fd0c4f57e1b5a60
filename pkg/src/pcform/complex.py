"""Filtered simplicial complexes, adapted bases and boundary matrices.

Also holds the abstract filtered chain complex built from a graded
differential, whose level ``p`` complex is the ``p x p`` upper-left corner.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .field import QQ, FieldSpec
from .matrix.core import ColumnMatrix, DegreePartition, GradedDifferential, upper_left

Simplex = tuple  # strictly increasing vertex ids


class InvalidComplexError(ValueError):
    def __init__(self, violations: Sequence["Violation"]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class ComplexFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def format_simplex(s: Simplex) -> str:
    return "[" + ",".join(str(v) for v in s) + "]"


@dataclass(frozen=True)
class Cell:
    vertices: Simplex
    level: int
    birth: float | None = None

    @property
    def degree(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class Violation:
    rule: str
    cell: Simplex
    detail: str

    def __str__(self) -> str:
        return f"{self.rule}: {format_simplex(self.cell)} {self.detail}"


@dataclass(frozen=True)
class FilteredComplex:
    cells: tuple[Cell, ...]

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))

    @classmethod
    def from_levels(cls, items: Iterable[tuple[Sequence[int], int]]) -> "FilteredComplex":
        return cls(tuple(Cell(tuple(v), int(p)) for v, p in items))

    def __len__(self) -> int:
        return len(self.cells)

    def has_births(self) -> bool:
        return bool(self.cells) and all(c.birth is not None for c in self.cells)

    def levels(self) -> list[int]:
        return sorted({c.level for c in self.cells})

    def max_degree(self) -> int:
        return max((c.degree for c in self.cells), default=-1)


def faces(s: Simplex) -> list[Simplex]:
    if len(s) <= 1:
        return []
    return [s[:i] + s[i + 1 :] for i in range(len(s))]


def validate(fc: FilteredComplex) -> list[Violation]:
    """All invariant violations; empty iff the complex is valid."""
    out: list[Violation] = []
    level_of: dict[Simplex, int] = {}
    for c in fc.cells:
        s = c.vertices
        if not s:
            out.append(Violation("empty", s, "has no vertices"))
            continue
        if any(b <= a for a, b in zip(s, s[1:])) or any(v < 0 for v in s):
            out.append(Violation("vertex-order", s, "vertices must be strictly increasing non-negative ids"))
        if s in level_of:
            out.append(Violation("duplicate", s, "appears more than once"))
            continue
        level_of[s] = c.level
    for c in fc.cells:
        s = c.vertices
        for face in faces(s):
            if face not in level_of:
                out.append(Violation("face-closure", s, f"is missing face {format_simplex(face)}"))
            elif level_of[face] > c.level:
                out.append(
                    Violation(
                        "monotonicity",
                        s,
                        f"at level {c.level} has face {format_simplex(face)} at later level {level_of[face]}",
                    )
                )
    if fc.has_births():
        ordered = sorted(fc.cells, key=lambda c: (c.birth, c.level))
        for a, b in zip(ordered, ordered[1:]):
            if (a.birth == b.birth and a.level != b.level) or (a.birth < b.birth and a.level >= b.level):
                out.append(
                    Violation(
                        "birth-order",
                        b.vertices,
                        f"level {b.level} at birth {b.birth} is inconsistent with "
                        f"{format_simplex(a.vertices)} (level {a.level}, birth {a.birth})",
                    )
                )
    return out


def is_nondegenerate(fc: FilteredComplex) -> bool:
    """No two cells share both degree and level."""
    seen = set()
    for c in fc.cells:
        key = (c.degree, c.level)
        if key in seen:
            return False
        seen.add(key)
    return True


class Ordering(enum.Enum):
    DEGREE_MAJOR = "degree"
    LEVEL_MAJOR = "level"


@dataclass(frozen=True)
class BasisElement:
    index: int  # 0-based position in the adapted order
    degree: int
    level: int
    label: str
    vertices: Simplex | None = None
    birth: float | None = None

    def describe(self) -> str:
        return f"{self.label} (degree {self.degree}, level {self.level})"


@dataclass(frozen=True)
class AdaptedBasis:
    elements: tuple[BasisElement, ...]
    mode: Ordering
    order: tuple[int, ...] = ()  # position -> index into the source cell list
    partition: DegreePartition | None = field(default=None)

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, k: int) -> BasisElement:
        return self.elements[k]

    def labels(self) -> list[str]:
        return [e.label for e in self.elements]


def adapted_basis(fc: FilteredComplex, mode: Ordering | str = Ordering.DEGREE_MAJOR) -> AdaptedBasis:
    """Order cells degree-major or level-major, breaking ties lexicographically."""
    mode = Ordering(mode)
    bad = validate(fc)
    if bad:
        raise InvalidComplexError(bad)
    cells = fc.cells
    if mode is Ordering.DEGREE_MAJOR:
        key = lambda k: (cells[k].degree, cells[k].level, cells[k].vertices)  # noqa: E731
    else:
        key = lambda k: (cells[k].level, cells[k].degree, cells[k].vertices)  # noqa: E731
    order = tuple(sorted(range(len(cells)), key=key))
    elements = tuple(
        BasisElement(pos, cells[k].degree, cells[k].level, format_simplex(cells[k].vertices), cells[k].vertices, cells[k].birth)
        for pos, k in enumerate(order)
    )
    partition = None
    if mode is Ordering.DEGREE_MAJOR:
        partition = DegreePartition.from_degrees([e.degree for e in elements])
    return AdaptedBasis(elements, mode, order, partition)


def boundary_matrix(fc: FilteredComplex, basis: AdaptedBasis, field: FieldSpec = QQ) -> GradedDifferential | ColumnMatrix:
    """Signed simplicial boundary in the given basis.

    ``d[v0..vk] = sum_m (-1)^m [v0..^vm..vk]``.  Degree-major bases give a
    :class:`GradedDifferential`; level-major bases a plain matrix.
    """
    if len(basis) != len(fc.cells) or sorted(basis.order) != list(range(len(fc.cells))):
        raise ValueError("basis does not belong to this complex")
    pos = {}
    for e in basis.elements:
        if e.vertices is None:
            raise ValueError("basis element without a simplex")
        pos[e.vertices] = e.index
    plus, minus = field.one, field.neg(field.one)
    cols = []
    for e in basis.elements:
        col = {}
        for m, face in enumerate(faces(e.vertices)):
            col[pos[face]] = plus if m % 2 == 0 else minus
        cols.append(col)
    n = len(basis)
    d = ColumnMatrix._wrap(n, n, field, cols)
    if basis.mode is Ordering.DEGREE_MAJOR:
        return GradedDifferential(d, basis.partition)
    if not (d @ d).is_zero():
        raise AssertionError("boundary matrix does not square to zero")
    return d


# abstract filtered chain complexes -----------------------------------------


@dataclass(frozen=True, eq=False)
class FilteredChainComplex:
    """Generators ``g1..gm``; generator ``p`` has level ``p``.

    The level-``p`` complex is the upper-left ``p x p`` corner of the
    differential (zero for ``p <= 0``, all of it for ``p >= m``).
    """

    differential: GradedDifferential

    @property
    def size(self) -> int:
        return self.differential.dim

    def level_complex(self, p: int) -> GradedDifferential:
        return upper_left(self.differential, max(0, min(p, self.size)))

    def basis(self) -> AdaptedBasis:
        degrees = self.differential.partition.degrees()
        elements = tuple(BasisElement(k, degrees[k], k + 1, f"g{k + 1}") for k in range(self.size))
        return AdaptedBasis(elements, Ordering.DEGREE_MAJOR, tuple(range(self.size)), self.differential.partition)

    def boundary_matrix(self) -> GradedDifferential:
        return self.differential

    def is_nondegenerate(self) -> bool:
        keys = [(e.degree, e.level) for e in self.basis().elements]
        return len(set(keys)) == len(keys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FilteredChainComplex):
            return NotImplemented
        return self.differential == other.differential


def complex_from_matrix(d: GradedDifferential) -> FilteredChainComplex:
    return FilteredChainComplex(d)


# file format ----------------------------------------------------------------


def parse_complex(text: str, close: bool = False) -> FilteredComplex:
    """Read ``f v0 v1 ... vk`` records; levels are ranks of distinct ``f`` from 1.

    Missing faces are an error unless ``close`` is set, in which case each
    missing face is added at the smallest filtration value among its cofaces.
    """
    records: dict[Simplex, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 2:
            raise ComplexFormatError("record needs a filtration value and at least one vertex", lineno)
        try:
            f = Fraction(parts[0])
        except (ValueError, ZeroDivisionError):
            raise ComplexFormatError(f"bad filtration value {parts[0]!r}", lineno) from None
        try:
            verts = [int(v) for v in parts[1:]]
        except ValueError:
            raise ComplexFormatError(f"bad vertex id in {parts[1:]}", lineno) from None
        if any(v < 0 for v in verts):
            raise ComplexFormatError("vertex ids must be non-negative", lineno)
        s = tuple(sorted(verts))
        if len(set(s)) != len(s):
            raise ComplexFormatError(f"repeated vertex in {format_simplex(s)}", lineno)
        if s in records:
            raise ComplexFormatError(f"duplicate simplex {format_simplex(s)}", lineno)
        records[s] = f
    if close:
        added: set[Simplex] = set()
        # top-down so inserted faces propagate to their own faces
        for k in range(max((len(s) for s in records), default=0), 1, -1):
            for s in sorted(s for s in records if len(s) == k):
                for face in faces(s):
                    if face not in records:
                        records[face] = records[s]
                        added.add(face)
                    elif face in added:
                        records[face] = min(records[face], records[s])
    rank = {f: i + 1 for i, f in enumerate(sorted(set(records.values())))}
    return FilteredComplex(tuple(Cell(s, rank[f], float(f)) for s, f in records.items()))


def format_complex(fc: FilteredComplex) -> str:
    """Write records in degree-major adapted order; ``f`` is the birth if known, else the level."""
    order = sorted(fc.cells, key=lambda c: (c.degree, c.level, c.vertices))
    lines = []
    for c in order:
        f = repr(c.birth) if c.birth is not None else str(c.level)
        lines.append(" ".join([f] + [str(v) for v in c.vertices]))
    return "\n".join(lines) + ("\n" if lines else "")
