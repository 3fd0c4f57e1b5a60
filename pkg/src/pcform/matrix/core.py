"""Sparse column-oriented exact matrices and the graded differential type."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from ..field import QQ, FieldSpec, RawValue

Column = dict  # row index -> nonzero raw value


class ColumnMatrix:
    """An exact ``rows x cols`` matrix stored as one sparse dict per column.

    Indices are 0-based.  Every stored value is nonzero and canonical for
    ``field``.  Instances are treated as immutable: all operations return
    new matrices, and :meth:`column_dict` hands out the internal dict only
    for read access.
    """

    __slots__ = ("rows", "cols", "field", "_cols")

    def __init__(self, rows: int, cols: int, field: FieldSpec = QQ, columns: Sequence[Column] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        self.rows = rows
        self.cols = cols
        self.field = field
        if columns is None:
            self._cols = [{} for _ in range(cols)]
        else:
            if len(columns) != cols:
                raise ValueError(f"expected {cols} columns, got {len(columns)}")
            self._cols = [dict(c) for c in columns]
            for c in self._cols:
                for i, v in c.items():
                    if not (0 <= i < rows):
                        raise IndexError(f"row {i} out of range for {rows} rows")
                    if not v:
                        raise ValueError("explicit zero stored in sparse column")

    # construction -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = QQ) -> "ColumnMatrix":
        return cls(rows, cols, field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ) -> "ColumnMatrix":
        return cls._wrap(n, n, field, [{j: field.one} for j in range(n)])

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence], field: FieldSpec = QQ, cols: int | None = None) -> "ColumnMatrix":
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        columns: list[Column] = [{} for _ in range(cols)]
        for i, row in enumerate(dense):
            if len(row) != cols:
                raise ValueError(f"row {i} has length {len(row)}, expected {cols}")
            for j, x in enumerate(row):
                v = field.coerce(x)
                if v:
                    columns[j][i] = v
        return cls._wrap(rows, cols, field, columns)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, object]], field: FieldSpec = QQ) -> "ColumnMatrix":
        """Build from ``(row, col, value)`` triples; a repeated position overwrites."""
        columns: list[Column] = [{} for _ in range(cols)]
        for i, j, x in entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            v = field.coerce(x)
            if v:
                columns[j][i] = v
            else:
                columns[j].pop(i, None)
        return cls._wrap(rows, cols, field, columns)

    @classmethod
    def _wrap(cls, rows: int, cols: int, field: FieldSpec, columns: list[Column]) -> "ColumnMatrix":
        # trusted constructor: no copying or validation
        m = cls.__new__(cls)
        m.rows, m.cols, m.field, m._cols = rows, cols, field, columns
        return m

    # access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def column_dict(self, k: int) -> Column:
        return self._cols[k]

    def column(self, k: int) -> list[tuple[int, RawValue]]:
        """Column ``k`` as a row-sorted list of ``(row, value)``."""
        return sorted(self._cols[k].items())

    def entry(self, i: int, j: int) -> RawValue:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside {self.rows}x{self.cols}")
        return self._cols[j].get(i, self.field.zero)

    def __getitem__(self, ij: tuple[int, int]) -> RawValue:
        return self.entry(*ij)

    def entries(self) -> Iterator[tuple[int, int, RawValue]]:
        """Nonzero entries in column-major, row-ascending order."""
        for j, c in enumerate(self._cols):
            for i in sorted(c):
                yield i, j, c[i]

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def pivot(self, k: int) -> int | None:
        """Row of the bottommost nonzero entry of column ``k``."""
        if not (0 <= k < self.cols):
            raise IndexError(f"column {k} out of range")
        c = self._cols[k]
        return max(c) if c else None

    def is_zero(self) -> bool:
        return not any(self._cols)

    def to_dense(self) -> list[list[RawValue]]:
        zero = self.field.zero
        out = [[zero] * self.cols for _ in range(self.rows)]
        for j, c in enumerate(self._cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    def to_int_lists(self) -> list[list]:
        """Dense rows with integral rationals shown as ``int`` (handy in tests)."""
        return [[int(v) if getattr(v, "denominator", 1) == 1 else v for v in row] for row in self.to_dense()]

    # algebra ----------------------------------------------------------

    def __matmul__(self, other: "ColumnMatrix") -> "ColumnMatrix":
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        f = self.field
        a_cols = self._cols
        out: list[Column] = []
        for bc in other._cols:
            acc: Column = {}
            for k, bv in bc.items():
                for i, av in a_cols[k].items():
                    acc[i] = f.add(acc.get(i, f.zero), f.mul(av, bv))
            out.append({i: v for i, v in acc.items() if v})
        return ColumnMatrix._wrap(self.rows, other.cols, f, out)

    def scale_columns(self, factors: Sequence[RawValue]) -> "ColumnMatrix":
        """Return ``self @ diag(factors)``."""
        f = self.field
        out = []
        for c, t in zip(self._cols, factors):
            out.append({i: f.mul(v, t) for i, v in c.items()})
        return ColumnMatrix._wrap(self.rows, self.cols, f, out)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "ColumnMatrix":
        pos = {r: n for n, r in enumerate(row_idx)}
        out = []
        for j in col_idx:
            out.append({pos[i]: v for i, v in self._cols[j].items() if i in pos})
        return ColumnMatrix._wrap(len(row_idx), len(col_idx), self.field, out)

    def upper_left(self, p: int) -> "ColumnMatrix":
        if not (0 <= p <= min(self.rows, self.cols)):
            raise IndexError(f"size {p} out of range")
        out = [{i: v for i, v in self._cols[j].items() if i < p} for j in range(p)]
        return ColumnMatrix._wrap(p, p, self.field, out)

    def conjugate_by_permutation(self, image: Sequence[int]) -> "ColumnMatrix":
        """``P^-1 M P`` where column ``q`` of ``P`` is ``e_{image[q]}``."""
        if not self.is_square or len(image) != self.rows:
            raise ValueError("permutation size mismatch")
        where = [0] * len(image)
        for q, old in enumerate(image):
            where[old] = q
        out = [{where[i]: v for i, v in self._cols[old].items()} for old in image]
        return ColumnMatrix._wrap(self.rows, self.cols, self.field, out)

    def transpose(self) -> "ColumnMatrix":
        out: list[Column] = [{} for _ in range(self.rows)]
        for j, c in enumerate(self._cols):
            for i, v in c.items():
                out[i][j] = v
        return ColumnMatrix._wrap(self.cols, self.rows, self.field, out)

    def copy_columns(self) -> list[Column]:
        return [dict(c) for c in self._cols]

    # comparison / display --------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColumnMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.field == other.field
            and self._cols == other._cols
        )

    __hash__ = None  # mutable-looking container; compare structurally only

    def __repr__(self) -> str:
        return f"ColumnMatrix({self.rows}x{self.cols}, {self.field}, nnz={self.nnz()})"

    def pretty(self) -> str:
        cells = [[self.field.format(v) for v in row] for row in self.to_dense()]
        width = max((len(s) for row in cells for s in row), default=1)
        return "\n".join(" ".join(s.rjust(width) for s in row) for row in cells)


@dataclass(frozen=True)
class DegreePartition:
    """Consecutive index blocks, one per degree, degrees strictly increasing."""

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((int(n), int(s)) for n, s in self.blocks))
        degrees = [n for n, _ in self.blocks]
        if any(b <= a for a, b in zip(degrees, degrees[1:])):
            raise ValueError(f"degrees must be strictly increasing: {degrees}")
        if any(s < 0 for _, s in self.blocks):
            raise ValueError("negative block size")

    @classmethod
    def from_degrees(cls, degrees: Sequence[int]) -> "DegreePartition":
        """Build from a per-index degree list, which must be nondecreasing."""
        blocks: list[list[int]] = []
        for d in degrees:
            if blocks and blocks[-1][0] == d:
                blocks[-1][1] += 1
            else:
                blocks.append([d, 1])
        return cls(tuple((d, s) for d, s in blocks))

    @classmethod
    def single(cls, size: int, degree: int = 0) -> "DegreePartition":
        return cls(((degree, size),))

    @property
    def size(self) -> int:
        return sum(s for _, s in self.blocks)

    def degrees(self) -> list[int]:
        """Degree of every index, in order."""
        out: list[int] = []
        for n, s in self.blocks:
            out.extend([n] * s)
        return out

    def truncate(self, p: int) -> "DegreePartition":
        """Partition induced on the first ``p`` indices."""
        out = []
        left = p
        for n, s in self.blocks:
            if left <= 0:
                break
            take = min(s, left)
            out.append((n, take))
            left -= take
        return DegreePartition(tuple(out))

    def token(self) -> str:
        return "degrees " + " ".join(f"{n}:{s}" for n, s in self.blocks)


def is_block_superdiagonal(m: ColumnMatrix, partition: DegreePartition) -> bool:
    deg = partition.degrees()
    for i, j, _ in m.entries():
        if deg[i] != deg[j] - 1:
            return False
    return True


def is_block_diagonal(m: ColumnMatrix, partition: DegreePartition) -> bool:
    deg = partition.degrees()
    for i, j, _ in m.entries():
        if deg[i] != deg[j]:
            return False
    return True


def is_differential(m: ColumnMatrix) -> bool:
    return m.is_square and (m @ m).is_zero()


@dataclass(frozen=True, eq=False)
class GradedDifferential:
    """A square differential ``matrix`` that is block-superdiagonal for ``partition``."""

    matrix: ColumnMatrix
    partition: DegreePartition

    def __post_init__(self):
        m = self.matrix
        if not m.is_square:
            raise ValueError(f"differential must be square, got {m.shape}")
        if self.partition.size != m.rows:
            raise ValueError(f"partition covers {self.partition.size} indices, matrix has {m.rows}")
        if not is_block_superdiagonal(m, self.partition):
            raise ValueError("matrix is not block-superdiagonal for the degree partition")
        if not is_differential(m):
            raise ValueError("matrix does not square to zero")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    @property
    def field(self) -> FieldSpec:
        return self.matrix.field

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedDifferential):
            return NotImplemented
        return self.matrix == other.matrix and self.partition == other.partition


@dataclass(frozen=True)
class Permutation:
    """``image[q]`` is the old (0-based) index placed at new position ``q``."""

    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(self.image))
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"not a permutation: {self.image}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.image)

    def one_based(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.image)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for q, old in enumerate(self.image):
            inv[old] = q
        return Permutation(tuple(inv))

    def matrix(self, field: FieldSpec = QQ) -> ColumnMatrix:
        return ColumnMatrix._wrap(len(self), len(self), field, [{old: field.one} for old in self.image])


def upper_left(d: GradedDifferential, p: int) -> GradedDifferential:
    """The ``p x p`` upper-left corner with the induced degree partition."""
    if not (0 <= p <= d.dim):
        raise IndexError(f"p = {p} outside 0..{d.dim}")
    return GradedDifferential(d.matrix.upper_left(p), d.partition.truncate(p))
