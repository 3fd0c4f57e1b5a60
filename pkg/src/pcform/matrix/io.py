"""Line-oriented matrix interchange format.

A stream holds one or more blocks::

    # optional comment
    matrix <rows> <cols> <field>      field is "q" or "zp:<p>"
    <r> <c> <value>                   1-based, value like -3 or 2/5
    degrees <n1>:<size1> <n2>:<size2> optional, after the entries

Entries may appear in any order; duplicates are rejected.  Writers emit
entries column-major with rows ascending so output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..field import FieldSpec
from .core import ColumnMatrix, DegreePartition


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class MatrixBlock:
    matrix: ColumnMatrix
    partition: DegreePartition | None = None
    name: str | None = None


def parse_matrices(text: str) -> list[MatrixBlock]:
    blocks: list[MatrixBlock] = []
    cur = None  # (rows, cols, field, entries, seen, name, header_line)
    pending_name = None

    def close():
        nonlocal cur
        if cur is None:
            return
        rows, cols, field, entries, _, name, line, degrees = cur
        try:
            m = ColumnMatrix.from_entries(rows, cols, entries, field)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(str(exc), line) from exc
        if degrees is not None and degrees.size != rows:
            raise FormatError(f"degree blocks cover {degrees.size} indices, matrix has {rows}", line)
        blocks.append(MatrixBlock(m, degrees, name))
        cur = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            label = line[1:].strip()
            if label.startswith("name:"):
                pending_name = label[5:].strip()
            continue
        parts = line.split()
        head = parts[0].lower()
        if head == "matrix":
            close()
            if len(parts) != 4:
                raise FormatError("header must be 'matrix <rows> <cols> <field>'", lineno)
            try:
                rows, cols = int(parts[1]), int(parts[2])
                field = FieldSpec.from_token(parts[3])
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from exc
            if rows < 0 or cols < 0:
                raise FormatError("negative dimension", lineno)
            cur = [rows, cols, field, [], set(), pending_name, lineno, None]
            pending_name = None
            continue
        if cur is None:
            raise FormatError(f"expected 'matrix' header, got {parts[0]!r}", lineno)
        if head == "degrees":
            try:
                pairs = []
                for tok in parts[1:]:
                    n, s = tok.split(":")
                    pairs.append((int(n), int(s)))
                cur[7] = DegreePartition(tuple(pairs))
            except ValueError as exc:
                raise FormatError(f"bad degree list: {exc}", lineno) from exc
            continue
        if cur[7] is not None:
            raise FormatError("entry after 'degrees' line", lineno)
        if len(parts) != 3:
            raise FormatError("entry must be 'r c value'", lineno)
        try:
            r, c = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"bad index: {exc}", lineno) from exc
        rows, cols, field = cur[0], cur[1], cur[2]
        if not (1 <= r <= rows and 1 <= c <= cols):
            raise FormatError(f"entry ({r}, {c}) outside {rows}x{cols}", lineno)
        if (r, c) in cur[4]:
            raise FormatError(f"duplicate entry ({r}, {c})", lineno)
        cur[4].add((r, c))
        try:
            value = field.coerce(parts[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad value {parts[2]!r}: {exc}", lineno) from exc
        cur[3].append((r - 1, c - 1, value))
    close()
    return blocks


def parse_matrix(text: str) -> MatrixBlock:
    blocks = parse_matrices(text)
    if len(blocks) != 1:
        raise FormatError(f"expected exactly one matrix, found {len(blocks)}")
    return blocks[0]


def format_matrix(m: ColumnMatrix, partition: DegreePartition | None = None, name: str | None = None) -> str:
    lines = []
    if name:
        lines.append(f"# name: {name}")
    lines.append(f"matrix {m.rows} {m.cols} {m.field.token()}")
    for i, j, v in m.entries():
        lines.append(f"{i + 1} {j + 1} {m.field.format(v)}")
    if partition is not None:
        lines.append(partition.token())
    return "\n".join(lines) + "\n"
