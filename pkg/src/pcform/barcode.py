"""Creator/destroyer pairs, barcodes and the Krull-Schmidt summand listing."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

from .complex import AdaptedBasis
from .matrix.core import ColumnMatrix
from .matrix.predicates import is_boolean, is_quasi_monomial
from .matrix.reduction import ReductionResult

INF = "∞"


@dataclass(frozen=True)
class Pairing:
    pairs: tuple[tuple[int, int], ...]  # (creator, destroyer), 0-based
    singletons: tuple[int, ...]


def extract_pairing(dcanon: ColumnMatrix, basis: AdaptedBasis) -> Pairing:
    if not dcanon.is_square or dcanon.rows != len(basis):
        raise ValueError(f"pivot matrix of shape {dcanon.shape} does not match a basis of {len(basis)}")
    if not (is_boolean(dcanon) and is_quasi_monomial(dcanon)):
        raise ValueError("pivot matrix is not Boolean quasi-monomial")
    pairs = []
    used = set()
    for j, k, _ in dcanon.entries():
        if j in used or k in used:
            raise ValueError(f"index used twice in pairing ({j + 1}, {k + 1})")
        creator, destroyer = basis[j], basis[k]
        if destroyer.degree != creator.degree + 1:
            raise ValueError(f"pair ({j + 1}, {k + 1}) does not raise degree by one")
        if creator.level > destroyer.level:
            raise ValueError(f"pair ({j + 1}, {k + 1}) is destroyed before it is created")
        pairs.append((j, k))
        used.update((j, k))
    pairs.sort()
    singletons = tuple(i for i in range(len(basis)) if i not in used)
    return Pairing(tuple(pairs), singletons)


@dataclass(frozen=True)
class Barcode:
    degree: int
    birth_level: int
    death_level: int | None  # None is infinity
    birth_value: float | None = None
    death_value: float | None = None

    @property
    def is_infinite(self) -> bool:
        return self.death_level is None

    def sort_key(self):
        return (self.degree, self.birth_level, float("inf") if self.death_level is None else self.death_level)

    def contains(self, p: int) -> bool:
        return self.birth_level <= p and (self.death_level is None or p < self.death_level)

    def interval(self) -> str:
        end = INF if self.death_level is None else str(self.death_level)
        return f"[{self.birth_level},{end})"

    def label(self) -> str:
        return f"{self.interval()}_{self.degree}"

    def as_dict(self) -> dict:
        d = {"degree": self.degree, "birth_level": self.birth_level, "death_level": self.death_level}
        if self.birth_value is not None:
            d["birth_value"] = self.birth_value
        if self.death_value is not None and self.death_level is not None:
            d["death_value"] = self.death_value
        return d


def barcodes(pairing: Pairing, basis: AdaptedBasis, drop_empty: bool = True) -> list[Barcode]:
    """Pair ``(j, k)`` gives ``[level j, level k)`` in degree of ``j``; singletons are infinite."""
    bars = []
    for j, k in pairing.pairs:
        c, d = basis[j], basis[k]
        if drop_empty and c.level == d.level:
            continue
        bars.append(Barcode(c.degree, c.level, d.level, c.birth, d.birth))
    for s in pairing.singletons:
        e = basis[s]
        bars.append(Barcode(e.degree, e.level, None, e.birth, None))
    bars.sort(key=Barcode.sort_key)
    return bars


def betti(bars: Sequence[Barcode], n: int, p: int) -> int:
    return sum(1 for b in bars if b.degree == n and b.contains(p))


@dataclass(frozen=True)
class Summand:
    kind: str  # "J" (infinite) or "K" (finite)
    degree: int
    birth_level: int
    death_level: int | None
    members: tuple[int, ...]  # creator first, then destroyer if any

    @property
    def label(self) -> str:
        end = INF if self.death_level is None else str(self.death_level)
        return f"[{self.birth_level},{end})_{self.degree}"

    @property
    def is_empty_interval(self) -> bool:
        return self.death_level is not None and self.death_level == self.birth_level


def summands(pairing: Pairing, basis: AdaptedBasis) -> list[Summand]:
    """One summand per Jordan block, listed in ascending order of first member."""
    blocks: list[tuple[int, ...]] = [tuple(p) for p in pairing.pairs] + [(s,) for s in pairing.singletons]
    blocks.sort()
    out = []
    for block in blocks:
        c = basis[block[0]]
        if len(block) == 1:
            out.append(Summand("J", c.degree, c.level, None, block))
        else:
            out.append(Summand("K", c.degree, c.level, basis[block[1]].level, block))
    return out


# rendering ------------------------------------------------------------------


def bars_to_json(bars: Sequence[Barcode]) -> str:
    return json.dumps([b.as_dict() for b in bars], indent=2) + "\n"


def bars_to_csv(bars: Sequence[Barcode]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["degree", "birth_level", "death_level", "birth_value", "death_value"])
    for b in bars:
        w.writerow(
            [
                b.degree,
                b.birth_level,
                "" if b.death_level is None else b.death_level,
                "" if b.birth_value is None else repr(b.birth_value),
                "" if b.death_value is None or b.death_level is None else repr(b.death_value),
            ]
        )
    return buf.getvalue()


def render_text(bars: Sequence[Barcode], basis: AdaptedBasis | None = None) -> str:
    """ASCII diagram: one row per bar, one ``-`` per live level, ``>`` if infinite."""
    if not bars:
        return "no bars\n"
    levels = [e.level for e in basis.elements] if basis is not None and len(basis) else []
    levels += [b.birth_level for b in bars] + [b.death_level for b in bars if b.death_level is not None]
    lo, hi = min(levels), max(levels)
    width = max(len(b.interval()) for b in bars)
    lines = [f"levels {lo}..{hi}"]
    current = None
    for b in sorted(bars, key=Barcode.sort_key):
        if b.degree != current:
            current = b.degree
            lines.append(f"H{current}")
        cells = "".join("-" if b.contains(p) else " " for p in range(lo, hi + 1))
        if b.is_infinite:
            cells += ">"
        lines.append(f"  {b.interval():<{width}}  {cells.rstrip()}")
    if basis is not None and len(basis) and all(e.birth is not None for e in basis.elements):
        thresholds = {}
        for e in basis.elements:
            thresholds.setdefault(e.level, e.birth)
        lines.append("legend: " + ", ".join(f"{p}={thresholds[p]:g}" for p in sorted(thresholds)))
    return "\n".join(lines) + "\n"


def summary_dict(result: ReductionResult, basis: AdaptedBasis, items: Sequence[Summand]) -> list[dict]:
    """Machine form of a decomposition, with each member's basis vector (column of ``B``)."""
    f = result.B.field
    out = []
    for s in items:
        members = []
        roles = ("creator", "destroyer") if s.kind == "K" else ("generator",)
        for role, idx in zip(roles, s.members):
            e = basis[idx]
            members.append(
                {
                    "role": role,
                    "index": idx + 1,
                    "label": e.label,
                    "degree": e.degree,
                    "level": e.level,
                    "vector": [[i + 1, f.format(v)] for i, v in result.B.column(idx)],
                }
            )
        out.append(
            {
                "label": s.label,
                "kind": s.kind,
                "degree": s.degree,
                "birth_level": s.birth_level,
                "death_level": s.death_level,
                "members": members,
            }
        )
    return out


def render_summands(result: ReductionResult, basis: AdaptedBasis, items: Sequence[Summand]) -> str:
    lines = []
    for d in summary_dict(result, basis, items):
        lines.append(f"{d['label']}  ({d['kind']}[{d['degree']}])")
        for m in d["members"]:
            combo = " + ".join(f"{v}*e{i}" for i, v in m["vector"])
            lines.append(f"  {m['role']:<9} {m['label']} level {m['level']} degree {m['degree']}: {combo}")
    return "\n".join(lines) + ("\n" if lines else "")
