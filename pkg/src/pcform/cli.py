"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .barcode import bars_to_csv, bars_to_json, render_summands, render_text, summary_dict
from .complex import (
    ComplexFormatError,
    FilteredChainComplex,
    InvalidComplexError,
    adapted_basis,
    boundary_matrix,
    format_complex,
    parse_complex,
)
from .field import QQ, FieldSpec
from .ingest import PointCloudError, parse_points, vietoris_rips
from .matrix.core import ColumnMatrix, GradedDifferential, is_differential
from .matrix.io import FormatError, MatrixBlock, format_matrix, parse_matrices
from .matrix.reduction import VerificationError, standard_reduction
from .oracle import BRUTE_FORCE_MAX, TheoremViolation, brute_force_canonical, rank_gauss
from .pipeline import persistence

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _field(args) -> FieldSpec:
    if args.field == "q":
        if args.prime is not None:
            raise InputError("--prime requires --field zp")
        return QQ
    if args.prime is None:
        raise InputError("--field zp requires --prime")
    try:
        return FieldSpec.prime(args.prime)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _looks_like_matrix(text: str) -> bool:
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            return line.split()[0].lower() == "matrix"
    return False


def _as_differential(block: MatrixBlock, where: str = "") -> GradedDifferential | ColumnMatrix:
    m = block.matrix
    if not m.is_square:
        raise InputError(f"{where}matrix is {m.rows}x{m.cols}, not square")
    if block.partition is None:
        if not is_differential(m):
            raise InputError(f"{where}matrix does not square to zero")
        return m
    try:
        return GradedDifferential(m, block.partition)
    except ValueError as exc:
        raise InputError(f"{where}{exc}") from exc


def _load_complex(args, text: str):
    """Filtered complex, point cloud (with --max-dim) or graded matrix."""
    if getattr(args, "max_dim", None) is not None:
        pc = parse_points(text)
        return vietoris_rips(pc, args.max_dim, args.max_radius)
    if _looks_like_matrix(text):
        blocks = parse_matrices(text)
        if len(blocks) != 1:
            raise InputError(f"expected one matrix, found {len(blocks)}")
        d = _as_differential(blocks[0])
        if isinstance(d, ColumnMatrix):
            raise InputError("matrix input needs a 'degrees' line for barcodes")
        return FilteredChainComplex(d)
    fc = parse_complex(text, close=args.close)
    return fc


def cmd_reduce(args) -> int:
    text = _read(args.path)
    field = _field(args)
    out = []
    if _looks_like_matrix(text):
        blocks = parse_matrices(text)
        targets = [(_as_differential(b, f"block {n + 1}: "), None) for n, b in enumerate(blocks)]
    else:
        fc = parse_complex(text, close=args.close)
        basis = adapted_basis(fc, args.ordering)
        d = boundary_matrix(fc, basis, field)
        targets = [(d, basis)]
    for d, basis in targets:
        res = standard_reduction(d)
        part = res.partition
        if basis is not None:
            out.append(f"# basis ({basis.mode.value}-major):")
            for e in basis.elements:
                out.append(f"#   {e.index + 1} {e.label} degree {e.degree} level {e.level}")
            out.append(format_matrix(res.D, part, "D").rstrip("\n"))
        out.append(format_matrix(res.Dcanon, part, "Dcanon").rstrip("\n"))
        out.append(format_matrix(res.B, part, "B").rstrip("\n"))
        out.append(format_matrix(res.P.matrix(res.D.field), None, "P").rstrip("\n"))
        out.append("# P order: " + " ".join(str(i) for i in res.P.one_based()))
        if args.emit_certificate:
            out.append(format_matrix(res.R, None, "R").rstrip("\n"))
            out.append(format_matrix(res.V, part, "V").rstrip("\n"))
            out.append(format_matrix(res.Vhat, part, "Vhat").rstrip("\n"))
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_barcodes(args) -> int:
    obj = _load_complex(args, _read(args.path))
    field = _field(args)
    if isinstance(obj, FilteredChainComplex):
        field = obj.differential.field
    pers = persistence(obj, field)
    bars = pers.barcodes(drop_empty=args.drop_empty)
    if args.format == "json":
        sys.stdout.write(bars_to_json(bars))
    elif args.format == "csv":
        sys.stdout.write(bars_to_csv(bars))
    else:
        sys.stdout.write(render_text(bars, pers.basis))
    return EXIT_OK


def cmd_decompose(args) -> int:
    obj = _load_complex(args, _read(args.path))
    field = _field(args)
    if isinstance(obj, FilteredChainComplex):
        field = obj.differential.field
    pers = persistence(obj, field)
    items = pers.summands()
    if args.format == "json":
        sys.stdout.write(json.dumps(summary_dict(pers.result, pers.basis, items), indent=2) + "\n")
    elif args.format == "csv":
        raise InputError("decompose supports --format text or json")
    else:
        sys.stdout.write(render_summands(pers.result, pers.basis, items))
    return EXIT_OK


def verify_block(d: GradedDifferential | ColumnMatrix) -> list[str]:
    """Run the reduction and every oracle cross-check; return failure messages."""
    failures = []
    res = standard_reduction(d, verify=False)
    failures += res.failed_invariants()
    m = res.D
    rank = rank_gauss(m)
    nonzero = [k for k in range(res.R.cols) if res.R.column_dict(k)]
    if rank_gauss(res.R.submatrix(range(res.R.rows), nonzero)) != rank or len(nonzero) != rank:
        failures.append(f"rank mismatch: Gaussian rank {rank}, reduced columns {len(nonzero)}")
    kernel_cols = [k for k in range(res.R.cols) if not res.R.column_dict(k)]
    if len(kernel_cols) != m.cols - rank:
        failures.append("kernel basis size differs from nullity")
    if any((m @ res.V.submatrix(range(m.cols), [k])).column_dict(0) for k in kernel_cols):
        failures.append("V column at a zero column of R is not a cycle")
    if standard_reduction(d, strategy="leftlook", verify=False).Dcanon != res.Dcanon:
        failures.append("left-look reduction gives a different canonical form")
    if m.field.p == 2 and m.rows <= BRUTE_FORCE_MAX:
        try:
            if brute_force_canonical(m) != res.Dcanon:
                failures.append("brute-force canonical form differs")
        except TheoremViolation as exc:
            failures.append(f"brute force: {exc}")
    return failures


def cmd_verify(args) -> int:
    text = _read(args.path)
    if not _looks_like_matrix(text):
        raise InputError("verify expects matrix interchange input")
    blocks = parse_matrices(text)
    if not blocks:
        raise InputError("no matrices in input")
    diffs = [_as_differential(b, f"block {n + 1}: ") for n, b in enumerate(blocks)]
    failed = 0
    for n, d in enumerate(diffs, start=1):
        problems = verify_block(d)
        if problems:
            failed += 1
            print(f"block {n}: FAIL: " + "; ".join(problems))
        elif not args.quiet:
            print(f"block {n}: ok")
    print(f"verified {len(diffs) - failed}/{len(diffs)}")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_rips(args) -> int:
    pc = parse_points(_read(args.path))
    sys.stdout.write(format_complex(vietoris_rips(pc, args.max_dim, args.max_radius)))
    return EXIT_OK


def _radius(s: str):
    from fractions import Fraction

    try:
        r = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad radius {s!r}") from None
    if r < 0:
        raise argparse.ArgumentTypeError("radius must be non-negative")
    return r


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcform", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=None):
        p.add_argument("path", help="input file, or - for stdin")
        p.add_argument("--field", choices=("q", "zp"), default="q")
        p.add_argument("--prime", type=int)
        p.add_argument("--close", action="store_true", help="insert missing faces of complex input")
        if formats:
            p.add_argument("--format", choices=formats, default="text")

    def rips_opts(p, required=False):
        p.add_argument("--max-dim", type=_nonneg, required=required)
        p.add_argument("--max-radius", type=_radius)

    p = sub.add_parser("reduce", help="persistence canonical form of a matrix or complex")
    common(p)
    p.add_argument("--ordering", choices=("degree", "level"), default="degree")
    p.add_argument("--emit-certificate", action="store_true", help="also print R, V and Vhat")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("barcodes", help="barcodes of a complex, graded matrix or point cloud")
    common(p, ("text", "json", "csv"))
    rips_opts(p)
    p.add_argument("--drop-empty", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_barcodes)

    p = sub.add_parser("decompose", help="list indecomposable summands")
    common(p, ("text", "json"))
    rips_opts(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="cross-check reductions against the oracles")
    p.add_argument("path")
    p.add_argument("--quiet", action="store_true", help="only print failures and the summary")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rips", help="Vietoris-Rips filtration of a point cloud")
    p.add_argument("path")
    rips_opts(p, required=True)
    p.set_defaults(func=cmd_rips)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FormatError, ComplexFormatError, PointCloudError, InvalidComplexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (VerificationError, TheoremViolation) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
