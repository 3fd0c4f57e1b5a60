"""Time the mod-p column sweep on Rips boundary matrices.

Compares the compiled kernel, its numpy fallback and the sparse dict path
on the same inputs and checks that all three return the same R.

    python benchmarks/bench_reduce.py --points 20 30 40 --prime 2
"""

import argparse
import random
import time

import numpy as np

from pcform import kernels
from pcform.complex import adapted_basis, boundary_matrix
from pcform.field import FieldSpec
from pcform.ingest import PointCloud, vietoris_rips
from pcform.matrix.reduction import _from_rows, column_reduce


def rips_boundary(n_points: int, field: FieldSpec, seed: int):
    rng = random.Random(seed)
    pc = PointCloud(tuple((rng.randint(0, 50), rng.randint(0, 50)) for _ in range(n_points)))
    fc = vietoris_rips(pc, 2)
    return boundary_matrix(fc, adapted_basis(fc, "degree"), field).matrix


def dense_sweep(backend, m, p):
    rt = np.zeros((m.cols, m.rows), dtype=np.int64)
    for i, j, v in m.entries():
        rt[j, i] = v
    vt = np.eye(m.cols, dtype=np.int64)
    backend.sweep_reduce_modp(rt, vt, p)
    return _from_rows(rt)


def best_of(fn, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, nargs="+", default=[15, 25, 35])
    ap.add_argument("--prime", type=int, default=2)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    field = FieldSpec.prime(args.prime)
    runners = [("python", kernels.python_backend)]
    if kernels.compiled_backend is not None:
        runners.insert(0, ("cython", kernels.compiled_backend))
    else:
        print("compiled extension not built; timing the fallback only")

    header = f"{'points':>6} {'size':>6} " + " ".join(f"{name:>10}" for name, _ in runners) + f" {'sparse':>10}"
    print(header)
    for n in args.points:
        m = rips_boundary(n, field, args.seed)
        times, results = [], []
        for _, backend in runners:
            t, r = best_of(lambda: dense_sweep(backend, m, args.prime), args.repeats)
            times.append(t)
            results.append(r)
        t_sparse, (r_sparse, _) = best_of(lambda: column_reduce(m, backend="sparse"), args.repeats)
        if any(r != r_sparse.copy_columns() for r in results):
            raise SystemExit(f"backends disagree at {n} points")
        cells = " ".join(f"{t * 1e3:9.1f}ms" for t in times)
        print(f"{n:>6} {m.rows:>6} {cells} {t_sparse * 1e3:9.1f}ms")


if __name__ == "__main__":
    main()
