"""Python implementation of the dense mod-p sweep kernel.

Mirrors ``_kernels.pyx`` exactly; used when the compiled module is missing
or when ``PCFORM_PURE_PYTHON`` is set.
"""

import numpy as np


def sweep_reduce_modp(rt: np.ndarray, vt: np.ndarray, p: int) -> None:
    """Left-to-right column sweep, in place, on transposed int64 arrays.

    ``rt[k]`` is column ``k`` of the matrix being reduced and ``vt[k]``
    column ``k`` of the accumulated transform.  Entries lie in ``[0, p)``.
    Each nonzero column clears, to its right, the entries in its pivot row.
    """
    ncols = rt.shape[0]
    for j in range(ncols):
        nz = np.flatnonzero(rt[j])
        if nz.size == 0:
            continue
        piv = int(nz[-1])
        inv = pow(int(rt[j, piv]), -1, p)
        ks = j + 1 + np.flatnonzero(rt[j + 1 :, piv])
        if ks.size == 0:
            continue
        f = rt[ks, piv] * inv % p
        rt[ks] = (rt[ks] - np.outer(f, rt[j])) % p
        vt[ks] = (vt[ks] - np.outer(f, vt[j])) % p


def rank_modp(rows: np.ndarray, p: int) -> int:
    """Row-echelon rank of an int64 array with entries in ``[0, p)``; destroys input."""
    nrows, ncols = rows.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(rows[r:, c])
        if nz.size == 0:
            continue
        s = r + int(nz[0])
        if s != r:
            rows[[r, s]] = rows[[s, r]]
        inv = pow(int(rows[r, c]), -1, p)
        below = r + 1 + np.flatnonzero(rows[r + 1 :, c])
        if below.size:
            f = rows[below, c] * inv % p
            rows[below] = (rows[below] - np.outer(f, rows[r])) % p
        r += 1
    return r
