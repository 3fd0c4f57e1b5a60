# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled mod-p kernels.  Same contracts as ``_kernels_py``."""

ctypedef long long i64


cdef inline i64 _inv(i64 a, i64 p) noexcept nogil:
    # extended Euclid; a in (0, p), p prime
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def sweep_reduce_modp(i64[:, ::1] rt, i64[:, ::1] vt, i64 p):
    cdef Py_ssize_t ncols = rt.shape[0], nrows = rt.shape[1], vlen = vt.shape[1]
    cdef Py_ssize_t j, k, i, piv
    cdef i64 inv, f, x
    with nogil:
        for j in range(ncols):
            piv = -1
            i = nrows - 1
            while i >= 0:
                if rt[j, i] != 0:
                    piv = i
                    break
                i -= 1
            if piv < 0:
                continue
            inv = _inv(rt[j, piv], p)
            for k in range(j + 1, ncols):
                x = rt[k, piv]
                if x == 0:
                    continue
                f = (x * inv) % p
                # column j is zero below its pivot
                for i in range(piv + 1):
                    if rt[j, i] != 0:
                        rt[k, i] = (rt[k, i] + (p - (f * rt[j, i]) % p)) % p
                for i in range(vlen):
                    if vt[j, i] != 0:
                        vt[k, i] = (vt[k, i] + (p - (f * vt[j, i]) % p)) % p


def rank_modp(i64[:, ::1] rows, i64 p):
    cdef Py_ssize_t nrows = rows.shape[0], ncols = rows.shape[1]
    cdef Py_ssize_t r = 0, c, s, i, t
    cdef i64 inv, f, tmp
    with nogil:
        for c in range(ncols):
            if r == nrows:
                break
            s = -1
            for i in range(r, nrows):
                if rows[i, c] != 0:
                    s = i
                    break
            if s < 0:
                continue
            if s != r:
                for t in range(ncols):
                    tmp = rows[r, t]
                    rows[r, t] = rows[s, t]
                    rows[s, t] = tmp
            inv = _inv(rows[r, c], p)
            for i in range(r + 1, nrows):
                if rows[i, c] == 0:
                    continue
                f = (rows[i, c] * inv) % p
                for t in range(c, ncols):
                    if rows[r, t] != 0:
                        rows[i, t] = (rows[i, t] + (p - (f * rows[r, t]) % p)) % p
            r += 1
    return r
