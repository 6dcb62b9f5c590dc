# Hot exact-arithmetic kernels over F_p (p prime, p < 2**31), operating on
# int64 buffers.  Entries are kept reduced to [0, p); intermediate products
# stay below 2**62 so plain int64 arithmetic never overflows.

import numpy as np

cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef inline i64 inv_mod(i64 a, i64 p):
    # Fermat inverse; p is prime and a is nonzero mod p.
    cdef i64 result = 1
    cdef i64 base = a % p
    cdef i64 e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


cdef void _rref_inplace(i64[:, ::1] m, i64 p, list pivots):
    cdef Py_ssize_t rows = m.shape[0]
    cdef Py_ssize_t cols = m.shape[1]
    cdef Py_ssize_t piv_row = 0
    cdef Py_ssize_t col, r, rr, j
    cdef i64 scale, factor, tmp
    for col in range(cols):
        if piv_row >= rows:
            break
        r = -1
        for rr in range(piv_row, rows):
            if m[rr, col] != 0:
                r = rr
                break
        if r < 0:
            continue
        if r != piv_row:
            for j in range(cols):
                tmp = m[piv_row, j]
                m[piv_row, j] = m[r, j]
                m[r, j] = tmp
        scale = inv_mod(m[piv_row, col], p)
        if scale != 1:
            for j in range(col, cols):
                m[piv_row, j] = (m[piv_row, j] * scale) % p
        for rr in range(rows):
            if rr == piv_row:
                continue
            factor = m[rr, col]
            if factor == 0:
                continue
            for j in range(col, cols):
                m[rr, j] = (m[rr, j] - factor * m[piv_row, j]) % p
                if m[rr, j] < 0:
                    m[rr, j] += p
        pivots.append(col)
        piv_row += 1


def rref_mod(rows, long long p):
    """Reduced row echelon form mod p: returns (rows, rank, pivots)."""
    cdef cnp.ndarray[i64, ndim=2, mode="c"] m = np.array(
        rows, dtype=np.int64, order="C"
    ).reshape(len(rows), len(rows[0]) if rows else 0)
    pivots = []
    if m.shape[0] and m.shape[1]:
        _rref_inplace(m, p, pivots)
    return m.tolist(), len(pivots), pivots


def matmul_mod(a, b, long long p):
    """Matrix product mod p for row-major nested lists."""
    cdef cnp.ndarray[i64, ndim=2, mode="c"] am = np.array(a, dtype=np.int64, order="C")
    cdef cnp.ndarray[i64, ndim=2, mode="c"] bm = np.array(b, dtype=np.int64, order="C")
    cdef Py_ssize_t n = am.shape[0]
    cdef Py_ssize_t k = am.shape[1]
    cdef Py_ssize_t m = bm.shape[1]
    cdef cnp.ndarray[i64, ndim=2, mode="c"] out = np.zeros((n, m), dtype=np.int64)
    cdef i64[:, ::1] av = am
    cdef i64[:, ::1] bv = bm
    cdef i64[:, ::1] ov = out
    cdef Py_ssize_t i, j, t
    cdef i64 acc
    # When k*(p-1)^2 fits comfortably in int64 the inner loop can skip
    # per-term reduction.
    cdef bint fast = (p - 1) * (p - 1) <= (<i64>1 << 61) // (k + 1)
    for i in range(n):
        for j in range(m):
            acc = 0
            if fast:
                for t in range(k):
                    acc += av[i, t] * bv[t, j]
                acc %= p
            else:
                for t in range(k):
                    acc = (acc + av[i, t] * bv[t, j]) % p
            ov[i, j] = acc
    return out.tolist()
