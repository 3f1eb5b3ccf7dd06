# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free Gauss-Jordan elimination.

Same contract as ``_rref_py.rref_int``.  The reduction first runs on a C
array of 64-bit integers with overflow detection; on the first overflow it
restarts from the original input on Python integers, so results are always
exact.
"""

from libc.stdlib cimport malloc, free
from math import gcd


cdef extern from *:
    bint __builtin_mul_overflow(long long a, long long b, long long *r) nogil
    bint __builtin_sub_overflow(long long a, long long b, long long *r) nogil


# entries are kept within +-BOUND so negation and abs never overflow
cdef long long BOUND = 4611686018427387904

cdef inline long long _gcd64(long long a, long long b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _primitive64(long long *row, Py_ssize_t ncols) noexcept nogil:
    # returns 1 if the row is nonzero
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(ncols):
        if row[j]:
            g = _gcd64(g, row[j])
            if g == 1:
                return 1
    if g == 0:
        return 0
    if g > 1:
        for j in range(ncols):
            row[j] = row[j] // g
    return 1


cdef int _reduce64(long long *a, Py_ssize_t nrows, Py_ssize_t ncols,
                   Py_ssize_t *pivots, Py_ssize_t *rank,
                   Py_ssize_t *nzbuf) noexcept nogil:
    # returns 0 on success, 1 on overflow
    cdef Py_ssize_t r = 0, c, i, j, k, nnz
    cdef long long p, e, g, pp, ee, t, u, v
    cdef long long *prow
    cdef long long *row
    for c in range(ncols):
        if r == nrows:
            break
        i = r
        while i < nrows and a[i * ncols + c] == 0:
            i += 1
        if i == nrows:
            continue
        if i != r:
            for j in range(ncols):
                t = a[i * ncols + j]
                a[i * ncols + j] = a[r * ncols + j]
                a[r * ncols + j] = t
        prow = a + r * ncols
        _primitive64(prow, ncols)
        if prow[c] < 0:
            for j in range(ncols):
                prow[j] = -prow[j]
        p = prow[c]
        nnz = 0
        for j in range(c, ncols):
            if prow[j]:
                nzbuf[nnz] = j
                nnz += 1
        for i in range(nrows):
            if i == r:
                continue
            row = a + i * ncols
            e = row[c]
            if e == 0:
                continue
            g = _gcd64(p, e)
            pp = p // g
            ee = e // g
            if pp != 1:
                for j in range(ncols):
                    if row[j]:
                        if __builtin_mul_overflow(row[j], pp, &t) or t > BOUND or t < -BOUND:
                            return 1
                        row[j] = t
            for k in range(nnz):
                j = nzbuf[k]
                if __builtin_mul_overflow(ee, prow[j], &u):
                    return 1
                if __builtin_sub_overflow(row[j], u, &v) or v > BOUND or v < -BOUND:
                    return 1
                row[j] = v
            _primitive64(row, ncols)
        pivots[r] = c
        r += 1
    rank[0] = r
    return 0


def _rref_object(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows, r = 0, c, i, j
    cdef list prow, row, nz, pivots = []
    rows = [list(x) for x in rows if any(x)]
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        i = r
        while i < nrows and not (<list>rows[i])[c]:
            i += 1
        if i == nrows:
            continue
        if i != r:
            rows[r], rows[i] = rows[i], rows[r]
        prow = rows[r]
        g = gcd(*prow)
        if g > 1:
            prow = [x // g for x in prow]
        if prow[c] < 0:
            prow = [-x for x in prow]
        rows[r] = prow
        p = prow[c]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            e = row[c]
            if not e:
                continue
            g = gcd(p, e)
            pp = p // g
            ee = e // g
            if pp != 1:
                row = [pp * x for x in row]
            for j in nz:
                row[j] = row[j] - ee * prow[j]
            g = gcd(*row)
            if g > 1:
                row = [x // g for x in row]
            rows[i] = row
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref_int(rows, Py_ssize_t ncols):
    """Primitive reduced row echelon form of an integer matrix.

    Returns ``(reduced, pivots)``; see ``_rref_py.rref_int``.
    """
    cdef list src = [x for x in rows if any(x)]
    cdef Py_ssize_t nrows = len(src), i, j, rank = 0
    cdef long long lo = -BOUND, hi = BOUND
    cdef long long *a
    cdef Py_ssize_t *pivots
    cdef Py_ssize_t *nzbuf
    cdef int status
    if nrows == 0 or ncols == 0:
        return [], []
    for x in src:
        for y in x:
            if y < lo or y > hi:
                return _rref_object(src, ncols)
    a = <long long *> malloc(nrows * ncols * sizeof(long long))
    pivots = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    nzbuf = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if a == NULL or pivots == NULL or nzbuf == NULL:
        free(a)
        free(pivots)
        free(nzbuf)
        raise MemoryError()
    try:
        for i in range(nrows):
            x = src[i]
            for j in range(ncols):
                a[i * ncols + j] = x[j]
        with nogil:
            status = _reduce64(a, nrows, ncols, pivots, &rank, nzbuf)
        if status:
            return _rref_object(src, ncols)
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(rank)]
        return out, [pivots[i] for i in range(rank)]
    finally:
        free(a)
        free(pivots)
        free(nzbuf)
