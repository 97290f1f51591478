# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""int64 fast path for exact row reduction.

Same contract as zappatic._bareiss (Bareiss elimination, canonical primitive
rref) but on C int64.  Whenever a product or sum could leave the 64-bit safe
window the functions raise OverflowError and the dispatcher in
zappatic.linalg retries the call with the arbitrary-precision implementation.
Results, when produced, are bit-identical to the pure-Python backend.
"""

from libc.stdlib cimport free, malloc

cdef long long LIM = (<long long>1) << 62


cdef inline long long _llabs(long long x) nogil:
    return -x if x < 0 else x


cdef inline long long _gcd(long long a, long long b) nogil:
    a = _llabs(a)
    b = _llabs(b)
    while b:
        a, b = b, a % b
    return a


cdef long long _mul(long long a, long long b) except? -1:
    if a == 0 or b == 0:
        return 0
    if _llabs(a) > LIM // _llabs(b):
        raise OverflowError("int64 kernel overflow")
    return a * b


cdef long long *_load(object rows, Py_ssize_t *nr, Py_ssize_t *nc) except NULL:
    cdef Py_ssize_t i, j, n, c
    cdef long long v
    cdef long long *m
    n = len(rows)
    c = len(rows[0]) if n else 0
    for i in range(n):
        if len(rows[i]) != c:
            raise ValueError("ragged matrix")
    m = <long long *> malloc(n * c * sizeof(long long) + 1)
    if m == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            row = rows[i]
            for j in range(c):
                v = row[j]  # raises OverflowError if it does not fit
                if _llabs(v) > LIM:
                    raise OverflowError("int64 kernel overflow")
                m[i * c + j] = v
    except BaseException:
        free(m)
        raise
    nr[0] = n
    nc[0] = c
    return m


cdef Py_ssize_t _forward(long long *m, Py_ssize_t nr, Py_ssize_t nc,
                         Py_ssize_t *pivots) except -1:
    """In-place Bareiss elimination; fills pivots, returns the rank."""
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long p, q, prev = 1, t1, t2, acc
    for c in range(nc):
        piv = -1
        for i in range(r, nr):
            if m[i * nc + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(nc):
                t1 = m[r * nc + j]
                m[r * nc + j] = m[piv * nc + j]
                m[piv * nc + j] = t1
        p = m[r * nc + c]
        for i in range(r + 1, nr):
            q = m[i * nc + c]
            for j in range(c + 1, nc):
                t1 = _mul(p, m[i * nc + j])
                t2 = _mul(q, m[r * nc + j])
                if _llabs(t1) > LIM or _llabs(t2) > LIM:
                    raise OverflowError("int64 kernel overflow")
                acc = t1 - t2
                m[i * nc + j] = acc // prev
            m[i * nc + c] = 0
        pivots[r] = c
        prev = p
        r += 1
        if r == nr:
            break
    return r


def rank(rows):
    """Rank over the rationals, or OverflowError if int64 is not enough."""
    cdef Py_ssize_t nr = 0, nc = 0, k
    cdef long long *m = _load(rows, &nr, &nc)
    cdef Py_ssize_t *pivots = <Py_ssize_t *> malloc((nr + 1) * sizeof(Py_ssize_t))
    if pivots == NULL:
        free(m)
        raise MemoryError()
    try:
        k = _forward(m, nr, nc, pivots)
    finally:
        free(m)
        free(pivots)
    return k


cdef void _primitive_row(long long *row, Py_ssize_t nc) nogil:
    cdef long long g = 0, lead = 0
    cdef Py_ssize_t j
    for j in range(nc):
        if row[j] != 0:
            if lead == 0:
                lead = row[j]
            g = _gcd(g, row[j])
            if g == 1:
                break
    if g == 0:
        return
    if lead < 0:
        g = -g
    for j in range(nc):
        row[j] = row[j] // g


def rref(rows):
    """Canonical integer reduced row echelon form (tuple of tuple rows)."""
    cdef Py_ssize_t nr = 0, nc = 0, k, i, a, j, c
    cdef long long p, q, t1, t2
    cdef long long *m = _load(rows, &nr, &nc)
    cdef Py_ssize_t *pivots = <Py_ssize_t *> malloc((nr + 1) * sizeof(Py_ssize_t))
    if pivots == NULL:
        free(m)
        raise MemoryError()
    try:
        k = _forward(m, nr, nc, pivots)
        for i in range(k - 1, -1, -1):
            c = pivots[i]
            _primitive_row(m + i * nc, nc)
            p = m[i * nc + c]
            for a in range(i):
                q = m[a * nc + c]
                if q != 0:
                    for j in range(nc):
                        t1 = _mul(p, m[a * nc + j])
                        t2 = _mul(q, m[i * nc + j])
                        if _llabs(t1) > LIM or _llabs(t2) > LIM:
                            raise OverflowError("int64 kernel overflow")
                        m[a * nc + j] = t1 - t2
        out = []
        for i in range(k):
            _primitive_row(m + i * nc, nc)
            out.append(tuple([m[i * nc + j] for j in range(nc)]))
        return tuple(out)
    finally:
        free(m)
        free(pivots)
