"""Fraction-free exact row reduction over the integers.

Matrices are sequences of equal-length rows of Python ints.  Forward
elimination follows Bareiss (every division below is exact), so no rationals
appear until the caller asks for them.  The reduced echelon form returned by
:func:`rref` is canonical: rows are primitive (content 1), pivots positive,
pivot columns strictly increasing.  Two row spans are equal iff their rref
rows are equal, which the rest of the package relies on for hashing and
bit-exact determinism.
"""

from __future__ import annotations

from math import gcd


def _echelon(rows):
    """Bareiss forward elimination.

    Returns (matrix, pivot_cols) where matrix[: len(pivot_cols)] is in row
    echelon form.  Destroys its copy of the input, never the input itself.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    for r in m:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    nrows = len(m)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            q = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, ncols):
                row_i[j] = (p * row_i[j] - q * row_r[j]) // prev
            row_i[c] = 0
        pivots.append(c)
        prev = p
        r += 1
        if r == nrows:
            break
    return m, pivots


def _primitive(row):
    """Divide by the content and make the first nonzero entry positive."""
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            break
    if g == 0:
        return tuple(row)
    lead = next(x for x in row if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in row)


def rank(rows) -> int:
    """Rank over the rationals."""
    _, pivots = _echelon(rows)
    return len(pivots)


def rref(rows):
    """Canonical integer reduced row echelon form (tuple of tuple rows)."""
    m, pivots = _echelon(rows)
    k = len(pivots)
    # Back-substitution stays integral: combine rows and re-primitivize.
    for i in range(k - 1, -1, -1):
        c = pivots[i]
        m[i] = list(_primitive(m[i]))
        p = m[i][c]
        for a in range(i):
            q = m[a][c]
            if q:
                row_a = m[a]
                row_i = m[i]
                m[a] = [p * row_a[j] - q * row_i[j] for j in range(len(row_a))]
    return tuple(_primitive(m[i]) for i in range(k))
