"""Exact projective linear algebra over the rationals.

Points, linear subspaces, quadratic forms and Pluecker coordinates are all
stored as primitive integer data (denominators cleared, content divided out),
so equality of the underlying projective objects is plain tuple equality and
every computation reduces to integer row reduction in zappatic.linalg.

Conventions pinned here:
  * a Subspace is the row span of its canonical rref basis; projective
    dimension is (number of rows) - 1, the empty subspace has dimension -1;
  * Pluecker coordinates of a line in P^3 are the 2x2 minors of the two
    spanning rows in the order (p01, p02, p03, p12, p13, p23), so the Klein
    relation reads p01*p23 - p02*p13 + p03*p12 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from zappatic import linalg
from zappatic.errors import RangeError


def _to_int_row(coords) -> tuple[int, ...]:
    if all(isinstance(x, int) for x in coords):
        return linalg.primitive(list(coords))
    return linalg.clear_denominators(list(coords))


@dataclass(frozen=True)
class ProjPoint:
    """Point of P^r as a primitive integer coordinate vector."""

    coords: tuple[int, ...]

    def __init__(self, coords):
        row = _to_int_row(coords)
        if not any(row):
            raise ValueError("zero vector is not a projective point")
        object.__setattr__(self, "coords", row)

    @property
    def ambient_dim(self) -> int:
        return len(self.coords) - 1

    def __repr__(self):
        return f"ProjPoint({list(self.coords)})"


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of P^r spanned by its canonical basis rows."""

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    def __init__(self, ambient_dim: int, rows=()):
        rows = [list(r) for r in rows]
        for r in rows:
            if len(r) != ambient_dim + 1:
                raise RangeError("basis row length does not match ambient dimension")
        rows = [list(_to_int_row(r)) for r in rows]
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", linalg.rref(rows) if rows else ())

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    def is_empty(self) -> bool:
        return not self.basis

    def contains_point(self, p: ProjPoint) -> bool:
        if p.ambient_dim != self.ambient_dim:
            raise RangeError("ambient dimension mismatch")
        return linalg.rank(list(self.basis) + [list(p.coords)]) == len(self.basis)

    def contains(self, other: "Subspace") -> bool:
        _check_same_ambient(self, other)
        stacked = list(self.basis) + list(other.basis)
        return linalg.rank(stacked) == len(self.basis)

    def point(self) -> ProjPoint:
        if self.dim != 0:
            raise RangeError("subspace is not a single point")
        return ProjPoint(self.basis[0])

    def coords_of(self, p: ProjPoint) -> tuple[Fraction, ...]:
        """Coordinates of p in this subspace's basis (p must lie on it)."""
        cols = list(zip(*self.basis))
        sol = linalg.solve(cols, list(p.coords))
        if sol is None:
            raise RangeError("point does not lie on the subspace")
        return tuple(sol)

    def __repr__(self):
        return f"Subspace(P^{self.ambient_dim}, dim={self.dim})"


def _check_same_ambient(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise RangeError("ambient dimension mismatch")


def span(points, ambient_dim: int) -> Subspace:
    """Smallest subspace containing the given points (empty input allowed)."""
    rows = []
    for p in points:
        if p.ambient_dim != ambient_dim:
            raise RangeError("ambient dimension mismatch")
        rows.append(list(p.coords))
    return Subspace(ambient_dim, rows)


def span_subspaces(subspaces, ambient_dim: int) -> Subspace:
    rows = []
    for s in subspaces:
        if s.ambient_dim != ambient_dim:
            raise RangeError("ambient dimension mismatch")
        rows.extend(s.basis)
    return Subspace(ambient_dim, rows)


def meet(a: Subspace, b: Subspace) -> Subspace:
    """Exact intersection, computed through annihilator (dual) bases."""
    _check_same_ambient(a, b)
    n = a.ambient_dim + 1
    if a.is_empty() or b.is_empty():
        return Subspace(a.ambient_dim)
    ann = list(linalg.nullspace(a.basis, ncols=n)) + list(
        linalg.nullspace(b.basis, ncols=n)
    )
    return Subspace(a.ambient_dim, linalg.nullspace(ann, ncols=n))


@dataclass(frozen=True)
class QuadricForm:
    """Nonzero quadratic form on P^r as a primitive symmetric integer matrix.

    The matrix is twice the polarization when that is what it takes to stay
    integral; all uses (rank, vanishing, tangency) are scale invariant.
    """

    matrix: tuple[tuple[int, ...], ...]

    def __init__(self, matrix):
        rows = [[Fraction(x) for x in r] for r in matrix]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise RangeError("quadric matrix must be square")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise RangeError("quadric matrix must be symmetric")
        flat = linalg.clear_denominators([rows[i][j] for i in range(n) for j in range(n)])
        if not any(flat):
            raise RangeError("quadric form must be nonzero")
        mat = tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))
        object.__setattr__(self, "matrix", mat)

    @property
    def ambient_dim(self) -> int:
        return len(self.matrix) - 1

    def evaluate(self, p: ProjPoint) -> int:
        return self.bilinear(p.coords, p.coords)

    def bilinear(self, u, v) -> int:
        return sum(
            u[i] * self.matrix[i][j] * v[j]
            for i in range(len(self.matrix))
            for j in range(len(self.matrix))
        )

    def restrict(self, s: Subspace) -> "QuadricForm":
        """Form induced on the subspace, in its basis coordinates."""
        b = s.basis
        return QuadricForm(
            [[self.bilinear(b[i], b[j]) for j in range(len(b))] for i in range(len(b))]
        )

    def congruent(self, m) -> "QuadricForm":
        """Form after substituting x -> M x, i.e. the matrix M^T A M."""
        n = len(self.matrix)
        prod = [
            [
                sum(m[k][i] * self.matrix[k][l] for k in range(n))
                for l in range(n)
            ]
            for i in range(n)
        ]
        out = [
            [sum(prod[i][l] * m[l][j] for l in range(n)) for j in range(n)]
            for i in range(n)
        ]
        return QuadricForm(out)


def quadric_rank(q: QuadricForm) -> int:
    """Rank of the symmetric matrix over the rationals."""
    return linalg.rank([list(r) for r in q.matrix])


def _quadric_monomials(r: int):
    return list(combinations_with_replacement(range(r + 1), 2))


def _evaluation_row(coords, monomials):
    return [coords[i] * coords[j] for (i, j) in monomials]


def _form_from_coeffs(coeffs, r: int) -> QuadricForm:
    n = r + 1
    mat = [[0] * n for _ in range(n)]
    for c, (i, j) in zip(coeffs, _quadric_monomials(r)):
        if i == j:
            mat[i][i] = 2 * c
        else:
            mat[i][j] = c
            mat[j][i] = c
    return QuadricForm(mat)


def quadrics_through(samples, forced_subspaces, ambient_dim: int):
    """Linear system of quadrics through the samples and forced subspaces.

    Containing a subspace is imposed by vanishing on a spanning set of its
    degree-2 Veronese image (basis points b_i and the midpoints b_i + b_j).
    Returns (projective dimension, basis of QuadricForms); dimension is -1
    for the empty system.
    """
    monomials = _quadric_monomials(ambient_dim)
    rows = []
    for p in samples:
        if p.ambient_dim != ambient_dim:
            raise RangeError("ambient dimension mismatch")
        rows.append(_evaluation_row(p.coords, monomials))
    for s in forced_subspaces:
        if s.ambient_dim != ambient_dim:
            raise RangeError("ambient dimension mismatch")
        b = s.basis
        for i in range(len(b)):
            rows.append(_evaluation_row(b[i], monomials))
        for i, j in combinations(range(len(b)), 2):
            rows.append(_evaluation_row([x + y for x, y in zip(b[i], b[j])], monomials))
    kernel = linalg.nullspace(rows, ncols=len(monomials))
    basis = [_form_from_coeffs(v, ambient_dim) for v in kernel]
    return len(basis) - 1, basis


# -- Pluecker coordinates -------------------------------------------------

_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class PluckerPoint:
    """Point of P^5 on the Klein quadric, as primitive integers."""

    coords: tuple[int, ...]

    def __init__(self, coords):
        row = _to_int_row(coords)
        if len(row) != 6 or not any(row):
            raise ValueError("need a nonzero 6-vector")
        object.__setattr__(self, "coords", row)
        if klein_value(row) != 0:
            raise ValueError("coordinates violate the Klein relation")

    def as_point(self) -> ProjPoint:
        return ProjPoint(self.coords)


def klein_value(c) -> int:
    return c[0] * c[5] - c[1] * c[4] + c[2] * c[3]


def klein_form() -> QuadricForm:
    m = [[0] * 6 for _ in range(6)]
    m[0][5] = m[5][0] = 1
    m[1][4] = m[4][1] = -1
    m[2][3] = m[3][2] = 1
    return QuadricForm(m)


def plucker(line: Subspace) -> PluckerPoint:
    """Pluecker image of a line in P^3."""
    if line.ambient_dim != 3 or line.dim != 1:
        raise RangeError("need a line (dim 1) in P^3")
    u, v = line.basis
    return PluckerPoint([u[i] * v[j] - u[j] * v[i] for (i, j) in _PAIRS])


def dual_plane_in_klein(pi: Subspace) -> Subspace:
    """Plane of P^5 swept by the Pluecker images of the lines of a plane.

    Spanned by the images of the three lines joining pairs of basis points;
    it lies entirely inside the Klein quadric.
    """
    if pi.ambient_dim != 3 or pi.dim != 2:
        raise RangeError("need a plane (dim 2) in P^3")
    a, b, c = pi.basis
    imgs = []
    for u, v in ((a, b), (a, c), (b, c)):
        line = Subspace(3, [u, v])
        imgs.append(list(plucker(line).coords))
    out = Subspace(5, imgs)
    if out.dim != 2:
        raise RangeError("degenerate plane basis")
    return out
