"""Degeneration bookkeeping for ruled central fibres, and two exact checks.

Central fibres are lists of components: F(n; aC, aF) is a Hirzebruch surface
with the restricted hyperplane class aC*C + aF*F (degree aC^2*n + 2*aC*aF),
P(deg) a plane-type component.  Moves (point or ruling blow-ups, twists of
the hyperplane bundle, type-I transformations) are recorded at the resolution
of their effect on these labels; the running total degree is conserved and
re-checked at every state.

chain_feasible decides whether a scroll of type (a, b) can degenerate to a
chain of planes with only triple chain points, by brute force over the
admissible placements of the minimal section: positions j_1 < ... < j_a in
{1..a+b} with j_1 <= 3, j_k <= j_(k-1) + 2 and j_a >= a+b-2.

section_duality_check verifies, on exact samples, that intersecting the
rulings of a smooth quadric with a fixed plane is the linear projection of
the ruling conic in the Klein quadric from the dual plane of that plane.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt

from zappatic import linalg
from zappatic.errors import GenericityError, InternalCheckError, RangeError
from zappatic.projective import (
    ProjPoint,
    QuadricForm,
    Subspace,
    dual_plane_in_klein,
    meet,
    plucker,
    quadric_rank,
    span,
)


@dataclass(frozen=True)
class FibreComponent:
    kind: str  # "F" or "P"
    n: int = 0  # F only: F_n
    a_c: int = 0  # F only: coefficient of the section C
    a_f: int = 0  # F only: coefficient of the ruling F
    degree: int = 0  # P only

    @staticmethod
    def hirzebruch(n: int, a_c: int, a_f: int) -> "FibreComponent":
        if n < 0 or a_c < 0 or a_f < 0:
            raise RangeError("negative degree data in a terminal component")
        return FibreComponent("F", n=n, a_c=a_c, a_f=a_f)

    @staticmethod
    def plane(degree: int = 1) -> "FibreComponent":
        if degree < 0:
            raise RangeError("negative plane degree")
        return FibreComponent("P", degree=degree)

    @staticmethod
    def scroll(a: int, b: int) -> "FibreComponent":
        """Scroll of type (a, b), b >= a >= 1, as |C + aF| on F_(b-a)."""
        if not 1 <= a <= b:
            raise RangeError("scroll type needs 1 <= a <= b")
        if a + b == 1:
            return FibreComponent.plane(1)
        return FibreComponent.hirzebruch(b - a, 1, a)

    @property
    def total_degree(self) -> int:
        if self.kind == "P":
            return self.degree
        return self.a_c * self.a_c * self.n + 2 * self.a_c * self.a_f

    def scroll_type(self) -> tuple[int, int] | None:
        if self.kind == "F" and self.a_c == 1:
            return (self.a_f, self.a_f + self.n)
        return None

    def label(self) -> str:
        if self.kind == "P":
            return f"P({self.degree})"
        return f"F({self.n};{self.a_c},{self.a_f})"


@dataclass(frozen=True)
class DegenLedger:
    states: tuple[tuple[FibreComponent, ...], ...]
    moves: tuple[tuple[str, ...], ...]  # move group between consecutive states
    total_degree: int

    def __post_init__(self):
        for state in self.states:
            if sum(c.total_degree for c in state) != self.total_degree:
                raise InternalCheckError("degree not conserved along the ledger")
        if len(self.moves) != len(self.states) - 1:
            raise InternalCheckError("move groups must interleave states")

    def final_state(self) -> tuple[FibreComponent, ...]:
        return self.states[-1]

    def serialize(self) -> str:
        lines = [f"# total degree: {self.total_degree}"]
        lines.append(" ".join(c.label() for c in self.states[0]))
        for group, state in zip(self.moves, self.states[1:]):
            for mv in group:
                lines.append(f"# move: {mv}")
            lines.append(" ".join(c.label() for c in state))
        return "\n".join(lines) + "\n"

    def final_dual_graph(self):
        """Abstract dual graph of the final chain of components."""
        from zappatic.complexes import DualGraph

        k = len(self.final_state())
        return DualGraph(k, tuple((i, i + 1) for i in range(k - 1)))


def _state_replace(state, idx, replacement):
    return tuple(state[:idx]) + tuple(replacement) + tuple(state[idx + 1 :])


def _find_scroll(state, pred):
    for idx, comp in enumerate(state):
        st = comp.scroll_type()
        if st and pred(*st):
            return idx, st
    return None, None


def rat1_step(state):
    """Split a scroll of type (a, b), b >= a, into a plane and S_(a, b-1).

    Point blow-up, a twist by the opposite of the exceptional component, and
    a type-I transformation on the vertical (-1)-curve.
    """
    state = tuple(state)
    idx, st = _find_scroll(state, lambda a, b: b >= a >= 1 and a + b >= 2)
    if idx is None:
        raise RangeError("no scroll component of type (a,b) with b >= a")
    a, b = st
    # b-1 may drop below a; reorder, and a degree-1 leftover is a plane
    aa, bb = min(a, b - 1), max(a, b - 1)
    rest = FibreComponent.plane(1) if aa + bb == 1 else FibreComponent.scroll(aa, bb)
    moves = (f"blowup_point({idx})", f"twist({idx},-1)", "type_I(vertical)")
    return _state_replace(state, idx, (rest, FibreComponent.plane(1))), moves


def rat2_step(state):
    """Split a scroll of type (a, b), b >= a > 1, into a quadric and
    S_(a-1, b-1) by blowing up a ruling and twisting once."""
    state = tuple(state)
    idx, st = _find_scroll(state, lambda a, b: b >= a > 1)
    if idx is None:
        raise RangeError("requires a scroll component with b >= a > 1")
    a, b = st
    quadric = FibreComponent.scroll(1, 1)
    rest = FibreComponent.scroll(a - 1, b - 1)
    moves = (f"blowup_ruling({idx})", f"twist({idx},-1)")
    return _state_replace(state, idx, (quadric, rest)), moves


def degenerate_balanced(d: int) -> DegenLedger:
    """Degenerate the balanced degree-d scroll to a chain of d planes.

    Starts from S_(a, a+1) for odd d = 2a+1 and from S_(a, a) for even
    d = 2a; alternates ruling blow-ups (multiplicity-a twist) and point
    blow-ups (twist, type-I, twist with multiplicity a-1), pushing one plane
    into the chain per move group.
    """
    if d < 2:
        raise RangeError("requires d >= 2")
    a, rem = divmod(d, 2)
    state = (FibreComponent.scroll(a, a + rem),)
    states = [state]
    groups = []
    while True:
        scroll_idx, st = _find_scroll(state, lambda x, y: x + y >= 2)
        if scroll_idx is None:
            break
        x, y = st
        if x < y:
            # F_1-type stage: ruling blow-up plus one twist of multiplicity x
            group = (f"blowup_ruling({scroll_idx})", f"twist({scroll_idx + 1},-{x})")
            new = (FibreComponent.scroll(x, y - 1), FibreComponent.plane(1))
        else:
            # F_0-type stage: point blow-up, twist, type-I, then the
            # multiplicity x-1 twist
            group = [
                f"blowup_point({scroll_idx})",
                f"twist({scroll_idx + 1},-1)",
                "type_I(vertical)",
            ]
            if x > 1:
                group.append(f"twist({scroll_idx + 1},-{x - 1})")
            group = tuple(group)
            if x == 1:  # the quadric splits into two planes
                new = (FibreComponent.plane(1), FibreComponent.plane(1))
            else:
                new = (FibreComponent.scroll(x - 1, y), FibreComponent.plane(1))
        state = _state_replace(state, scroll_idx, new)
        states.append(state)
        groups.append(group)
    ledger = DegenLedger(tuple(states), tuple(groups), d)
    final = ledger.final_state()
    if len(final) != d or any(c.kind != "P" or c.degree != 1 for c in final):
        raise InternalCheckError("balanced degeneration did not end in unit planes")
    return ledger


def chain_feasible(a: int, b: int):
    """Can S_(a,b) degenerate to a plane chain with only triple chain points?

    Searches positions j_1 < ... < j_a of the degenerated minimal section:
    j_1 <= 3, each j_k at most j_(k-1) + 2, and j_a >= a+b-2, all within
    {1..a+b}.  Returns {"feasible", "witness"} or {"feasible", "obstruction"}.
    """
    if not 1 <= a <= b:
        raise RangeError("requires 1 <= a <= b")
    limit = a + b

    def extend(prefix):
        k = len(prefix)
        if k == a:
            if prefix[-1] >= a + b - 2:
                return tuple(prefix)
            return None
        for step in (1, 2):
            nxt = prefix[-1] + step
            if nxt <= limit:
                got = extend(prefix + [nxt])
                if got:
                    return got
        return None

    witness = None
    for j1 in (3, 2, 1):
        if j1 > limit:
            continue
        if a == 1:
            if j1 >= a + b - 2:
                witness = (j1,)
                break
            continue
        witness = extend([j1])
        if witness:
            break
    if witness:
        return {"feasible": True, "witness": witness}
    return {
        "feasible": False,
        "obstruction": "j_a range empty (a+b-2 > 2a+1)",
    }


# -- exact ruling/duality check --------------------------------------------


def _tangent_plane(q: QuadricForm, p: ProjPoint) -> Subspace:
    grad = [q.bilinear(p.coords, row) for row in _identity_rows(4)]
    return Subspace(3, linalg.nullspace([grad], ncols=4))


def _identity_rows(n):
    return [[1 if j == i else 0 for j in range(n)] for i in range(n)]


def _lines_through(q: QuadricForm, p: ProjPoint) -> tuple[Subspace, Subspace]:
    """The two lines of a rank-4 quadric surface through one of its points.

    Works inside the tangent plane: the restricted form is a rank-2 conic
    singular at p; its two linear factors are extracted with an exact
    integer square root.  Raises GenericityError when the factorization is
    irrational (the quadric then has no rational ruling through p).
    """
    if q.evaluate(p) != 0:
        raise RangeError("point does not lie on the quadric")
    t = _tangent_plane(q, p)
    if t.dim != 2:
        raise RangeError("quadric is singular at the point")
    # complete p to a basis of the tangent plane by two of its rref rows
    rows = list(t.basis)
    pr = list(p.coords)
    f0 = f1 = None
    for i in range(3):
        for j in range(i + 1, 3):
            if linalg.rank([rows[i], rows[j], pr]) == 3:
                f0, f1 = rows[i], rows[j]
                break
        if f0 is not None:
            break
    if f0 is None:
        raise InternalCheckError("tangent plane basis degenerate")
    aa = q.bilinear(f0, f0)
    bb = 2 * q.bilinear(f0, f1)
    cc = q.bilinear(f1, f1)
    # the section by the tangent plane is the binary form
    # aa x^2 + bb xy + cc y^2 in the directions f0, f1 modulo p;
    # its two roots are the two rulings
    if aa == 0:
        if bb == 0:
            raise InternalCheckError("tangent section is a double line")
        dirs = [(1, 0), (cc, -bb)]
    else:
        disc = bb * bb - 4 * aa * cc
        if disc <= 0:
            if disc == 0:
                raise InternalCheckError("tangent section is a double line")
            raise GenericityError("quadric has no real ruling through the point")
        s = isqrt(disc)
        if s * s != disc:
            raise GenericityError("quadric has no rational ruling through the point")
        dirs = [(bb - s, -2 * aa), (bb + s, -2 * aa)]
    out = []
    for dx, dy in dirs:
        w = [dx * u + dy * v for u, v in zip(f0, f1)]
        if not any(w):
            raise GenericityError("degenerate ruling direction")
        out.append(span([p, ProjPoint(w)], 3))
    if out[0].dim != 1 or out[1].dim != 1:
        raise InternalCheckError("ruling extraction failed")
    return out[0], out[1]


def _find_rational_point(q: QuadricForm, hint: ProjPoint | None) -> ProjPoint:
    if hint is not None:
        if q.evaluate(hint) != 0:
            raise RangeError("hint point does not lie on the quadric")
        return hint
    for h in range(1, 8):
        for vec in _small_vectors(4, h):
            p = ProjPoint(vec)
            if q.evaluate(p) == 0:
                return p
    raise GenericityError(
        "no small rational point found on the quadric; pass base_point"
    )


def _small_vectors(n, h):
    def rec(i):
        if i == n:
            yield []
            return
        for x in range(-h, h + 1):
            for rest in rec(i + 1):
                yield [x] + rest

    for vec in rec(0):
        if any(vec) and max(abs(x) for x in vec) == h:
            yield vec


def section_duality_check(
    quadric: QuadricForm,
    pi: Subspace,
    n_samples: int = 8,
    base_point: ProjPoint | None = None,
):
    """Sample-level check that cutting rulings with a plane is a projection.

    Samples rulings L_t of one family of the smooth quadric, intersects each
    with the plane, and verifies that the resulting points match the images
    of the Pluecker points of L_t under linear projection from the dual
    plane, through one fixed projectivity (fitted on four samples, verified
    exactly on the rest).
    """
    if quadric.ambient_dim != 3:
        raise RangeError("quadric must live on P^3")
    if quadric_rank(quadric) != 4:
        raise RangeError("requires a smooth quadric (rank 4)")
    if pi.ambient_dim != 3 or pi.dim != 2:
        raise RangeError("requires a plane in P^3")
    if n_samples < 6:
        raise RangeError("requires n_samples >= 6")
    if quadric_rank(quadric.restrict(pi)) != 3:
        raise RangeError("plane is tangent to the quadric or contains a ruling")

    p0 = _find_rational_point(quadric, base_point)
    seed_line, _other = _lines_through(quadric, p0)

    # parametrize the opposite ruling family through the points of seed_line
    u, v = seed_line.basis
    samples = []
    params = [0]
    k = 1
    while len(params) < n_samples:
        params.extend((k, -k))
        k += 1
    params = params[:n_samples]
    dual = dual_plane_in_klein(pi)
    proj_forms = linalg.nullspace(dual.basis, ncols=6)  # three forms cutting it
    for t in params:
        pt = ProjPoint([a + t * b for a, b in zip(u, v)])
        l1, l2 = _lines_through(quadric, pt)
        ruling = l2 if l1 == seed_line else l1
        cut = meet(ruling, pi)
        if cut.dim != 0:
            raise RangeError("plane contains a sampled ruling")
        x = pi.coords_of(cut.point())
        x = linalg.clear_denominators(list(x))
        pl = plucker(ruling)
        w = [sum(f[k] * pl.coords[k] for k in range(6)) for f in proj_forms]
        if not any(w):
            raise InternalCheckError("ruling projected from inside the dual plane")
        samples.append((x, linalg.primitive(w)))

    fitted = _fit_projectivity([s for s in samples[:4]])
    if fitted is None:
        return {"passed": False, "reason": "no unique projectivity on the fit set"}
    for x, w in samples[4:]:
        img = [sum(fitted[r][c] * x[c] for c in range(3)) for r in range(3)]
        if _not_parallel(img, w):
            return {"passed": False, "reason": "sample off the fitted projection"}
    return {"passed": True, "samples": len(samples)}


def _fit_projectivity(pairs):
    """3x3 matrix T with T x_i parallel to w_i for the four given pairs."""
    cols = 9 + len(pairs)
    rows = []
    for k, (x, w) in enumerate(pairs):
        for r in range(3):
            row = [0] * cols
            for c in range(3):
                row[3 * r + c] = x[c]
            row[9 + k] = -w[r]
            rows.append(row)
    kern = linalg.nullspace(rows, ncols=cols)
    if len(kern) != 1:
        return None
    flat = kern[0][:9]
    return [list(flat[0:3]), list(flat[3:6]), list(flat[6:9])]


def _not_parallel(u, w):
    for i in range(3):
        for j in range(i + 1, 3):
            if u[i] * w[j] - u[j] * w[i] != 0:
                return True
    return False
