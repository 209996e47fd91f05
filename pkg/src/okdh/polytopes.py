"""Exact rational polytopes: hulls, vertex enumeration, volume, lattice points.

Polytopes are stored as inequalities <a, x> >= b and/or as vertex lists, both
over exact rationals.  Conversions are lazy and cached write-once; instances
are immutable after construction, so sharing across threads is safe (a benign
race may recompute the same cache value).

Algorithms are the simple exact ones: vertex enumeration by d-subset solves,
facets of a hull by brute-force supporting-hyperplane search (monotone chain
in the plane), volume by the signed pyramid formula over facets.  All of this
is adequate for the low dimensions (d <= 4) and small facet counts used here.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ValidationError
from .exact import (
    Vector,
    dot,
    nullspace,
    rank,
    rational,
    scale_to_integers,
    solve,
    vec,
    vsub,
)

# An inequality (a, b) denotes the halfspace <a, x> >= b.
Inequality = tuple[Vector, Fraction]


def _canonical_ineq(a: Sequence, b) -> Inequality | None:
    """Scale so the normal is a primitive integer vector; None for 0 >= b with b <= 0."""
    a = vec(a)
    b = rational(b)
    prim = scale_to_integers(a)
    if all(x == 0 for x in prim):
        if b > 0:
            raise ValidationError(f"inequality 0 >= {b} is infeasible")
        return None
    j = next(i for i, x in enumerate(prim) if x != 0)
    factor = Fraction(prim[j], 1) / a[j]
    return tuple(Fraction(x) for x in prim), b * factor


def _dedupe_ineqs(ineqs: Iterable[tuple[Sequence, object]]) -> tuple[Inequality, ...]:
    best: dict[Vector, Fraction] = {}
    order: list[Vector] = []
    for a, b in ineqs:
        canon = _canonical_ineq(a, b)
        if canon is None:
            continue
        na, nb = canon
        if na not in best:
            best[na] = nb
            order.append(na)
        elif nb > best[na]:
            best[na] = nb  # same direction, tighter bound wins
    return tuple((na, best[na]) for na in order)


class RationalPolytope:
    """Bounded rational polytope in R^d.  Construct via from_hrep / convex_hull."""

    def __init__(self, ambient_dim: int, ineqs: tuple[Inequality, ...] | None, verts: tuple[Vector, ...] | None):
        if ambient_dim < 1:
            raise ValidationError(f"ambient dimension must be >= 1, got {ambient_dim}")
        self.ambient_dim = ambient_dim
        self._ineqs = ineqs
        self._verts = verts  # always the extreme points when set
        self._facets: tuple[Inequality, ...] | None = None
        self._volume: Fraction | None = None

    @classmethod
    def from_hrep(cls, ineqs: Iterable[tuple[Sequence, object]], ambient_dim: int) -> "RationalPolytope":
        deduped = _dedupe_ineqs(ineqs)
        for a, _ in deduped:
            if len(a) != ambient_dim:
                raise ValidationError(f"inequality normal {a} does not have dimension {ambient_dim}")
        return cls(ambient_dim, deduped, None)

    @classmethod
    def empty(cls, ambient_dim: int) -> "RationalPolytope":
        return cls(ambient_dim, None, ())

    # -- representations -------------------------------------------------

    def vertices(self) -> tuple[Vector, ...]:
        if self._verts is None:
            self._verts = _vertices_from_hrep(self._ineqs, self.ambient_dim)
        return self._verts

    def inequalities(self) -> tuple[Inequality, ...]:
        """Some valid hrep (the given one, or facets when built from points)."""
        if self._ineqs is None:
            self._ineqs = self.facet_inequalities()
        return self._ineqs

    def facet_inequalities(self) -> tuple[Inequality, ...]:
        """Irredundant facet description derived from the vertices."""
        if self._facets is None:
            verts = self.vertices()
            if not verts:
                # empty set: a canonical infeasible pair
                zero = tuple(Fraction(0) for _ in range(self.ambient_dim - 1))
                self._facets = (
                    ((Fraction(1),) + zero, Fraction(1)),
                    ((Fraction(-1),) + zero, Fraction(1)),
                )
            else:
                self._facets = _facets_of_point_set(verts, self.ambient_dim)
        return self._facets

    # -- predicates -------------------------------------------------------

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        return all(dot(a, x) >= b for a, b in self.inequalities())

    def contains_polytope(self, other: "RationalPolytope") -> bool:
        return all(self.contains(v) for v in other.vertices())

    def is_empty(self) -> bool:
        return not self.vertices()

    def affine_dim(self) -> int:
        verts = self.vertices()
        if not verts:
            return -1
        return rank([vsub(v, verts[0]) for v in verts[1:]])

    def is_bounded(self) -> bool:
        """Whether the hrep admits no recession direction (vrep is always bounded)."""
        if self._verts is not None and self._ineqs is None:
            return True
        return _hrep_is_bounded(self._ineqs, self.ambient_dim)

    # -- constructions ----------------------------------------------------

    def intersect(self, extra: Iterable[tuple[Sequence, object]]) -> "RationalPolytope":
        return RationalPolytope.from_hrep(tuple(self.inequalities()) + tuple(extra), self.ambient_dim)

    def dilate(self, m) -> "RationalPolytope":
        m = rational(m)
        if m <= 0:
            raise ValidationError(f"dilation factor must be positive, got {m}")
        ineqs = tuple((a, b * m) for a, b in self._ineqs) if self._ineqs is not None else None
        verts = tuple(tuple(m * c for c in v) for v in self._verts) if self._verts is not None else None
        return RationalPolytope(self.ambient_dim, ineqs, verts)

    def __repr__(self) -> str:
        n = len(self._verts) if self._verts is not None else "?"
        return f"RationalPolytope(d={self.ambient_dim}, vertices={n})"


def _hrep_is_bounded(ineqs: tuple[Inequality, ...], d: int) -> bool:
    """Test that the recession cone {x : <a_i, x> >= 0} is {0}.

    Assumes the polyhedron is nonempty (every construction path here starts
    from a nonempty set or checks emptiness separately).
    """
    normals = [a for a, _ in ineqs]
    if rank(normals) < d:
        return False
    if d == 1:
        for cand in ((Fraction(1),), (Fraction(-1),)):
            if all(dot(a, cand) >= 0 for a in normals):
                return False
        return True
    for subset in combinations(range(len(normals)), d - 1):
        basis = nullspace([normals[i] for i in subset])
        if len(basis) != 1:
            continue
        ray = basis[0]
        for cand in (ray, tuple(-c for c in ray)):
            if all(dot(a, cand) >= 0 for a in normals):
                return False
    return True


def _hrep_feasible(ineqs: tuple[Inequality, ...], d: int) -> bool:
    """Fourier-Motzkin feasibility for {x : <a_i, x> >= b_i} (exact, small systems)."""
    rows = [tuple(a) + (b,) for a, b in ineqs]
    for j in range(d):
        pos = [r for r in rows if r[j] > 0]
        neg = [r for r in rows if r[j] < 0]
        zero = [r for r in rows if r[j] == 0]
        combined = []
        for p in pos:
            for q in neg:
                # scale so the eliminated coefficients cancel; keeps >= direction
                combined.append(tuple(p[i] * -q[j] + q[i] * p[j] for i in range(len(p))))
        rows = zero + combined
    return all(b <= 0 for *_, b in rows)


def _vertices_from_hrep(ineqs: tuple[Inequality, ...], d: int) -> tuple[Vector, ...]:
    if ineqs is None:
        raise ValidationError("polytope has no representation")
    if not _hrep_is_bounded(ineqs, d):
        if not _hrep_feasible(ineqs, d):
            return ()
        raise ValidationError("polytope is unbounded (hrep admits a recession direction)")
    found: set[Vector] = set()
    for subset in combinations(range(len(ineqs)), d):
        m = [ineqs[i][0] for i in subset]
        rhs = [ineqs[i][1] for i in subset]
        x = solve(m, rhs)
        if x is not None and all(dot(a, x) >= b for a, b in ineqs):
            found.add(x)
    return tuple(sorted(found))


# -- convex hulls ----------------------------------------------------------


def convex_hull(points: Sequence[Sequence]) -> RationalPolytope:
    """Convex hull with extreme-point vrep and irredundant facet hrep.

    Lower-dimensional hulls are supported: the hrep then contains opposite
    inequality pairs pinning the affine hull plus the pulled-back facets of
    the full-dimensional projection.
    """
    pts = sorted({vec(p) for p in points})
    if not pts:
        raise ValidationError("convex hull of an empty point list")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValidationError("hull points have mixed dimensions")

    p0 = pts[0]
    dirs = [vsub(p, p0) for p in pts[1:]]
    k = rank(dirs) if dirs else 0

    if k == 0:
        ineqs = []
        for i in range(d):
            e = tuple(Fraction(int(j == i)) for j in range(d))
            ineqs.append((e, p0[i]))
            ineqs.append((tuple(-c for c in e), -p0[i]))
        poly = RationalPolytope(d, _dedupe_ineqs(ineqs), (p0,))
        poly._facets = poly._ineqs
        return poly

    if k == d:
        if d == 1:
            verts = (pts[0], pts[-1])
        elif d == 2:
            verts = tuple(sorted(_hull_2d_ccw(pts)))
        else:
            facets = _facets_of_point_set(pts, d)
            verts = tuple(
                sorted(
                    p
                    for p in pts
                    if rank([a for a, b in facets if dot(a, p) == b]) == d
                )
            )
        facets = _facets_of_point_set(verts, d)
        poly = RationalPolytope(d, facets, verts)
        poly._facets = facets
        return poly

    # degenerate: project the affine hull onto k independent coordinates
    pivot_cols = _pivot_columns(dirs)
    proj_pts = [tuple(p[j] for j in pivot_cols) for p in pts]
    sub = convex_hull(proj_pts)
    back = {tuple(p[j] for j in pivot_cols): p for p in pts}  # injective on the affine hull
    verts = tuple(sorted(back[v] for v in sub.vertices()))

    ineqs: list[tuple[Vector, Fraction]] = []
    for n in nullspace(dirs):
        c = dot(n, p0)
        ineqs.append((n, c))
        ineqs.append((tuple(-x for x in n), -c))
    for g, h in sub.facet_inequalities():
        a_full = [Fraction(0)] * d
        for gi, j in zip(g, pivot_cols):
            a_full[j] = gi
        ineqs.append((tuple(a_full), h))
    poly = RationalPolytope(d, _dedupe_ineqs(ineqs), verts)
    poly._facets = poly._ineqs
    return poly


def _pivot_columns(rows: Sequence[Vector]) -> list[int]:
    work = [list(r) for r in rows]
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        p = work[r][col]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                f = work[i][col] / p
                for c in range(col, ncols):
                    work[i][c] -= f * work[r][c]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return pivots


def _facets_of_point_set(pts: Sequence[Vector], d: int) -> tuple[Inequality, ...]:
    """Facet inequalities of a full-dimensional point set."""
    if d == 1:
        lo = min(p[0] for p in pts)
        hi = max(p[0] for p in pts)
        return _dedupe_ineqs([((Fraction(1),), lo), ((Fraction(-1),), -hi)])
    if d == 2:
        return _facets_2d(pts)
    ineqs = []
    for subset in combinations(range(len(pts)), d):
        base = pts[subset[0]]
        span = [vsub(pts[i], base) for i in subset[1:]]
        normals = nullspace(span)
        if len(normals) != 1:
            continue
        n = normals[0]
        c = dot(n, base)
        sides = [dot(n, p) - c for p in pts]
        if all(s >= 0 for s in sides):
            ineqs.append((n, c))
        elif all(s <= 0 for s in sides):
            ineqs.append((tuple(-x for x in n), -c))
    return _dedupe_ineqs(ineqs)


def _facets_2d(pts: Sequence[Vector]) -> tuple[Inequality, ...]:
    hull = _hull_2d_ccw(pts)
    ineqs = []
    for i, v in enumerate(hull):
        w = hull[(i + 1) % len(hull)]
        e = vsub(w, v)
        n = (-e[1], e[0])  # inward normal for counterclockwise order
        ineqs.append((n, dot(n, v)))
    return _dedupe_ineqs(ineqs)


def _hull_2d_ccw(pts: Sequence[Vector]) -> list[Vector]:
    """Monotone chain; returns extreme points in counterclockwise order."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return list(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[Vector] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Vector] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


# -- volume ----------------------------------------------------------------


def volume(P: RationalPolytope, apex: Sequence | None = None) -> Fraction:
    """Exact Euclidean d-volume; 0 for empty or lower-dimensional P.

    The signed pyramid formula over facets is apex-independent, so passing
    different apex points exercises different triangulations of the same
    body and must return identical rationals.
    """
    verts = P.vertices()
    d = P.ambient_dim
    if len(verts) <= d or rank([vsub(v, verts[0]) for v in verts[1:]]) < d:
        return Fraction(0)
    if d == 1:
        return verts[-1][0] - verts[0][0]
    if apex is None:
        if P._volume is not None:
            return P._volume
        c = tuple(sum(v[i] for v in verts) / len(verts) for i in range(d))
    else:
        c = vec(apex)

    total = Fraction(0)
    for n, b in P.facet_inequalities():
        fverts = [v for v in verts if dot(n, v) == b]
        if len(fverts) < d:
            continue
        j = next(i for i, x in enumerate(n) if x != 0)
        proj = [tuple(v[i] for i in range(d) if i != j) for v in fverts]
        relvol = volume(convex_hull(proj))
        if relvol == 0:
            continue
        total += (dot(n, c) - b) * relvol / abs(n[j])
    result = total / d
    if apex is None:
        P._volume = result
    return result


# -- lattice points ----------------------------------------------------------


def lattice_points(P: RationalPolytope, m: int) -> list[tuple[int, ...]]:
    """Integer points of the dilate mP in lexicographic order.

    Scan is exact: inequalities are cleared to integers, and each one prunes
    the coordinate interval at the last axis it mentions, so no final
    filtering pass is needed.
    """
    if not isinstance(m, int) or m < 1:
        raise ValidationError(f"dilation level must be a positive integer, got {m!r}")
    verts = P.vertices()  # raises on unbounded hrep
    d = P.ambient_dim
    if not verts:
        return []

    scaled: list[tuple[tuple[int, ...], int, int]] = []  # (int normal, int rhs, last axis)
    for a, b in P.inequalities():
        nums = list(a) + [b * m]
        lcm = 1
        for x in nums:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        ia = tuple(int(x * lcm) for x in a)
        ib = int(b * m * lcm)
        last = max((i for i, x in enumerate(ia) if x != 0), default=-1)
        if last == -1:
            if ib > 0:
                return []
            continue
        scaled.append((ia, ib, last))

    box = []
    for i in range(d):
        lo = min(v[i] for v in verts) * m
        hi = max(v[i] for v in verts) * m
        box.append((math.ceil(lo), math.floor(hi)))

    out: list[tuple[int, ...]] = []
    point = [0] * d

    def scan(axis: int, sums: list[int]) -> None:
        lo, hi = box[axis]
        for idx, (ia, ib, last) in enumerate(scaled):
            if last != axis:
                continue
            c = ia[axis]
            r = ib - sums[idx]
            if c > 0:
                lo = max(lo, -((-r) // c))
            else:
                hi = min(hi, r // c)
        for x in range(lo, hi + 1):
            point[axis] = x
            if axis == d - 1:
                out.append(tuple(point))
            else:
                new_sums = [s + ia[axis] * x for s, (ia, _, _) in zip(sums, scaled)]
                scan(axis + 1, new_sums)

    scan(0, [0] * len(scaled))
    return out


def bounding_box(P: RationalPolytope) -> list[tuple[Fraction, Fraction]]:
    verts = P.vertices()
    if not verts:
        raise ValidationError("bounding box of an empty polytope")
    return [
        (min(v[i] for v in verts), max(v[i] for v in verts))
        for i in range(P.ambient_dim)
    ]
