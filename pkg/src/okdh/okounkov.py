"""Okounkov bodies, concave transforms, filtered bodies, and the semigroup oracle.

The Okounkov body of a model is the flag image of its moment polytope.  A
weight filtration induces a concave transform G on that body; the superlevel
sets {G >= t} are the bodies of the graded subalgebras cut out by the
filtration.  That superlevel description is validated against a brute-force
inner approximation built from the valuation semigroup (semigroup_oracle)
rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation, ValidationError
from .exact import Vector, dot, inverse, mat_vec, rational, vec
from .filtrations import WeightFiltration
from .models import ToricModel
from .polynomials import PiecewisePoly, lagrange_interpolate
from .polytopes import RationalPolytope, convex_hull, volume


def okounkov_body(model: ToricModel) -> RationalPolytope:
    """Flag image of the moment polytope; volume is preserved (unimodularity)."""
    d = model.d
    minv = inverse(model.flag.matrix)
    minv_t = tuple(zip(*minv))
    s = model.flag.translation
    ineqs = []
    for a, b in model.P.facet_inequalities():
        a2 = mat_vec(minv_t, a)
        ineqs.append((a2, b + dot(a2, s)))
    verts = tuple(sorted(vec(model.flag.apply(tuple(int(c) for c in v), 1)) for v in model.P.vertices()))
    poly = RationalPolytope.from_hrep(ineqs, d)
    poly._verts = verts
    poly._facets = poly._ineqs  # pullback of an irredundant description along an affine bijection
    return poly


@dataclass(frozen=True)
class ConcaveTransform:
    """G(x) = min_i(<a_i, x> + b_i) on the Okounkov body."""

    pieces: tuple[tuple[Vector, Fraction], ...]
    domain: RationalPolytope

    def __call__(self, x) -> Fraction:
        x = vec(x)
        if not self.domain.contains(x):
            raise ValidationError(f"point ({', '.join(map(str, x))}) lies outside the Okounkov body")
        return min(dot(a, x) + b for a, b in self.pieces)


def concave_transform(filt: WeightFiltration) -> ConcaveTransform:
    """Pull the weight pieces through the inverse flag map onto the Okounkov body."""
    model = filt.model
    minv = inverse(model.flag.matrix)
    minv_t = tuple(zip(*minv))
    s = model.flag.translation
    pieces = []
    for a, b in filt.pieces:
        a2 = mat_vec(minv_t, a)
        pieces.append((a2, b - dot(a2, s)))
    return ConcaveTransform(tuple(pieces), okounkov_body(model))


def concave_transform_eval(filt: WeightFiltration, x) -> Fraction:
    return concave_transform(filt)(x)


def slice_body(filt: WeightFiltration, t) -> RationalPolytope:
    """{x in Okounkov body : G(x) >= t}, as an hrep polytope (may be empty)."""
    t = rational(t)
    G = concave_transform(filt)
    return G.domain.intersect([(a, t - b) for a, b in G.pieces])


def filtered_body(filt: WeightFiltration) -> RationalPolytope:
    """{(x, t) : x in Okounkov body, 0 <= t <= G(x)} in R^(d+1)."""
    d = filt.model.d
    zero = Fraction(0)
    G = concave_transform(filt)
    ineqs: list[tuple[Vector, Fraction]] = []
    for a, b in G.domain.inequalities():
        ineqs.append((tuple(a) + (zero,), b))
    ineqs.append(((zero,) * d + (Fraction(1),), zero))
    for a, b in G.pieces:
        ineqs.append((tuple(a) + (Fraction(-1),), -b))
    return RationalPolytope.from_hrep(ineqs, d + 1)


def slice_volume_function(filt: WeightFiltration) -> PiecewisePoly:
    """h(t) = volume of {G >= t} on [0, a_max], an exact piecewise polynomial.

    Breakpoint candidates are the heights of the filtered-body vertices:
    between consecutive heights the slice has a fixed combinatorial type, so
    its volume is a single polynomial of degree <= d, recovered by
    interpolation through d + 2 exact samples (one more than determines the
    degree, so a missed breakpoint cannot slip through the degree check).
    """
    d = filt.model.d
    amax = filt.a_max_limit()
    if amax == 0:
        return PiecewisePoly((Fraction(0),), ())
    heights = sorted({v[-1] for v in filtered_body(filt).vertices()} | {Fraction(0), amax})
    pieces = []
    for left, right in zip(heights, heights[1:]):
        samples = [left + (right - left) * Fraction(j, d + 1) for j in range(d + 2)]
        points = [(t, volume(slice_body(filt, t))) for t in samples]
        poly = lagrange_interpolate(points)
        if poly.degree > d:
            raise InvariantViolation(
                f"slice volume on [{left}, {right}] interpolates to degree {poly.degree} > {d}; "
                "breakpoint detection missed a combinatorial change"
            )
        pieces.append(poly)
    return PiecewisePoly(heights, pieces).merge()


def filtered_body_volume(filt: WeightFiltration) -> Fraction:
    """(d+1)-volume of the filtered body, computed two independent ways.

    Triangulation of the lifted polytope and the layer-cake integral of the
    slice volumes must agree exactly; a mismatch is an internal error.
    """
    direct = volume(filtered_body(filt))
    layered = slice_volume_function(filt).integrate()
    if direct != layered:
        raise InvariantViolation(
            f"filtered body volume mismatch: triangulation gives {direct}, layer-cake integral gives {layered}"
        )
    return direct


@dataclass(frozen=True)
class SemigroupSample:
    """Graded valuation points (m, flag(u)) for u in the level-m bases."""

    points: tuple[tuple[int, tuple[int, ...]], ...]


def semigroup_sample(model: ToricModel, m_max: int) -> SemigroupSample:
    if not isinstance(m_max, int) or m_max < 1:
        raise ValidationError(f"m_max must be a positive integer, got {m_max!r}")
    pts = []
    for m in range(1, m_max + 1):
        for u in model.graded_piece(m).basis:
            pts.append((m, model.flag_point(u, m)))
    return SemigroupSample(tuple(pts))


def _graded_weight_points(filt: WeightFiltration, m_max: int):
    """(m, weight, flag(u)/m) for all basis vectors up to level m_max; cached."""
    cache = getattr(filt, "_semigroup_cache", None)
    if cache is None:
        cache = {}
        filt._semigroup_cache = cache
    entry = cache.get(m_max)
    if entry is None:
        entry = []
        for m in range(1, m_max + 1):
            for u in filt.model.graded_piece(m).basis:
                w = min(dot(a, u) + b * m for a, b in filt.pieces)
                ratio = tuple(Fraction(c, m) for c in filt.model.flag_point(u, m))
                entry.append((m, w, ratio))
        cache[m_max] = entry
    return entry


def semigroup_oracle(filt: WeightFiltration, t, m_max: int) -> RationalPolytope:
    """Inner approximation of the slice at t from semigroup points up to m_max.

    Contained in slice_body(t) by construction; its volume climbs toward the
    slice volume as m_max grows, which is the check that the superlevel-set
    description of the graded subalgebra bodies is the right one.
    """
    t = rational(t)
    pts = [ratio for m, w, ratio in _graded_weight_points(filt, m_max) if w >= t * m]
    if not pts:
        return RationalPolytope.empty(filt.model.d)
    return convex_hull(pts)
