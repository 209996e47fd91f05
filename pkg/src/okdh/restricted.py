"""Restricted volumes along a divisorial direction, and the limit-density identity.

A divisor is given by a single integer affine weight: w(u, m) = <a, u> + b m
is the order of vanishing of the level-m monomial u along the divisor.  The
volume function t |-> Vol(L - tE) is d! times the slice volume function of
the induced one-piece filtration; its derivative yields restricted volumes,
and the limit measure's density must equal d * RV(t) / Vol(L) interval by
interval, which verify_restricted_volume_identity checks as exact polynomial
identities (failures are report rows, not exceptions).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvariantViolation, ValidationError
from .exact import decimal_str, format_rational, rational
from .filtrations import WeightFiltration
from .measures import limit_measure_nu
from .models import ToricModel
from .okounkov import slice_volume_function
from .polynomials import PiecewisePoly, Poly


class DivisorData:
    """Reduced irreducible divisor data: primitive integer weight, one piece."""

    def __init__(self, model: ToricModel, a: Sequence[int], b: int):
        a = tuple(a)
        if len(a) != model.d or any(not isinstance(x, int) for x in a):
            raise ValidationError(f"divisor weight vector must be {model.d} integers, got {a!r}")
        if not isinstance(b, int):
            raise ValidationError(f"divisor weight offset must be an integer, got {b!r}")
        if all(x == 0 for x in a):
            raise ValidationError("divisor weight vector is zero: sections would have constant order of vanishing")
        g = 0
        for x in (*a, b):
            g = math.gcd(g, x)
        if g != 1:
            raise ValidationError(f"divisor weight {a} + {b}*m is not primitive (gcd {g}); the divisor must be reduced")
        self.model = model
        self.a = a
        self.b = b
        # non-negativity on the moment polytope is validated here
        self.filtration = WeightFiltration(model, [(a, b)])

    def a_max_limit(self) -> Fraction:
        return self.filtration.a_max_limit()


def divisor_from_dict(data: dict, model: ToricModel) -> DivisorData:
    try:
        pieces = data["pieces"]
    except (TypeError, KeyError):
        raise ValidationError("divisor spec must be a JSON object with a 'pieces' field") from None
    if len(pieces) != 1:
        raise ValidationError(f"divisor spec needs exactly one weight piece, got {len(pieces)}")
    piece = pieces[0]
    if "a" not in piece or "b" not in piece:
        raise ValidationError("divisor spec: the piece needs fields 'a' and 'b'")
    try:
        a = tuple(int(rational(x)) for x in piece["a"])
        b = int(rational(piece["b"]))
    except ValueError:
        raise ValidationError("divisor spec: weight entries must be integers") from None
    if any(rational(x) != int(rational(x)) for x in piece["a"]) or rational(piece["b"]) != b:
        raise ValidationError("divisor spec: weight entries must be integers")
    return DivisorData(model, a, b)


def exact_order_level(div: DivisorData, m: int, t) -> int:
    """Smallest achievable integer order >= m t (orders are integers here)."""
    t = rational(t)
    return -((-(t.numerator * m)) // t.denominator)


def restricted_h0(div: DivisorData, m: int, t) -> int:
    """Sections of order exactly ceil(m t) along the divisor at level m.

    Counts |{w = level}| via the two superlevel counts; on these models this
    is the rank of the restriction of the order->=level sections to the divisor.
    """
    level = exact_order_level(div, m, t)
    filt = div.filtration
    return filt.filtered_dim(m, level) - filt.filtered_dim(m, level + 1)


def volume_function(div: DivisorData) -> PiecewisePoly:
    """t |-> Vol(L - tE) = d! * slice volume, on [0, a_max]; 0 at the right end."""
    d = div.model.d
    return slice_volume_function(div.filtration).scale(math.factorial(d))


def volume_of_L_minus_tE(div: DivisorData, t) -> Fraction:
    t = rational(t)
    if t < 0:
        raise ValidationError(f"t must be non-negative, got {format_rational(t)}")
    V = volume_function(div)
    if t >= V.support[1]:
        return Fraction(0)
    return V(t)


def _derivative_checked(V: PiecewisePoly) -> PiecewisePoly:
    """Piecewise derivative, asserting one-sided derivatives agree at breakpoints.

    The volume function of a big class is differentiable; for these models
    that is exactly matching one-sided slopes, so a mismatch is an internal
    error, not a property of the input.
    """
    dV = V.derivative()
    for i in range(1, len(dV.pieces)):
        b = dV.breaks[i]
        left, right = dV.pieces[i - 1](b), dV.pieces[i](b)
        if left != right:
            raise InvariantViolation(
                f"volume function is not differentiable at t = {format_rational(b)}: "
                f"slopes {left} vs {right}"
            )
    return dV


def restricted_volume_function(div: DivisorData) -> PiecewisePoly:
    """t |-> Vol_{X|E}(L - tE) = -(1/d) d/dt Vol(L - tE), on [0, a_max]."""
    d = div.model.d
    return _derivative_checked(volume_function(div)).scale(Fraction(-1, d))


def restricted_volume(div: DivisorData, t) -> Fraction:
    t = rational(t)
    amax = div.a_max_limit()
    if not (0 <= t < amax):
        raise ValidationError(
            f"t must lie in [0, {format_rational(amax)}), got {format_rational(t)}"
        )
    return restricted_volume_function(div)(t)


def finite_level_estimates(div: DivisorData, t, m_list: Sequence[int]) -> list[tuple[int, Fraction, Fraction]]:
    """Rows (m, (d-1)!/m^(d-1) * restricted_h0, running max of that column).

    The growth rate is defined through a limsup; the running max realizes it
    on a finite level list (the limit exists here, so the max stabilizes).
    """
    d = div.model.d
    rows = []
    best: Fraction | None = None
    for m in m_list:
        est = Fraction(math.factorial(d - 1) * restricted_h0(div, m, t), m ** (d - 1))
        best = est if best is None else max(best, est)
        rows.append((m, est, best))
    return rows


@dataclass(frozen=True)
class IdentityInterval:
    left: Fraction
    right: Fraction
    nu_density: Poly
    rv_comparison: Poly
    equal: bool


@dataclass(frozen=True)
class IdentityReport:
    """Per-interval comparison of the limit density against d * RV / Vol(L)."""

    intervals: tuple[IdentityInterval, ...]
    a_max_filtration: Fraction
    a_max_volume_support: Fraction
    a_max_equal: bool

    @property
    def passed(self) -> bool:
        return self.a_max_equal and all(iv.equal for iv in self.intervals)

    def lines(self) -> list[str]:
        out = []
        for iv in self.intervals:
            status = "pass" if iv.equal else "FAIL"
            out.append(
                f"[{format_rational(iv.left)}, {format_rational(iv.right)}]: "
                f"nu density = {iv.nu_density}, d*RV/Vol = {iv.rv_comparison} ({status})"
            )
        status = "pass" if self.a_max_equal else "FAIL"
        out.append(
            f"a_max = {format_rational(self.a_max_filtration)}, "
            f"sup{{t : Vol(L - tE) > 0}} = {format_rational(self.a_max_volume_support)} ({status})"
        )
        return out


def _volume_support_sup(V: PiecewisePoly) -> Fraction:
    """sup{t : V(t) > 0} for a non-increasing V >= 0: right end of the last nonzero piece."""
    for i in range(len(V.pieces) - 1, -1, -1):
        if not V.pieces[i].is_zero():
            return V.breaks[i + 1]
    return V.breaks[0]


def verify_restricted_volume_identity(div: DivisorData) -> IdentityReport:
    """Exact per-interval check that the limit density is d * RV(t) / Vol(L),
    plus the threshold check a_max = sup{t : Vol(L - tE) > 0}."""
    d = div.model.d
    vol_L = div.model.volume_of_L()
    nu = limit_measure_nu(div.filtration)
    if nu.atom is not None:
        raise InvariantViolation("limit measure of a one-piece nonconstant weight must have no atom")
    density = nu.density
    rv = restricted_volume_function(div).scale(Fraction(d) / vol_L)

    cuts = sorted(set(density.breaks) | set(rv.breaks))
    intervals = []
    for left, right in zip(cuts, cuts[1:]):
        mid = (left + right) / 2
        p = density.pieces[density.piece_index(mid)]
        q = rv.pieces[rv.piece_index(mid)]
        intervals.append(IdentityInterval(left, right, p, q, p == q))

    amax = div.a_max_limit()
    sup_vol = _volume_support_sup(volume_function(div))
    return IdentityReport(tuple(intervals), amax, sup_vol, amax == sup_vol)


def restricted_csv(div: DivisorData, ts: Sequence, fh) -> None:
    """Rows t, Vol(L - tE), RV, nu density (rationals plus 20-digit decimals).

    Evaluation is by the piecewise polynomials, so the t = a_max row carries
    the left-limit values of RV and the density.
    """
    V = volume_function(div)
    rv = restricted_volume_function(div)
    density = limit_measure_nu(div.filtration).density
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(
        [
            "t",
            "vol_L_minus_tE",
            "vol_L_minus_tE_decimal",
            "restricted_vol",
            "restricted_vol_decimal",
            "nu_density",
            "nu_density_decimal",
        ]
    )
    for t in ts:
        t = rational(t)
        row = [format_rational(t)]
        for f in (V, rv, density):
            value = f(t)
            row.extend([format_rational(value), decimal_str(value)])
        writer.writerow(row)
