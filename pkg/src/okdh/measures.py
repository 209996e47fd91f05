"""Exact measures on the real line: atomic level measures and their limits.

nu_m places mass 1/h0(m) at each rescaled vanishing number a_j(m)/m.  The
limit measure nu is the normalized pushforward of Lebesgue measure on the
Okounkov body under the concave transform, computed exactly from the slice
volume function: density (d!/Vol L) * (-h'), plus an atom at a_max carrying
the volume of the top superlevel set (nonzero only when some weight piece is
constant, e.g. the zero filtration, where nu collapses to a point mass at 0).
"""

from __future__ import annotations

import csv
import os
from bisect import bisect_left, bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import InvariantViolation, ValidationError
from .exact import decimal_str, format_rational, rational
from .filtrations import WeightFiltration
from .okounkov import slice_body, slice_volume_function
from .polynomials import PiecewisePoly, Poly
from .polytopes import volume


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite atomic measure; atoms sorted by location, equal locations merged."""

    atoms: tuple[tuple[Fraction, Fraction], ...]

    def __init__(self, atoms: Sequence[tuple]):
        merged: dict[Fraction, Fraction] = {}
        for loc, mass in atoms:
            loc, mass = rational(loc), rational(mass)
            merged[loc] = merged.get(loc, Fraction(0)) + mass
        for loc, mass in merged.items():
            if mass <= 0:
                raise ValidationError(f"atom at {format_rational(loc)} has non-positive mass {format_rational(mass)}")
        atoms = tuple(sorted(merged.items()))
        acc = [Fraction(0)]
        for _, mass in atoms:
            acc.append(acc[-1] + mass)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "_locs", tuple(loc for loc, _ in atoms))
        object.__setattr__(self, "_acc", tuple(acc))

    def total_mass(self) -> Fraction:
        return self._acc[-1]

    def expectation(self) -> Fraction:
        return sum((loc * m for loc, m in self.atoms), Fraction(0))

    def _prefix(self):
        return self._locs, self._acc

    def cdf(self, t) -> Fraction:
        t = rational(t)
        locs, acc = self._prefix()
        return acc[bisect_right(locs, t)]

    def cdf_left(self, t) -> Fraction:
        t = rational(t)
        locs, acc = self._prefix()
        return acc[bisect_left(locs, t)]

    def support(self) -> tuple[Fraction, Fraction]:
        return self.atoms[0][0], self.atoms[-1][0]


@dataclass(frozen=True)
class PiecewisePolyMeasure:
    """Measure with a piecewise-polynomial density and an optional single atom."""

    density: PiecewisePoly | None
    atom: tuple[Fraction, Fraction] | None = None

    def total_mass(self) -> Fraction:
        mass = self.density.integrate() if self.density is not None else Fraction(0)
        if self.atom is not None:
            mass += self.atom[1]
        return mass

    def expectation(self) -> Fraction:
        total = Fraction(0)
        if self.density is not None:
            t_poly = Poly([0, 1])
            for i, p in enumerate(self.density.pieces):
                total += (t_poly * p).integrate(self.density.breaks[i], self.density.breaks[i + 1])
        if self.atom is not None:
            total += self.atom[0] * self.atom[1]
        return total

    def cdf(self, t) -> Fraction:
        t = rational(t)
        total = Fraction(0)
        if self.density is not None:
            lo, hi = self.density.support
            if t >= lo:
                total += self.density.integrate(lo, min(t, hi))
        if self.atom is not None and self.atom[0] <= t:
            total += self.atom[1]
        return total

    def cdf_left(self, t) -> Fraction:
        t = rational(t)
        total = Fraction(0)
        if self.density is not None:
            lo, hi = self.density.support
            if t > lo:
                total += self.density.integrate(lo, min(t, hi))
        if self.atom is not None and self.atom[0] < t:
            total += self.atom[1]
        return total

    def support(self) -> tuple[Fraction, Fraction]:
        points = []
        if self.density is not None:
            points.extend(self.density.support)
        if self.atom is not None:
            points.append(self.atom[0])
        return min(points), max(points)


Measure = DiscreteMeasure | PiecewisePolyMeasure


def nu_m(filt: WeightFiltration, m: int) -> DiscreteMeasure:
    """Level-m measure: mass 1/h0(m) at each a_j(m)/m.  Total mass 1."""
    values = filt.vanishing_numbers(m).values
    n = len(values)
    return DiscreteMeasure([(v / m, Fraction(1, n)) for v in values])


def mu_m(filt: WeightFiltration, m: int) -> DiscreteMeasure:
    """Rescaled level measure (h0(m)/m^d) nu_m: mass m^-d per basis vector."""
    values = filt.vanishing_numbers(m).values
    d = filt.model.d
    return DiscreteMeasure([(v / m, Fraction(1, m**d)) for v in values])


def _check_nonneg(pp: PiecewisePoly) -> None:
    """Density must be >= 0: checked at interval endpoints and, for pieces of
    degree <= 2 (all that occurs for d <= 3), at interior critical points."""
    for i, p in enumerate(pp.pieces):
        left, right = pp.breaks[i], pp.breaks[i + 1]
        for t in (left, right):
            if p(t) < 0:
                raise InvariantViolation(f"density is negative at t = {format_rational(t)}: {p(t)}")
        dp = p.derivative()
        if p.degree == 2:
            crit = -dp.coeffs[0] / dp.coeffs[1]
            if left < crit < right and p(crit) < 0:
                raise InvariantViolation(f"density is negative at t = {format_rational(crit)}: {p(crit)}")


def limit_measure_mu(filt: WeightFiltration) -> PiecewisePolyMeasure:
    """Pushforward of Lebesgue measure on the Okounkov body under G."""
    amax = filt.a_max_limit()
    top = volume(slice_body(filt, amax))
    atom = (amax, top) if top > 0 else None
    if amax == 0:
        if atom is None:
            raise InvariantViolation("zero a_max with no mass at the top slice")
        return PiecewisePolyMeasure(None, atom)
    h = slice_volume_function(filt)
    density = h.derivative().scale(-1)
    _check_nonneg(density)
    return PiecewisePolyMeasure(density, atom)


def limit_measure_nu(filt: WeightFiltration) -> PiecewisePolyMeasure:
    """Limit of the nu_m: (d!/Vol L) times limit_measure_mu.  Total mass 1."""
    mu = limit_measure_mu(filt)
    scale = Fraction(factorial(filt.model.d)) / filt.model.volume_of_L()
    density = mu.density.scale(scale) if mu.density is not None else None
    atom = (mu.atom[0], mu.atom[1] * scale) if mu.atom is not None else None
    out = PiecewisePolyMeasure(density, atom)
    if out.total_mass() != 1:
        raise InvariantViolation(f"limit measure has total mass {out.total_mass()}, expected 1")
    return out


def expectation(measure: Measure) -> Fraction:
    return measure.expectation()


def total_mass(measure: Measure) -> Fraction:
    return measure.total_mass()


def kolmogorov_distance(a: Measure, b: Measure) -> Fraction:
    """sup_t |CDF_a(t) - CDF_b(t)| for probability measures.

    With at least one side atomic the supremum is attained at an atom or
    breakpoint (between candidates one CDF is constant, so the gap is
    monotone).  For two density measures it may be irrational, so only the
    equal case is supported there.
    """
    for name, m in (("first", a), ("second", b)):
        if m.total_mass() != 1:
            raise ValidationError(f"{name} measure has total mass {format_rational(m.total_mass())}, expected 1")
    if isinstance(a, PiecewisePolyMeasure) and isinstance(b, PiecewisePolyMeasure):
        same_density = (
            (a.density is None and b.density is None)
            or (a.density is not None and b.density is not None and a.density.equals(b.density))
        )
        if same_density and a.atom == b.atom:
            return Fraction(0)
        raise ValidationError(
            "Kolmogorov distance between two distinct density measures is unsupported "
            "(the supremum may be irrational)"
        )

    candidates: set[Fraction] = set()
    for m in (a, b):
        if isinstance(m, DiscreteMeasure):
            candidates.update(loc for loc, _ in m.atoms)
        else:
            if m.density is not None:
                candidates.update(m.density.breaks)
            if m.atom is not None:
                candidates.add(m.atom[0])
    best = Fraction(0)
    for c in candidates:
        best = max(best, abs(a.cdf(c) - b.cdf(c)), abs(a.cdf_left(c) - b.cdf_left(c)))
    return best


@dataclass(frozen=True)
class SweepRow:
    m: int
    e_nu_m: Fraction
    kolmogorov: Fraction


def _thread_workers() -> int:
    raw = os.environ.get("OKDH_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(f"OKDH_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def convergence_sweep(filt: WeightFiltration, m_list: Sequence[int]) -> list[SweepRow]:
    """Per-level expectation and Kolmogorov distance to the limit measure.

    Levels are independent, so the sweep may run on a thread pool (capped by
    OKDH_THREADS); rows come back in input order and match the sequential
    result exactly.
    """
    if not m_list:
        raise ValidationError("m_list must be nonempty")
    ms = list(m_list)
    if any(not isinstance(m, int) or m < 1 for m in ms):
        raise ValidationError(f"m_list entries must be positive integers, got {ms!r}")
    if any(x >= y for x, y in zip(ms, ms[1:])):
        raise ValidationError(f"m_list must be strictly increasing, got {ms!r}")
    nu = limit_measure_nu(filt)

    def row(m: int) -> SweepRow:
        level = nu_m(filt, m)
        return SweepRow(m, level.expectation(), kolmogorov_distance(level, nu))

    workers = _thread_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(row, ms))
    return [row(m) for m in ms]


def sweep_to_csv(rows: Sequence[SweepRow], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["m", "E_nu_m", "E_nu_m_decimal", "kolmogorov", "kolmogorov_decimal"])
    for r in rows:
        writer.writerow(
            [r.m, format_rational(r.e_nu_m), decimal_str(r.e_nu_m), format_rational(r.kolmogorov), decimal_str(r.kolmogorov)]
        )
