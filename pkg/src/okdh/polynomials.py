"""Exact univariate polynomials and piecewise polynomials over the rationals.

These back the piecewise-polynomial volume functions and density functions.
Coefficients are Fractions in ascending degree order with no trailing zeros,
so equality of Poly objects is equality of functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvariantViolation
from .exact import format_rational, rational


@dataclass(frozen=True)
class Poly:
    """Polynomial sum(coeffs[k] * t**k), coefficients exact rationals."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Sequence = ()):  # normalizes trailing zeros
        cs = [rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned degree -1."""
        return len(self.coeffs) - 1

    def __call__(self, t) -> Fraction:
        t = rational(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = rational(c)
        return Poly([c * a for a in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "Poly":
        return Poly([Fraction(0)] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def integrate(self, a, b) -> Fraction:
        f = self.antiderivative()
        return f(b) - f(a)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(format_rational(c))
            else:
                mon = "t" if k == 1 else f"t^{k}"
                if c == 1:
                    parts.append(mon)
                elif c == -1:
                    parts.append(f"-{mon}")
                else:
                    parts.append(f"{format_rational(c)}*{mon}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def lagrange_interpolate(points: Sequence[tuple]) -> Poly:
    """Unique polynomial of degree < len(points) through the given points."""
    xs = [rational(x) for x, _ in points]
    ys = [rational(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    result = Poly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = Poly([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly([-xj, 1])
                denom *= xi - xj
        result = result + basis.scale(yi / denom)
    return result


@dataclass(frozen=True)
class PiecewisePoly:
    """Piecewise polynomial on [breaks[0], breaks[-1]] with exact breakpoints.

    pieces[i] is the polynomial on [breaks[i], breaks[i+1]].  Values at
    interior breakpoints are taken from either side; continuity is the
    caller's concern (the functions built here are continuous by
    construction, and merge() asserts matching values when collapsing).
    """

    breaks: tuple[Fraction, ...]
    pieces: tuple[Poly, ...]

    def __init__(self, breaks: Sequence, pieces: Sequence[Poly]):
        bs = [rational(b) for b in breaks]
        if not bs or len(bs) != len(pieces) + 1:
            raise ValueError("need exactly one more breakpoint than pieces")
        if any(bs[i] >= bs[i + 1] for i in range(len(bs) - 1)):
            raise ValueError("breakpoints must be strictly increasing")
        object.__setattr__(self, "breaks", tuple(bs))
        object.__setattr__(self, "pieces", tuple(pieces))

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.breaks[0], self.breaks[-1]

    def piece_index(self, t: Fraction) -> int:
        lo, hi = self.support
        if not (lo <= t <= hi):
            raise ValueError(f"{format_rational(t)} outside domain [{format_rational(lo)}, {format_rational(hi)}]")
        if not self.pieces:
            raise ValueError("piecewise polynomial with a single breakpoint has no pieces to evaluate")
        for i in range(len(self.pieces)):
            if t <= self.breaks[i + 1]:
                return i
        return len(self.pieces) - 1

    def __call__(self, t) -> Fraction:
        t = rational(t)
        return self.pieces[self.piece_index(t)](t)

    def integrate(self, a=None, b=None) -> Fraction:
        lo, hi = self.support
        a = lo if a is None else rational(a)
        b = hi if b is None else rational(b)
        if a > b:
            return -self.integrate(b, a)
        total = Fraction(0)
        for i, p in enumerate(self.pieces):
            left = max(a, self.breaks[i])
            right = min(b, self.breaks[i + 1])
            if left < right:
                total += p.integrate(left, right)
        return total

    def derivative(self) -> "PiecewisePoly":
        return PiecewisePoly(self.breaks, [p.derivative() for p in self.pieces])

    def scale(self, c) -> "PiecewisePoly":
        return PiecewisePoly(self.breaks, [p.scale(c) for p in self.pieces])

    def max_degree(self) -> int:
        return max((p.degree for p in self.pieces), default=-1)

    def merge(self) -> "PiecewisePoly":
        """Collapse adjacent intervals that carry the same polynomial."""
        breaks = [self.breaks[0]]
        pieces: list[Poly] = []
        for i, p in enumerate(self.pieces):
            if pieces and pieces[-1] == p:
                breaks[-1] = self.breaks[i + 1]
                continue
            if pieces and pieces[-1](self.breaks[i]) != p(self.breaks[i]):
                raise InvariantViolation(
                    f"discontinuity at breakpoint {format_rational(self.breaks[i])}: "
                    f"{pieces[-1](self.breaks[i])} vs {p(self.breaks[i])}"
                )
            pieces.append(p)
            breaks.append(self.breaks[i + 1])
        return PiecewisePoly(breaks, pieces)

    def equals(self, other: "PiecewisePoly") -> bool:
        """Equality as functions on the common refinement of breakpoints."""
        if self.support != other.support:
            return False
        cuts = sorted(set(self.breaks) | set(other.breaks))
        for i in range(len(cuts) - 1):
            mid = (cuts[i] + cuts[i + 1]) / 2
            if self.pieces[self.piece_index(mid)] != other.pieces[other.piece_index(mid)]:
                return False
        return True
