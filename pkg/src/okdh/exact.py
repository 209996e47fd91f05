"""Exact rational scalars and small dense linear algebra over the rationals.

Every quantity in this package is a :class:`fractions.Fraction` (always in
lowest terms, positive denominator) or an integer; nothing is ever rounded.
Vectors are tuples of Fractions or ints, matrices are tuples of row tuples.
The helpers here are deliberately small: the polytopes we handle live in
dimension <= 4 or so, where naive Gaussian elimination is perfectly adequate.
"""

from __future__ import annotations

import decimal
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ValidationError

Rational = Fraction
Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


def rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to an exact Fraction.

    Floats are rejected: a float has already lost exactness upstream.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse rational value {value!r}: {exc}") from None
    raise ValidationError(f"cannot interpret {value!r} (type {type(value).__name__}) as an exact rational")


def format_rational(x: Fraction) -> str:
    """Canonical "p/q" string ("p" when q == 1)."""
    return str(Fraction(x))


def decimal_str(x: Fraction, sig_digits: int = 20) -> str:
    """Decimal rendering of a Fraction at a fixed number of significant digits."""
    ctx = decimal.Context(prec=sig_digits)
    d = ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))
    return str(d)


def vec(values: Iterable) -> Vector:
    return tuple(rational(v) for v in values)


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch in dot product: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vadd(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> Vector:
    return tuple(c * x for x in a)


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-preserving Gaussian elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / p
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return sign * result


def solve(m: Sequence[Sequence], rhs: Sequence) -> Vector | None:
    """Solve the square system m @ x = rhs exactly; None when m is singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / p
                for c in range(col, n + 1):
                    a[r][c] -= f * a[col][c]
    return tuple(a[i][n] / a[i][i] for i in range(n))


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        col = solve(m, e)
        if col is None:
            raise ValueError("matrix is singular")
        cols.append(col)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a list of rational row vectors."""
    work = [list(map(Fraction, row)) for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
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
        r += 1
        if r == len(work):
            break
    return r


def nullspace(rows: Sequence[Sequence]) -> list[Vector]:
    """Basis of the right null space {x : rows @ x = 0}."""
    if not rows:
        return []
    ncols = len(rows[0])
    work = [list(map(Fraction, row)) for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        p = work[r][col]
        work[r] = [x / p for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -work[i][fc]
        basis.append(tuple(x))
    return basis


def scale_to_integers(values: Sequence[Fraction]) -> tuple[int, ...]:
    """Multiply by the positive lcm of denominators, then divide out the gcd.

    The result is a primitive integer vector pointing in the same direction.
    Returns the zero vector unchanged.
    """
    fracs = [Fraction(v) for v in values]
    if all(v == 0 for v in fracs):
        return tuple(0 for _ in fracs)
    lcm = 1
    for v in fracs:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in fracs]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints)
