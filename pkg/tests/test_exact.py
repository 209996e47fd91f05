from fractions import Fraction

import pytest

from okdh.errors import ValidationError
from okdh.exact import (
    decimal_str,
    det,
    format_rational,
    inverse,
    mat_vec,
    nullspace,
    rank,
    rational,
    scale_to_integers,
    solve,
    vec,
)


def test_rational_parsing():
    assert rational(3) == Fraction(3)
    assert rational("7/2") == Fraction(7, 2)
    assert rational("-5") == Fraction(-5)
    assert rational(Fraction(1, 3)) == Fraction(1, 3)


def test_rational_rejects_floats_and_junk():
    with pytest.raises(ValidationError):
        rational(0.5)
    with pytest.raises(ValidationError):
        rational("a/b")
    with pytest.raises(ValidationError):
        rational(None)
    # decimal strings are exact and therefore allowed
    assert rational("1.5") == Fraction(3, 2)


def test_format_round_trip(rng):
    for _ in range(50):
        x = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
        assert rational(format_rational(x)) == x


def test_decimal_str():
    assert decimal_str(Fraction(1, 2)) == "0.5"
    assert decimal_str(Fraction(3)) == "3"
    assert decimal_str(Fraction(-7, 4)) == "-1.75"
    # 20 significant digits of 1/3
    assert decimal_str(Fraction(1, 3)) == "0.33333333333333333333"


def test_det_and_solve_known():
    a = ((Fraction(2), Fraction(1)), (Fraction(1), Fraction(1)))
    assert det(a) == 1
    x = solve(a, vec([3, 2]))
    assert x == vec([1, 1])
    assert solve(((Fraction(1), Fraction(2)), (Fraction(2), Fraction(4))), vec([1, 1])) is None


def test_solve_inverse_property(rng):
    for _ in range(25):
        n = rng.randint(1, 4)
        a = tuple(tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)) for _ in range(n))
        if det(a) == 0:
            assert solve(a, vec([0] * n)) is None or n == 0
            continue
        x = vec([Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)])
        assert solve(a, mat_vec(a, x)) == x
        inv = inverse(a)
        assert mat_vec(inv, mat_vec(a, x)) == x


def test_rank_and_nullspace():
    a = ((Fraction(1), Fraction(2), Fraction(3)), (Fraction(2), Fraction(4), Fraction(6)))
    assert rank(a) == 1
    basis = nullspace(a)
    assert len(basis) == 2
    for v in basis:
        assert mat_vec(a, v) == (Fraction(0), Fraction(0))


def test_scale_to_integers():
    assert scale_to_integers(vec(["1/2", "1/3"])) == (3, 2)
    assert scale_to_integers(vec([-2, 4])) == (-1, 2)
    assert scale_to_integers(vec([0, 0])) == (0, 0)
