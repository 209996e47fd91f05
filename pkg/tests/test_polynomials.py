from fractions import Fraction

import pytest

from okdh.errors import InvariantViolation
from okdh.polynomials import PiecewisePoly, Poly, lagrange_interpolate

F = Fraction


def test_poly_basics():
    p = Poly((F(1), F(2), F(3)))  # 1 + 2t + 3t^2
    assert p(F(2)) == 17
    assert p.degree == 2
    assert (p + Poly((F(-1), F(-2), F(-3)))).is_zero()
    q = Poly((F(0), F(1)))  # t
    assert (p * q).coeffs == (F(0), F(1), F(2), F(3))
    assert p.derivative().coeffs == (F(2), F(6))
    assert p.antiderivative().derivative() == p


def test_poly_integrate():
    t2 = Poly((F(0), F(0), F(1)))
    assert t2.integrate(F(0), F(1)) == F(1, 3)
    assert t2.integrate(F(1), F(0)) == F(-1, 3)


def test_poly_str():
    assert str(Poly((F(2), F(-2)))) == "2 - 2*t"
    assert str(Poly((F(0),))) == "0"


def test_lagrange_recovers_polynomial(rng):
    for _ in range(20):
        deg = rng.randint(0, 4)
        p = Poly(tuple(F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(deg + 1)))
        xs = []
        while len(xs) < deg + 1:
            x = F(rng.randint(-20, 20), rng.randint(1, 5))
            if x not in xs:
                xs.append(x)
        q = lagrange_interpolate([(x, p(x)) for x in xs])
        for x in xs:
            assert q(x) == p(x)
        if p.degree >= 0:
            assert (q + p.scale(F(-1))).is_zero()


def test_piecewise_eval_and_boundaries():
    # 2 pieces: t on [0,1], 2-t on [1,2]
    pp = PiecewisePoly((F(0), F(1), F(2)), (Poly((F(0), F(1))), Poly((F(2), F(-1)))))
    assert pp(F(1, 2)) == F(1, 2)
    assert pp(F(1)) == 1  # interior breakpoint belongs to the left piece
    assert pp(F(3, 2)) == F(1, 2)
    assert pp.support == (F(0), F(2))
    with pytest.raises(ValueError):
        pp(F(3))


def test_piecewise_integrate():
    pp = PiecewisePoly((F(0), F(1), F(2)), (Poly((F(0), F(1))), Poly((F(2), F(-1)))))
    assert pp.integrate(F(0), F(2)) == 1
    assert pp.integrate(F(1, 2), F(3, 2)) == F(3, 4)
    # outside-support parts contribute nothing
    assert pp.integrate(F(-5), F(5)) == 1


def test_piecewise_merge_and_equals():
    same = Poly((F(1), F(1)))
    pp = PiecewisePoly((F(0), F(1), F(2)), (same, same))
    merged = pp.merge()
    assert merged.breaks == (F(0), F(2))
    assert merged.equals(pp)
    other = PiecewisePoly((F(0), F(2)), (Poly((F(1), F(1))),))
    assert pp.equals(other)
    assert not pp.equals(PiecewisePoly((F(0), F(2)), (Poly((F(1),)),)))


def test_piecewise_merge_rejects_discontinuity():
    pp = PiecewisePoly((F(0), F(1), F(2)), (Poly((F(0),)), Poly((F(1),))))
    with pytest.raises(InvariantViolation):
        pp.merge()


def test_piecewise_validation():
    with pytest.raises(ValueError):
        PiecewisePoly((F(1), F(0)), (Poly((F(1),)),))
    with pytest.raises(ValueError):
        PiecewisePoly((F(0), F(1)), ())


def test_degenerate_single_breakpoint():
    pp = PiecewisePoly((F(0),), ())
    assert pp.support == (F(0), F(0))
    assert pp.integrate(F(-1), F(1)) == 0
    with pytest.raises(ValueError):
        pp(F(0))
