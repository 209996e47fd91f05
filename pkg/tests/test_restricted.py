import io
from fractions import Fraction

import pytest

from okdh.catalog import builtin, divisor_builtins
from okdh.errors import ValidationError
from okdh.models import projective_space
from okdh.restricted import (
    DivisorData,
    divisor_from_dict,
    exact_order_level,
    finite_level_estimates,
    restricted_csv,
    restricted_h0,
    restricted_volume,
    restricted_volume_function,
    verify_restricted_volume_identity,
    volume_function,
    volume_of_L_minus_tE,
)

F = Fraction


def test_restricted_h0_examples():
    div = builtin("p2-line").divisor
    # order exactly ceil(3 * 1/3) = 1 along the line: monomials x1^1 x2^j, j <= 2
    assert restricted_h0(div, 3, F(1, 3)) == 3
    assert restricted_h0(div, 2, F(1, 2)) == 2
    assert restricted_h0(div, 2, F(0)) == 3
    assert restricted_h0(div, 2, F(3, 2)) == 0


def test_exact_order_level_uses_ceiling():
    div = builtin("p2-line").divisor
    assert exact_order_level(div, 3, F(1, 3)) == 1
    assert exact_order_level(div, 4, F(1, 3)) == 2
    assert exact_order_level(div, 5, F(0)) == 0


def test_volume_function_oracles():
    assert volume_function(builtin("p1-line").divisor).pieces[0].coeffs == (F(1), F(-1))
    assert volume_function(builtin("p2-line").divisor).pieces[0].coeffs == (F(1), F(-2), F(1))
    assert volume_function(builtin("p2k2-line").divisor).pieces[0].coeffs == (F(4), F(-4), F(1))
    assert volume_function(builtin("hirzebruch-ray").divisor).pieces[0].coeffs == (F(3), F(-4), F(1))


def test_volume_of_L_minus_tE_values():
    div = builtin("hirzebruch-ray").divisor
    assert volume_of_L_minus_tE(div, F(0)) == 3
    assert volume_of_L_minus_tE(div, F(1, 2)) == F(5, 4)
    assert volume_of_L_minus_tE(div, F(1)) == 0
    assert volume_of_L_minus_tE(div, F(7)) == 0  # beyond a_max: nothing left
    with pytest.raises(ValidationError):
        volume_of_L_minus_tE(div, F(-1))


def test_restricted_volume_values():
    assert restricted_volume(builtin("p2-line").divisor, F(1, 2)) == F(1, 2)
    assert restricted_volume(builtin("hirzebruch-ray").divisor, F(0)) == 2
    assert restricted_volume(builtin("hirzebruch-ray").divisor, F(1, 2)) == F(3, 2)
    assert restricted_volume(builtin("p1-line").divisor, F(1, 4)) == 1
    with pytest.raises(ValidationError):
        restricted_volume(builtin("p2-line").divisor, F(1))  # t must be below a_max


def test_restricted_volume_function_forms():
    rv = restricted_volume_function(builtin("p2-line").divisor)
    assert rv.pieces[0].coeffs == (F(1), F(-1))
    rv = restricted_volume_function(builtin("hirzebruch-ray").divisor)
    assert rv.pieces[0].coeffs == (F(2), F(-1))


def test_identity_reports_pass():
    for ex in divisor_builtins():
        report = verify_restricted_volume_identity(ex.divisor)
        assert report.passed, ex.name
        assert report.a_max_equal
        assert report.a_max_filtration == report.a_max_volume_support
        for iv in report.intervals:
            assert iv.equal


def test_finite_level_estimates_tighten():
    div = builtin("p2-line").divisor
    t = F(1, 2)
    rv = restricted_volume(div, t)
    rows = finite_level_estimates(div, t, [8, 64])
    by_m = {r[0]: r[1] for r in rows}
    assert abs(by_m[64] - rv) < abs(by_m[8] - rv)
    # running max column honors the limsup definition
    assert [r[2] for r in rows] == [by_m[8], max(by_m[8], by_m[64])]


def test_divisor_validation():
    model = projective_space(2, 1)
    with pytest.raises(ValidationError) as err:
        DivisorData(model, (0, 0), 0)
    assert "constant order" in str(err.value)
    with pytest.raises(ValidationError) as err:
        DivisorData(model, (2, 0), 0)
    assert "reduced" in str(err.value)
    with pytest.raises(ValidationError):
        DivisorData(model, (-1, 0), 0)  # negative on the polytope
    with pytest.raises(ValidationError):
        divisor_from_dict({"pieces": [{"a": [1, 0], "b": 0}, {"a": [0, 1], "b": 0}]}, model)
    with pytest.raises(ValidationError):
        divisor_from_dict({"pieces": [{"a": ["1/2", "0"], "b": 0}]}, model)


def test_restricted_csv_shape():
    div = builtin("p2-line").divisor
    fh = io.StringIO()
    restricted_csv(div, [F(0), F(1, 2), F(1)], fh)
    lines = fh.getvalue().splitlines()
    assert lines[0] == (
        "t,vol_L_minus_tE,vol_L_minus_tE_decimal,restricted_vol,restricted_vol_decimal,"
        "nu_density,nu_density_decimal"
    )
    assert lines[1] == "0,1,1,1,1,2,2"
    assert lines[2].startswith("1/2,1/4,0.25,1/2,0.5,1,1")
