from fractions import Fraction

import pytest

from okdh.catalog import all_builtins, builtin
from okdh.errors import ValidationError
from okdh.filtrations import WeightFiltration
from okdh.models import FlagMap, from_polytope, projective_space
from okdh.okounkov import (
    concave_transform,
    concave_transform_eval,
    filtered_body,
    filtered_body_volume,
    okounkov_body,
    semigroup_oracle,
    semigroup_sample,
    slice_body,
    slice_volume_function,
)
from okdh.polytopes import volume

F = Fraction


def test_okounkov_body_identity_flag():
    body = okounkov_body(projective_space(2, 1))
    assert body.vertices() == ((F(0), F(0)), (F(0), F(1)), (F(1), F(0)))
    assert volume(body) == F(1, 2)


def test_okounkov_body_flag_image():
    # rotation by 90 degrees plus translation by (2, 0) per level
    model = from_polytope(
        vertices=[(0, 0), (1, 0), (0, 1)],
        flag=FlagMap(((0, -1), (1, 0)), (2, 0)),
    )
    body = okounkov_body(model)
    assert sorted(body.vertices()) == [(F(1), F(0)), (F(2), F(0)), (F(2), F(1))]
    assert volume(body) == F(1, 2)  # unimodular images preserve volume


def test_concave_transform_values():
    f = builtin("p1-kink").filtration
    G = concave_transform(f)
    assert G(vec1(F(1, 2))) == 1
    assert G(vec1(F(1))) == 2
    assert G(vec1(F(3, 2))) == F(5, 2)
    assert G(vec1(F(2))) == 3
    with pytest.raises(ValidationError):
        G(vec1(F(5, 2)))  # outside the Okounkov body


def vec1(x):
    return (x,)


def test_concave_transform_is_concave(rng):
    for ex in all_builtins():
        G = concave_transform(ex.filtration)
        verts = ex.model.P.vertices()
        for _ in range(25):
            a = rng.choice(verts)
            b = rng.choice(verts)
            lam = F(rng.randint(0, 8), 8)
            mid = tuple(lam * x + (1 - lam) * y for x, y in zip(a, b))
            assert concave_transform_eval(ex.filtration, mid) >= lam * G(a) + (1 - lam) * G(b)


def test_slice_bodies():
    f = builtin("p2-line").filtration
    s = slice_body(f, F(1, 2))
    assert volume(s) == F(1, 8)
    assert slice_body(f, F(0)).vertices() == okounkov_body(f.model).vertices()
    assert slice_body(f, F(2)).is_empty()  # beyond a_max
    top = slice_body(f, F(1))
    assert top.vertices() == ((F(1), F(0)),)


def test_slice_volume_oracles():
    h = slice_volume_function(builtin("p2-line").filtration)
    assert h.breaks == (F(0), F(1))
    assert h.pieces[0].coeffs == (F(1, 2), F(-1), F(1, 2))  # (1-t)^2/2

    h = slice_volume_function(builtin("square-diag").filtration)
    assert h.pieces[0].coeffs == (F(1), F(0), F(-1))  # 1 - t^2

    h = slice_volume_function(builtin("p1-kink").filtration)
    assert h.breaks == (F(0), F(2), F(3))
    assert [p.coeffs for p in h.pieces] == [(F(2), F(-1, 2)), (F(3), F(-1))]

    for ex in all_builtins():
        h = slice_volume_function(ex.filtration)
        assert h(F(0)) == volume(ex.model.P)


def test_filtered_body_p1_line():
    f = builtin("p1-line").filtration
    body = filtered_body(f)
    assert sorted(body.vertices()) == [(F(0), F(0)), (F(1), F(0)), (F(1), F(1))]
    assert filtered_body_volume(f) == F(1, 2)


def test_filtered_body_volume_dual_route_all_builtins():
    # triangulated volume must equal the layer-cake integral; disagreement raises
    expected = {
        "p1-line": F(1, 2),
        "p1-kink": F(7, 2),
        "p2-line": F(1, 6),
        "p2-mixed": F(1, 4),
        "p2k2-line": F(4, 3),
        "square-diag": F(2, 3),
        "hirzebruch-ray": F(2, 3),
    }
    for ex in all_builtins():
        assert filtered_body_volume(ex.filtration) == expected[ex.name]


def test_semigroup_sample_and_oracle():
    f = builtin("p2-line").filtration
    sample = semigroup_sample(f.model, 2)
    assert len(sample.points) == f.model.h0(1) + f.model.h0(2)

    oracle = semigroup_oracle(f, F(1, 2), 2)
    assert sorted(oracle.vertices()) == [(F(1, 2), F(0)), (F(1, 2), F(1, 2)), (F(1), F(0))]
    assert volume(oracle) == F(1, 8)
    sb = slice_body(f, F(1, 2))
    assert sb.contains_polytope(oracle)
    assert volume(oracle) == volume(sb)  # exact already at m_max = 2 here


def test_semigroup_oracle_empty_above_max():
    f = builtin("p1-line").filtration
    oracle = semigroup_oracle(f, F(3, 2), 4)
    assert oracle.is_empty()


def test_g_m_converges():
    f = builtin("p2-line").filtration
    h = slice_volume_function(f)
    t = F(1, 4)
    g8 = F(f.filtered_dim(8, 8 * t), 8**2)
    g64 = F(f.filtered_dim(64, 64 * t), 64**2)
    assert abs(g64 - h(t)) < abs(g8 - h(t))


def test_g_m_uniform_bound(rng):
    for ex in all_builtins():
        f = ex.filtration
        lim = f.a_max_limit()
        for _ in range(20):
            m = rng.randint(1, 8)
            t = F(rng.randint(0, 16), 16) * (lim + 1)
            gm = F(f.filtered_dim(m, m * t), m**ex.model.d)
            assert 0 <= gm <= F(f.model.h0(m), m**ex.model.d)
