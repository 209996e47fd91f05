from fractions import Fraction

import pytest

from okdh import plotting
from okdh.catalog import builtin
from okdh.errors import ValidationError
from okdh.measures import DiscreteMeasure, SweepRow, limit_measure_nu, nu_m
from okdh.models import projective_space
from okdh.okounkov import filtered_body, okounkov_body, slice_volume_function

F = Fraction


def test_plot_measure(tmp_path):
    f = builtin("p2-line").filtration
    path = tmp_path / "m.svg"
    plotting.plot_measure(str(path), discrete=nu_m(f, 3), density=limit_measure_nu(f), title="demo")
    assert path.stat().st_size > 0


def test_plot_measure_empty_rejected(tmp_path):
    with pytest.raises(ValidationError):
        plotting.plot_measure(str(tmp_path / "x.svg"))


def test_plot_function_with_overlay(tmp_path):
    f = builtin("p1-kink").filtration
    h = slice_volume_function(f)
    path = tmp_path / "h.svg"
    plotting.plot_function(str(path), h, "h(t)", "slice volume", extra=(h.scale(F(1, 2)), "half"))
    assert path.stat().st_size > 0


def test_plot_step(tmp_path):
    path = tmp_path / "s.svg"
    plotting.plot_step_function(str(path), [(F(0), 4), (F(1, 2), 2), (F(1), 0)], "dims")
    assert path.stat().st_size > 0


def test_plot_bodies(tmp_path):
    seg = okounkov_body(projective_space(1, 2))
    plotting.plot_body(str(tmp_path / "seg.svg"), seg, "segment")
    tri = okounkov_body(projective_space(2, 1))
    plotting.plot_body(str(tmp_path / "tri.svg"), tri, "triangle")
    cube = okounkov_body(projective_space(3, 1))
    with pytest.raises(ValidationError):
        plotting.plot_body(str(tmp_path / "c.svg"), cube, "3d")


def test_plot_transform_both_dims(tmp_path):
    plotting.plot_transform(str(tmp_path / "t1.svg"), builtin("p1-kink").filtration, "transform")
    plotting.plot_transform(str(tmp_path / "t2.svg"), builtin("p2-mixed").filtration, "transform")
    assert (tmp_path / "t1.svg").stat().st_size > 0
    assert (tmp_path / "t2.svg").stat().st_size > 0


def test_plot_dispatch(tmp_path):
    f = builtin("p1-line").filtration
    plotting.plot(nu_m(f, 4), str(tmp_path / "d.svg"))
    plotting.plot(limit_measure_nu(f), str(tmp_path / "l.svg"))
    plotting.plot(slice_volume_function(f), str(tmp_path / "h.svg"))
    for name in ("d.svg", "l.svg", "h.svg"):
        assert (tmp_path / name).stat().st_size > 0
    with pytest.raises(ValidationError):
        plotting.plot("not a measure", str(tmp_path / "x.svg"))


def test_plot_convergence(tmp_path):
    rows = [SweepRow(m, F(1, 2), F(1, m + 1)) for m in (1, 2, 4, 8)]
    path = tmp_path / "c.svg"
    plotting.plot_convergence(str(path), rows)
    assert path.stat().st_size > 0


def test_svg_output_deterministic(tmp_path):
    f = builtin("p1-line").filtration
    a = tmp_path / "a.svg"
    b = tmp_path / "b.svg"
    for path in (a, b):
        plotting.plot_measure(str(path), discrete=nu_m(f, 2), title="same")
    assert a.read_bytes() == b.read_bytes()
