"""Builtin example models and filtrations used by the test and demo surfaces.

Each entry pairs a small toric model with a weight filtration whose limit
objects have hand-checkable closed forms.  Entries are singletons so the
per-level caches (graded pieces, weight multisets) are shared across callers.

The zero filtration is deliberately not an entry: its level measures all
equal the limit already, so distance-decay statements are vacuous for it.
It stays available by constructing WeightFiltration(model, [((0,)*d, 0)]).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .filtrations import WeightFiltration
from .models import ToricModel, from_polytope, projective_space
from .restricted import DivisorData


@dataclass(frozen=True)
class BuiltinExample:
    name: str
    description: str
    model: ToricModel
    filtration: WeightFiltration
    divisor: DivisorData | None  # set when the weight is a single integer piece


_SPECS: dict[str, tuple[str, callable]] = {}
_CACHE: dict[str, BuiltinExample] = {}


def _register(name: str, description: str):
    def deco(fn):
        _SPECS[name] = (description, fn)
        return fn

    return deco


@_register("p1-line", "P^1 with O(1); order of vanishing at a point (w = x1)")
def _p1_line():
    model = projective_space(1, 1)
    return model, [((1,), 0)], ((1,), 0)


@_register("p1-kink", "P^1 with O(2); two-slope weight min(2x, x + 1)")
def _p1_kink():
    # kink at x = 1, max over [0, 2] at the lattice endpoint: a_max(m) = 3m
    model = projective_space(1, 2)
    return model, [((2,), 0), ((1,), 1)], None


@_register("p2-line", "P^2 with O(1); order of vanishing along a coordinate line")
def _p2_line():
    model = projective_space(2, 1)
    return model, [((1, 0), 0)], ((1, 0), 0)


@_register("p2-mixed", "P^2 with O(1); two-piece weight min(x1 + x2, 2*x2)")
def _p2_mixed():
    # kink along x1 = x2, max attained at the lattice vertex (0, 1): a_max(m) = m
    model = projective_space(2, 1)
    return model, [((1, 1), 0), ((0, 2), 0)], None


@_register("p2k2-line", "P^2 with O(2); order of vanishing along a coordinate line")
def _p2k2_line():
    model = projective_space(2, 2)
    return model, [((1, 0), 0)], ((1, 0), 0)


@_register("square-diag", "P^1 x P^1 square; min of the two diagonal-slab orders")
def _square_diag():
    model = from_polytope(vertices=[(0, 0), (1, 0), (0, 1), (1, 1)])
    return model, [((1, 1), 0), ((-1, -1), 2)], None


@_register("hirzebruch-ray", "Hirzebruch trapezoid; order along the top ray divisor (w = x2)")
def _hirzebruch_ray():
    model = from_polytope(vertices=[(0, 0), (2, 0), (0, 1), (1, 1)])
    return model, [((0, 1), 0)], ((0, 1), 0)


def builtin_names() -> list[str]:
    return list(_SPECS)


def builtin(name: str) -> BuiltinExample:
    if name not in _SPECS:
        raise ValidationError(f"unknown builtin example {name!r}; known: {', '.join(_SPECS)}")
    cached = _CACHE.get(name)
    if cached is None:
        description, fn = _SPECS[name]
        model, pieces, divisor_piece = fn()
        filt = WeightFiltration(model, pieces)
        divisor = DivisorData(model, *divisor_piece) if divisor_piece is not None else None
        cached = BuiltinExample(name, description, model, filt, divisor)
        _CACHE[name] = cached
    return cached


def all_builtins() -> list[BuiltinExample]:
    return [builtin(name) for name in _SPECS]


def divisor_builtins() -> list[BuiltinExample]:
    return [ex for ex in all_builtins() if ex.divisor is not None]
