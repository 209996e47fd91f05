"""Multiplicative filtrations on section rings via concave piecewise-linear weights.

A filtration is the data w(u, m) = min_i(<a_i, u> + b_i m) on level-m exponent
vectors.  Min-of-affine weights are superadditive in (u, m), which gives
multiplicativity of the induced filtration for free; non-negativity on the
moment polytope (checked at the vertices, where the concave homogenized
weight attains its minimum) gives F^0 R_m = R_m.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ValidationError
from .exact import Vector, dot, format_rational, rational, vec
from .models import ToricModel
from .polytopes import RationalPolytope

Piece = tuple[Vector, Fraction]


@dataclass(frozen=True)
class VanishingNumbers:
    """Sorted multiset of weights of the level-m monomial basis."""

    m: int
    values: tuple[Fraction, ...]


class WeightFiltration:
    """Immutable filtration bound to a model; per-level weight multisets are cached."""

    def __init__(self, model: ToricModel, pieces: Sequence[tuple[Sequence, object]]):
        if not pieces:
            raise ValidationError("filtration needs at least one weight piece")
        parsed: list[Piece] = []
        for a, b in pieces:
            a = vec(a)
            if len(a) != model.d:
                raise ValidationError(f"weight piece {tuple(map(format_rational, a))} does not have dimension {model.d}")
            parsed.append((a, rational(b)))
        self.model = model
        self.pieces = tuple(parsed)
        for v in model.P.vertices():
            value = self.homogenized_weight(v)
            if value < 0:
                raise ValidationError(
                    f"weight is negative ({format_rational(value)}) at moment polytope vertex "
                    f"({', '.join(map(format_rational, v))}); weights must be non-negative on the polytope"
                )
        self._vn: dict[int, tuple[Fraction, ...]] = {}
        self._a_max_limit: Fraction | None = None

    def homogenized_weight(self, x: Sequence) -> Fraction:
        """min_i(<a_i, x> + b_i) for x in the moment polytope (the m = 1 scale)."""
        x = vec(x)
        return min(dot(a, x) + b for a, b in self.pieces)

    def weight(self, u: Sequence[int], m: int) -> Fraction:
        if not isinstance(m, int) or m < 1:
            raise ValidationError(f"level must be a positive integer, got {m!r}")
        if len(u) != self.model.d:
            raise ValidationError(f"exponent vector {tuple(u)} does not have dimension {self.model.d}")
        if any(dot(a, u) < b * m for a, b in self.model.P.inequalities()):
            raise ValidationError(f"exponent vector {tuple(u)} lies outside the dilated polytope at level {m}")
        return min(dot(a, u) + b * m for a, b in self.pieces)

    def _sorted_weights(self, m: int) -> tuple[Fraction, ...]:
        cached = self._vn.get(m)
        if cached is None:
            basis = self.model.graded_piece(m).basis
            cached = tuple(sorted(min(dot(a, u) + b * m for a, b in self.pieces) for u in basis))
            self._vn[m] = cached
        return cached

    def vanishing_numbers(self, m: int) -> VanishingNumbers:
        if not isinstance(m, int) or m < 1:
            raise ValidationError(f"level must be a positive integer, got {m!r}")
        return VanishingNumbers(m, self._sorted_weights(m))

    def filtered_dim(self, m: int, t) -> int:
        """dim F^t R_m = number of basis weights >= t."""
        values = self._sorted_weights(m)
        return len(values) - bisect_left(values, rational(t))

    def a_min(self, m: int) -> Fraction:
        return self._sorted_weights(m)[0]

    def a_max(self, m: int) -> Fraction:
        return self._sorted_weights(m)[-1]

    def mass_plus(self, m: int) -> Fraction:
        return sum((v for v in self._sorted_weights(m) if v > 0), Fraction(0))

    def a_max_limit(self) -> Fraction:
        """sup_m a_max(m)/m, computed as the exact maximum of the homogenized
        weight over the moment polytope.

        The maximum of a min-of-affine function need not sit at a polytope
        vertex, so it is read off the lifted body {(x, s) : x in P,
        0 <= s <= min_i(<a_i, x> + b_i)}, whose vertices are exact.
        """
        if self._a_max_limit is None:
            self._a_max_limit = max(v[-1] for v in self.lifted_graph_body().vertices())
        return self._a_max_limit

    def lifted_graph_body(self) -> RationalPolytope:
        """{(x, s) : x in P, 0 <= s <= homogenized weight(x)} in R^(d+1)."""
        d = self.model.d
        zero = Fraction(0)
        ineqs: list[tuple[Vector, Fraction]] = []
        for a, b in self.model.P.inequalities():
            ineqs.append((tuple(a) + (zero,), b))
        ineqs.append(((zero,) * d + (Fraction(1),), zero))
        for a, b in self.pieces:
            ineqs.append((tuple(a) + (Fraction(-1),), -b))
        return RationalPolytope.from_hrep(ineqs, d + 1)


# -- JSON specs --------------------------------------------------------------


def filtration_from_dict(data: dict, model: ToricModel) -> WeightFiltration:
    if not isinstance(data, dict) or "pieces" not in data:
        raise ValidationError("filtration spec must be a JSON object with a 'pieces' field")
    pieces = []
    for item in data["pieces"]:
        if "a" not in item or "b" not in item:
            raise ValidationError("filtration spec: each piece needs fields 'a' and 'b'")
        pieces.append((item["a"], item["b"]))
    return WeightFiltration(model, pieces)


def filtration_to_dict(filt: WeightFiltration) -> dict:
    return {
        "pieces": [
            {"a": [format_rational(x) for x in a], "b": format_rational(b)}
            for a, b in filt.pieces
        ]
    }


def load_filtration(path: str, model: ToricModel) -> WeightFiltration:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"filtration file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"filtration file {path}: invalid JSON ({exc})") from None
    return filtration_from_dict(data, model)
