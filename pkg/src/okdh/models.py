"""Toric pairs (X, L): moment polytope, graded pieces, flag data, JSON specs.

A model is a full-dimensional lattice polytope P in R^d together with a
unimodular flag map.  Sections of mL correspond to the lattice points of mP;
the flag map sends an exponent vector u at level m to M u + m s, which is the
valuation vector the Okounkov machinery works with.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import ValidationError
from .exact import det, format_rational, rational, vec
from .polytopes import RationalPolytope, convex_hull, lattice_points, volume


@dataclass(frozen=True)
class FlagMap:
    """Unimodular integer map u |-> M u + m s on level-m exponent vectors."""

    matrix: tuple[tuple[int, ...], ...]
    translation: tuple[int, ...]

    def apply(self, u: tuple[int, ...], m: int) -> tuple[int, ...]:
        return tuple(
            sum(row[j] * u[j] for j in range(len(u))) + m * t
            for row, t in zip(self.matrix, self.translation)
        )

    @classmethod
    def identity(cls, d: int) -> "FlagMap":
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)), (0,) * d)


@dataclass(frozen=True)
class GradedPiece:
    m: int
    basis: tuple[tuple[int, ...], ...]


def _validate_flag(flag: FlagMap, d: int) -> None:
    if len(flag.matrix) != d or any(len(row) != d for row in flag.matrix):
        raise ValidationError(f"flag_map matrix must be {d}x{d}")
    if any(not isinstance(x, int) for row in flag.matrix for x in row):
        raise ValidationError("flag_map matrix entries must be integers")
    if len(flag.translation) != d or any(not isinstance(x, int) for x in flag.translation):
        raise ValidationError(f"flag_map translation must be {d} integers")
    if abs(det(flag.matrix)) != 1:
        raise ValidationError(f"flag_map matrix must be unimodular, determinant is {det(flag.matrix)}")


class ToricModel:
    """Immutable model; graded pieces are cached per level (write-once)."""

    def __init__(self, P: RationalPolytope, flag: FlagMap | None = None):
        d = P.ambient_dim
        verts = P.vertices()
        if not verts:
            raise ValidationError("moment polytope is empty")
        for v in verts:
            for c in v:
                if Fraction(c).denominator != 1:
                    raise ValidationError(f"moment polytope vertex {tuple(map(format_rational, v))} is not integral")
        if P.affine_dim() < d:
            raise ValidationError(f"moment polytope must be full-dimensional in R^{d}")
        flag = flag or FlagMap.identity(d)
        _validate_flag(flag, d)
        self.P = P
        self.d = d
        self.flag = flag
        self._pieces: dict[int, GradedPiece] = {}

    def graded_piece(self, m: int) -> GradedPiece:
        if not isinstance(m, int) or m < 0:
            raise ValidationError(f"graded level must be a non-negative integer, got {m!r}")
        piece = self._pieces.get(m)
        if piece is None:
            if m == 0:
                basis: tuple[tuple[int, ...], ...] = ((0,) * self.d,)
            else:
                basis = tuple(lattice_points(self.P, m))
            piece = GradedPiece(m, basis)
            self._pieces[m] = piece
        return piece

    def h0(self, m: int) -> int:
        return len(self.graded_piece(m).basis)

    def volume_of_L(self) -> Fraction:
        return factorial(self.d) * volume(self.P)

    def flag_point(self, u: tuple[int, ...], m: int) -> tuple[int, ...]:
        return self.flag.apply(u, m)

    def __repr__(self) -> str:
        return f"ToricModel(d={self.d}, vertices={len(self.P.vertices())})"


def projective_space(d: int, k: int) -> ToricModel:
    """(P^d, O(k)): moment polytope k times the standard simplex."""
    if not isinstance(d, int) or d < 1:
        raise ValidationError(f"dimension must be a positive integer, got {d!r}")
    if not isinstance(k, int) or k < 1:
        raise ValidationError(f"twist must be a positive integer, got {k!r}")
    ineqs = [(tuple(Fraction(int(i == j)) for j in range(d)), Fraction(0)) for i in range(d)]
    ineqs.append((tuple(Fraction(-1) for _ in range(d)), Fraction(-k)))
    return ToricModel(RationalPolytope.from_hrep(ineqs, d))


def from_polytope(vertices=None, hrep=None, flag: FlagMap | None = None) -> ToricModel:
    """Model from an explicit lattice polytope, given by vertices or inequalities."""
    if (vertices is None) == (hrep is None):
        raise ValidationError("provide exactly one of vertices or hrep")
    if vertices is not None:
        if not vertices:
            raise ValidationError("vertex list is empty")
        P = convex_hull([vec(v) for v in vertices])
    else:
        dims = {len(a) for a, _ in hrep}
        if len(dims) != 1:
            raise ValidationError("hrep inequalities have mixed dimensions")
        P = RationalPolytope.from_hrep([(vec(a), rational(b)) for a, b in hrep], dims.pop())
    return ToricModel(P, flag)


# -- JSON specs --------------------------------------------------------------


def _parse_flag(data, d: int) -> FlagMap | None:
    if data is None:
        return None
    try:
        matrix = tuple(tuple(int(x) for x in row) for row in data["matrix"])
        translation = tuple(int(x) for x in data.get("translation", [0] * d))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"flag_map: malformed specification ({exc})") from None
    return FlagMap(matrix, translation)


def model_from_dict(data: dict) -> ToricModel:
    if not isinstance(data, dict):
        raise ValidationError("model spec must be a JSON object")
    kind = data.get("type")
    if kind == "projective":
        for field in ("d", "k"):
            if field not in data:
                raise ValidationError(f"model spec: missing field {field!r}")
        model = projective_space(data["d"], data["k"])
        flag = _parse_flag(data.get("flag_map"), model.d)
        if flag is not None:
            model = ToricModel(model.P, flag)
        return model
    if kind == "polytope":
        vertices = data.get("vertices")
        hrep = data.get("hrep")
        if vertices is not None:
            d = len(vertices[0]) if vertices and vertices[0] else 0
            return from_polytope(vertices=vertices, flag=_parse_flag(data.get("flag_map"), d))
        if hrep is not None:
            parsed = []
            for item in hrep:
                if "a" not in item or "b" not in item:
                    raise ValidationError("model spec: each hrep entry needs fields 'a' and 'b'")
                parsed.append((item["a"], item["b"]))
            d = len(parsed[0][0]) if parsed else 0
            return from_polytope(hrep=parsed, flag=_parse_flag(data.get("flag_map"), d))
        raise ValidationError("model spec: polytope type needs 'vertices' or 'hrep'")
    raise ValidationError(f"model spec: unknown type {kind!r} (expected 'projective' or 'polytope')")


def model_to_dict(model: ToricModel) -> dict:
    return {
        "type": "polytope",
        "vertices": [[format_rational(c) for c in v] for v in model.P.vertices()],
        "flag_map": {
            "matrix": [list(row) for row in model.flag.matrix],
            "translation": list(model.flag.translation),
        },
    }


def load_model(path: str) -> ToricModel:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"model file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"model file {path}: invalid JSON ({exc})") from None
    return model_from_dict(data)
