"""Command-line frontend: load model/filtration specs, emit CSV, JSON and SVG.

Exit codes: 0 success, 1 for bad input (missing files, malformed specs,
invalid flag values), 2 for an internal cross-check failure, which indicates
a bug rather than bad input.  All emitted CSV/JSON is deterministic:
rationals are serialized as "p/q" strings, decimals are display-only columns.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation, ValidationError
from .exact import decimal_str, format_rational
from .filtrations import WeightFiltration, load_filtration
from .measures import (
    convergence_sweep,
    limit_measure_nu,
    nu_m,
    sweep_to_csv,
)
from .models import ToricModel, load_model
from .okounkov import filtered_body, filtered_body_volume, okounkov_body
from .polynomials import PiecewisePoly
from .polytopes import volume
from .restricted import (
    DivisorData,
    divisor_from_dict,
    restricted_csv,
    restricted_volume_function,
    verify_restricted_volume_identity,
    volume_function,
)
from . import plotting

COMMANDS = (
    "vanishing-numbers",
    "measure",
    "limit-measure",
    "converge",
    "okounkov-body",
    "filtered-body",
    "restricted-volume",
    "verify-theorem5",
)
FORMATS = ("csv", "json", "svg")


@dataclass
class RunConfig:
    command: str
    model_path: str
    filtration_path: str | None = None
    m: int | None = None
    m_list: list[int] | None = None
    out_dir: str = "."
    formats: tuple[str, ...] = FORMATS


def _require(config: RunConfig, **needs) -> None:
    if needs.get("filtration") and config.filtration_path is None:
        raise ValidationError(f"--filtration is required for command {config.command!r}")
    if needs.get("m") and config.m is None:
        raise ValidationError(f"--m is required for command {config.command!r}")
    if needs.get("m_list") and not config.m_list:
        raise ValidationError(f"--m-list is required for command {config.command!r}")


def _out(config: RunConfig, name: str) -> str:
    return os.path.join(config.out_dir, name)


def _write_json(config: RunConfig, name: str, data) -> None:
    path = _out(config, name)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {path}")


def _open_csv(config: RunConfig, name: str):
    return open(_out(config, name), "w", encoding="utf-8", newline="")


def _note(path: str) -> None:
    print(f"wrote {path}")


def _load(config: RunConfig) -> tuple[ToricModel, WeightFiltration | None]:
    model = load_model(config.model_path)
    filt = None
    if config.filtration_path is not None:
        filt = load_filtration(config.filtration_path, model)
    return model, filt


def _load_divisor(config: RunConfig) -> tuple[ToricModel, DivisorData]:
    model = load_model(config.model_path)
    if config.filtration_path is None:
        raise ValidationError(f"--filtration is required for command {config.command!r}")
    try:
        with open(config.filtration_path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"filtration file not found: {config.filtration_path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"filtration file {config.filtration_path}: invalid JSON ({exc})") from None
    return model, divisor_from_dict(data, model)


def _poly_coeffs(poly) -> list[str]:
    return [format_rational(c) for c in poly.coeffs]


def _pp_json(pp: PiecewisePoly) -> dict:
    return {
        "breakpoints": [format_rational(b) for b in pp.breaks],
        "pieces": [_poly_coeffs(p) for p in pp.pieces],
    }


def _grid(amax: Fraction, n: int = 20) -> list[Fraction]:
    return [amax * Fraction(j, n) for j in range(n + 1)]


# -- command bodies ----------------------------------------------------------


def _cmd_vanishing_numbers(config: RunConfig) -> None:
    _require(config, filtration=True, m=True)
    _, filt = _load(config)
    vn = filt.vanishing_numbers(config.m)
    if "csv" in config.formats:
        with _open_csv(config, "vanishing_numbers.csv") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["j", "a_j", "a_j_decimal"])
            for j, v in enumerate(vn.values):
                writer.writerow([j, format_rational(v), decimal_str(v)])
        _note(_out(config, "vanishing_numbers.csv"))
    if "json" in config.formats:
        _write_json(
            config,
            "vanishing_numbers.json",
            {"m": vn.m, "values": [format_rational(v) for v in vn.values]},
        )
    if "svg" in config.formats:
        jumps = [(Fraction(0), len(vn.values))]
        for v in sorted(set(vn.values)):
            jumps.append((v, sum(1 for x in vn.values if x > v)))
        path = _out(config, "vanishing_numbers.svg")
        plotting.plot_step_function(path, jumps, f"dim F^t R_m at m = {vn.m}")
        _note(path)


def _cmd_measure(config: RunConfig) -> None:
    _require(config, filtration=True, m=True)
    _, filt = _load(config)
    measure = nu_m(filt, config.m)
    if "csv" in config.formats:
        with _open_csv(config, "measure.csv") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["location", "location_decimal", "mass", "mass_decimal"])
            for loc, mass in measure.atoms:
                writer.writerow([format_rational(loc), decimal_str(loc), format_rational(mass), decimal_str(mass)])
        _note(_out(config, "measure.csv"))
    if "json" in config.formats:
        _write_json(
            config,
            "measure.json",
            {"m": config.m, "atoms": [[format_rational(l), format_rational(ms)] for l, ms in measure.atoms]},
        )
    if "svg" in config.formats:
        path = _out(config, "measure.svg")
        plotting.plot_measure(
            path, discrete=measure, density=limit_measure_nu(filt), title=f"nu_m at m = {config.m} vs limit"
        )
        _note(path)


def _limit_measure_json(nu) -> dict:
    data: dict = {"atom": None}
    if nu.density is not None:
        data.update(_pp_json(nu.density))
    else:
        data.update({"breakpoints": [], "pieces": []})
    if nu.atom is not None:
        data["atom"] = [format_rational(nu.atom[0]), format_rational(nu.atom[1])]
    return data


def _cmd_limit_measure(config: RunConfig) -> None:
    _require(config, filtration=True)
    _, filt = _load(config)
    nu = limit_measure_nu(filt)
    if "csv" in config.formats:
        with _open_csv(config, "limit_measure.csv") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["piece", "left", "left_decimal", "right", "right_decimal", "density_coeffs", "density"])
            if nu.density is not None:
                for i, p in enumerate(nu.density.pieces):
                    left, right = nu.density.breaks[i], nu.density.breaks[i + 1]
                    writer.writerow(
                        [
                            i,
                            format_rational(left),
                            decimal_str(left),
                            format_rational(right),
                            decimal_str(right),
                            " ".join(_poly_coeffs(p)),
                            str(p),
                        ]
                    )
        _note(_out(config, "limit_measure.csv"))
    if "json" in config.formats:
        _write_json(config, "limit_measure.json", _limit_measure_json(nu))
    if "svg" in config.formats:
        path = _out(config, "limit_measure.svg")
        plotting.plot_measure(path, density=nu, title="limit measure")
        _note(path)


def _cmd_converge(config: RunConfig) -> None:
    _require(config, filtration=True, m_list=True)
    _, filt = _load(config)
    rows = convergence_sweep(filt, config.m_list)
    if "csv" in config.formats:
        with _open_csv(config, "converge.csv") as fh:
            sweep_to_csv(rows, fh)
        _note(_out(config, "converge.csv"))
    if "json" in config.formats:
        _write_json(
            config,
            "converge.json",
            [
                {"m": r.m, "E_nu_m": format_rational(r.e_nu_m), "kolmogorov": format_rational(r.kolmogorov)}
                for r in rows
            ],
        )
    if "svg" in config.formats:
        path = _out(config, "converge.svg")
        plotting.plot_convergence(path, rows)
        _note(path)


def _body_json(body, volume_value: Fraction) -> dict:
    d = body.ambient_dim
    return {
        "type": "polytope",
        "vertices": [[format_rational(c) for c in v] for v in body.vertices()],
        "flag_map": {"matrix": [[int(i == j) for j in range(d)] for i in range(d)], "translation": [0] * d},
        "volume": format_rational(volume_value),
    }


def _write_body_csv(config: RunConfig, name: str, body) -> None:
    with _open_csv(config, name) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"x{i+1}" for i in range(body.ambient_dim)])
        for v in body.vertices():
            writer.writerow([format_rational(c) for c in v])
    _note(_out(config, name))


def _cmd_okounkov_body(config: RunConfig) -> None:
    model, _ = _load(config)
    body = okounkov_body(model)
    if "csv" in config.formats:
        _write_body_csv(config, "okounkov_body.csv", body)
    if "json" in config.formats:
        _write_json(config, "okounkov_body.json", _body_json(body, volume(body)))
    if "svg" in config.formats:
        if model.d <= 2:
            path = _out(config, "okounkov_body.svg")
            plotting.plot_body(path, body, "Okounkov body")
            _note(path)
        else:
            print(f"note: no svg rendering for dimension {model.d}")


def _cmd_filtered_body(config: RunConfig) -> None:
    _require(config, filtration=True)
    model, filt = _load(config)
    body = filtered_body(filt)
    vol = filtered_body_volume(filt)
    if "csv" in config.formats:
        _write_body_csv(config, "filtered_body.csv", body)
    if "json" in config.formats:
        _write_json(
            config,
            "filtered_body.json",
            {
                "vertices": [[format_rational(c) for c in v] for v in body.vertices()],
                "volume": format_rational(vol),
            },
        )
    if "svg" in config.formats:
        if model.d == 1:
            path = _out(config, "filtered_body.svg")
            plotting.plot_body(path, body, "filtered Okounkov body")
            _note(path)
        elif model.d == 2:
            path = _out(config, "filtered_body.svg")
            plotting.plot_transform(path, filt, "concave transform superlevel sets")
            _note(path)
        else:
            print(f"note: no svg rendering for dimension {model.d}")


def _cmd_restricted_volume(config: RunConfig) -> None:
    model, div = _load_divisor(config)
    V = volume_function(div)
    rv = restricted_volume_function(div)
    amax = div.a_max_limit()
    ts = sorted(set(V.breaks) | set(_grid(amax)))
    if "csv" in config.formats:
        with _open_csv(config, "restricted_volume.csv") as fh:
            restricted_csv(div, ts, fh)
        _note(_out(config, "restricted_volume.csv"))
    if "json" in config.formats:
        _write_json(
            config,
            "restricted_volume.json",
            {
                "a_max": format_rational(amax),
                "volume_function": _pp_json(V),
                "restricted_volume_function": _pp_json(rv),
            },
        )
    if "svg" in config.formats:
        path = _out(config, "restricted_volume.svg")
        plotting.plot_function(path, V, "Vol(L - tE)", "volume and restricted volume", extra=(rv, "restricted volume"))
        _note(path)


def _cmd_verify_theorem5(config: RunConfig) -> None:
    model, div = _load_divisor(config)
    report = verify_restricted_volume_identity(div)
    for line in report.lines():
        print(line)
    print("overall:", "pass" if report.passed else "FAIL")
    if "csv" in config.formats:
        with _open_csv(config, "verify_theorem5.csv") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["left", "right", "nu_density_coeffs", "rv_comparison_coeffs", "equal"])
            for iv in report.intervals:
                writer.writerow(
                    [
                        format_rational(iv.left),
                        format_rational(iv.right),
                        " ".join(_poly_coeffs(iv.nu_density)),
                        " ".join(_poly_coeffs(iv.rv_comparison)),
                        iv.equal,
                    ]
                )
        _note(_out(config, "verify_theorem5.csv"))
    if "json" in config.formats:
        _write_json(
            config,
            "verify_theorem5.json",
            {
                "intervals": [
                    {
                        "left": format_rational(iv.left),
                        "right": format_rational(iv.right),
                        "nu_density": _poly_coeffs(iv.nu_density),
                        "rv_comparison": _poly_coeffs(iv.rv_comparison),
                        "equal": iv.equal,
                    }
                    for iv in report.intervals
                ],
                "a_max_filtration": format_rational(report.a_max_filtration),
                "a_max_volume_support": format_rational(report.a_max_volume_support),
                "a_max_equal": report.a_max_equal,
                "passed": report.passed,
            },
        )
    if "svg" in config.formats:
        d = model.d
        nu = limit_measure_nu(div.filtration)
        rhs = restricted_volume_function(div).scale(Fraction(d) / model.volume_of_L())
        path = _out(config, "verify_theorem5.svg")
        plotting.plot_function(path, nu.density, "nu density", "limit density vs d*RV/Vol(L)", extra=(rhs, "d*RV/Vol(L)"))
        _note(path)


_DISPATCH = {
    "vanishing-numbers": _cmd_vanishing_numbers,
    "measure": _cmd_measure,
    "limit-measure": _cmd_limit_measure,
    "converge": _cmd_converge,
    "okounkov-body": _cmd_okounkov_body,
    "filtered-body": _cmd_filtered_body,
    "restricted-volume": _cmd_restricted_volume,
    "verify-theorem5": _cmd_verify_theorem5,
}


def run(config: RunConfig) -> int:
    """Execute a config; artifacts land in config.out_dir.  Returns exit status."""
    try:
        if config.command not in _DISPATCH:
            raise ValidationError(f"unknown command {config.command!r}")
        for f in config.formats:
            if f not in FORMATS:
                raise ValidationError(f"--format: unknown format {f!r} (choose from {', '.join(FORMATS)})")
        if config.m is not None and config.m < 1:
            raise ValidationError(f"--m must be a positive integer, got {config.m}")
        if not os.path.isdir(config.out_dir):
            raise ValidationError(f"--out: output directory does not exist: {config.out_dir}")
        _DISPATCH[config.command](config)
        return 0
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def _parse_m_list(raw: str) -> list[int]:
    try:
        return [int(part) for part in raw.split(",") if part.strip() != ""]
    except ValueError:
        raise ValidationError(f"--m-list must be comma-separated integers, got {raw!r}") from None


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="okdh",
        description="Exact Okounkov bodies, filtered section rings and their limit measures on toric models.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--model", required=True, help="path to a model spec (JSON)")
    parser.add_argument("--filtration", help="path to a filtration spec (JSON)")
    parser.add_argument("--m", type=int, help="graded level")
    parser.add_argument("--m-list", help="comma-separated graded levels, e.g. 1,2,4,8")
    parser.add_argument("--out", default=".", help="output directory (default: current)")
    parser.add_argument(
        "--format",
        default="csv,json,svg",
        help="comma-separated subset of csv,json,svg (default: all)",
    )
    args = parser.parse_args(argv)
    try:
        m_list = _parse_m_list(args.m_list) if args.m_list is not None else None
        formats = tuple(f.strip() for f in args.format.split(",") if f.strip())
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    config = RunConfig(
        command=args.command,
        model_path=args.model,
        filtration_path=args.filtration,
        m=args.m,
        m_list=m_list,
        out_dir=args.out,
        formats=formats,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
