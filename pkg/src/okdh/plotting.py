"""Figure rendering for measures, functions, bodies, and convergence tables.

Rendering is presentation only: every curve is sampled from already-exact
data (breakpoints plus 100 interior points per interval) and axes carry the
exact endpoint values as tick labels.  Figures are a fixed 800x600 viewport;
SVG output avoids embedded timestamps so reruns stay comparable.
"""

from __future__ import annotations

from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

from .errors import ValidationError  # noqa: E402
from .exact import format_rational  # noqa: E402
from .measures import DiscreteMeasure, PiecewisePolyMeasure  # noqa: E402
from .okounkov import concave_transform, okounkov_body, slice_body  # noqa: E402
from .polynomials import PiecewisePoly  # noqa: E402
from .polytopes import RationalPolytope, _hull_2d_ccw  # noqa: E402

plt.rcParams["svg.hashsalt"] = "okdh"

FIGSIZE = (8, 6)
DPI = 100
INTERIOR_SAMPLES = 100


def _new_fig(title: str, xlabel: str, ylabel: str):
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    return fig, ax


def _save(fig, path: str) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def _exact_ticks(ax, values, axis: str = "x") -> None:
    vals = sorted(set(values))
    if len(vals) > 13:
        vals = [vals[0], vals[-1]]
    ticks = [float(v) for v in vals]
    labels = [format_rational(v) for v in vals]
    if axis == "x":
        ax.set_xticks(ticks, labels=labels)
    else:
        ax.set_yticks(ticks, labels=labels)


def _pp_samples(pp: PiecewisePoly):
    xs: list[float] = []
    ys: list[float] = []
    for i, poly in enumerate(pp.pieces):
        left, right = pp.breaks[i], pp.breaks[i + 1]
        step = (right - left) / (INTERIOR_SAMPLES + 1)
        for j in range(INTERIOR_SAMPLES + 2):
            t = left + step * j
            xs.append(float(t))
            ys.append(float(poly(t)))
    return xs, ys


def plot_measure(path: str, discrete: DiscreteMeasure | None = None, density: PiecewisePolyMeasure | None = None, title: str = "measure") -> None:
    """Atoms as stems, density as a polyline; either part may be absent."""
    has_atoms = discrete is not None and discrete.atoms
    has_density = density is not None and (density.density is not None or density.atom is not None)
    if not has_atoms and not has_density:
        raise ValidationError("nothing to plot: measure is empty")
    fig, ax = _new_fig(title, "t", "mass / density")
    ticks = []
    if has_density:
        if density.density is not None:
            xs, ys = _pp_samples(density.density)
            ax.plot(xs, ys, color="tab:blue", label="limit density")
            ticks.extend(density.density.breaks)
        if density.atom is not None:
            loc, mass = density.atom
            ax.stem([float(loc)], [float(mass)], linefmt="C0-", markerfmt="C0^", basefmt=" ")
            ticks.append(loc)
    if has_atoms:
        locs = [float(loc) for loc, _ in discrete.atoms]
        masses = [float(m) for _, m in discrete.atoms]
        ax.stem(locs, masses, linefmt="C1-", markerfmt="C1o", basefmt=" ", label="atoms")
        ticks.extend([discrete.atoms[0][0], discrete.atoms[-1][0]])
    _exact_ticks(ax, ticks)
    ax.set_ylim(bottom=0)
    ax.legend(loc="best")
    _save(fig, path)


def plot_function(path: str, pp: PiecewisePoly, ylabel: str, title: str, extra: tuple[PiecewisePoly, str] | None = None) -> None:
    fig, ax = _new_fig(title, "t", ylabel)
    xs, ys = _pp_samples(pp)
    ax.plot(xs, ys, color="tab:blue", label=ylabel)
    if extra is not None:
        other, label = extra
        xs2, ys2 = _pp_samples(other)
        ax.plot(xs2, ys2, color="tab:orange", linestyle="--", label=label)
        ax.legend(loc="best")
    _exact_ticks(ax, pp.breaks)
    _save(fig, path)


def plot_step_function(path: str, jumps: list[tuple[Fraction, int]], title: str) -> None:
    """Left-continuous non-increasing step function given as (location, new value) jumps."""
    if not jumps:
        raise ValidationError("nothing to plot: no steps")
    fig, ax = _new_fig(title, "t", "dimension")
    xs = [float(loc) for loc, _ in jumps]
    ys = [v for _, v in jumps]
    ax.step(xs, ys, where="post", color="tab:blue")
    _exact_ticks(ax, [loc for loc, _ in jumps])
    ax.set_ylim(bottom=0)
    _save(fig, path)


def plot_body(path: str, body: RationalPolytope, title: str) -> None:
    """A segment (d = 1) or polygon (d = 2) with exact vertex labels."""
    verts = body.vertices()
    if not verts:
        raise ValidationError("nothing to plot: body is empty")
    if body.ambient_dim == 1:
        fig, ax = _new_fig(title, "x", "")
        lo, hi = float(verts[0][0]), float(verts[-1][0])
        ax.plot([lo, hi], [0, 0], color="tab:blue", linewidth=3)
        ax.plot([lo, hi], [0, 0], "o", color="tab:blue")
        _exact_ticks(ax, [v[0] for v in verts])
        ax.set_yticks([])
    elif body.ambient_dim == 2:
        cycle = _hull_2d_ccw(list(verts))
        cycle.append(cycle[0])
        fig, ax = _new_fig(title, "x1", "x2")
        ax.fill([float(v[0]) for v in cycle], [float(v[1]) for v in cycle], alpha=0.25, color="tab:blue")
        ax.plot([float(v[0]) for v in cycle], [float(v[1]) for v in cycle], color="tab:blue")
        for v in verts:
            ax.annotate(f"({format_rational(v[0])}, {format_rational(v[1])})", (float(v[0]), float(v[1])), fontsize=8)
        _exact_ticks(ax, [v[0] for v in verts], "x")
        _exact_ticks(ax, [v[1] for v in verts], "y")
        ax.set_aspect("equal")
    else:
        raise ValidationError(f"can only draw bodies of dimension 1 or 2, got {body.ambient_dim}")
    _save(fig, path)


def plot_transform(path: str, filt, title: str) -> None:
    """Graph of the concave transform: a curve over a segment (d = 1) or
    superlevel-set contours over a polygon (d = 2)."""
    model = filt.model
    body = okounkov_body(model)
    if model.d == 1:
        G = concave_transform(filt)
        (lo,), (hi,) = body.vertices()[0], body.vertices()[-1]
        fig, ax = _new_fig(title, "x", "G(x)")
        n = 200
        xs = [lo + (hi - lo) * Fraction(j, n) for j in range(n + 1)]
        ax.plot([float(x) for x in xs], [float(G((x,))) for x in xs], color="tab:blue")
        _exact_ticks(ax, [lo, hi])
        ax.set_ylim(bottom=0)
    elif model.d == 2:
        amax = filt.a_max_limit()
        fig, ax = _new_fig(title, "x1", "x2")
        cycle = _hull_2d_ccw(list(body.vertices()))
        cycle.append(cycle[0])
        ax.plot([float(v[0]) for v in cycle], [float(v[1]) for v in cycle], color="black", label="Okounkov body")
        levels = [amax * Fraction(k, 6) for k in range(1, 6)] if amax > 0 else []
        for k, t in enumerate(levels):
            sl = slice_body(filt, t)
            if sl.is_empty() or sl.affine_dim() < 1:
                continue
            cyc = _hull_2d_ccw(list(sl.vertices()))
            cyc.append(cyc[0])
            color = plt.cm.viridis(k / max(len(levels) - 1, 1))
            ax.plot(
                [float(v[0]) for v in cyc],
                [float(v[1]) for v in cyc],
                color=color,
                label=f"G >= {format_rational(t)}",
            )
        ax.legend(loc="best", fontsize=8)
        ax.set_aspect("equal")
        _exact_ticks(ax, [v[0] for v in body.vertices()], "x")
        _exact_ticks(ax, [v[1] for v in body.vertices()], "y")
    else:
        raise ValidationError(f"can only draw transforms over dimension 1 or 2, got {model.d}")
    _save(fig, path)


def plot(obj, path: str, title: str = "plot") -> None:
    """Render a measure or a piecewise-polynomial function to an SVG file.

    Dispatches on the argument type; use the plot_* functions directly for
    overlays or custom labels.
    """
    if isinstance(obj, DiscreteMeasure):
        plot_measure(path, discrete=obj, title=title)
    elif isinstance(obj, PiecewisePolyMeasure):
        plot_measure(path, density=obj, title=title)
    elif isinstance(obj, PiecewisePoly):
        plot_function(path, obj, "value", title)
    else:
        raise ValidationError(f"cannot plot object of type {type(obj).__name__}")


def plot_convergence(path: str, rows, title: str = "convergence sweep") -> None:
    if not rows:
        raise ValidationError("nothing to plot: no sweep rows")
    fig, ax = _new_fig(title, "m", "Kolmogorov distance to limit")
    ms = [r.m for r in rows]
    ks = [float(r.kolmogorov) for r in rows]
    ax.plot(ms, ks, "o-", color="tab:blue")
    ax.set_xticks(ms)
    ax.set_ylim(bottom=0)
    _save(fig, path)
