"""Figure rendering for datasets, closures and gaps.

Figures are built with the object-oriented matplotlib API (no pyplot, no
global figure registry) and saved as SVG with a fixed hash salt and no date
metadata, so rendering the same data twice produces byte-identical files.
Every marker group carries a ``gid`` that survives into the SVG as an
element id: ``observations``, ``generated``, ``gap``, ``frontier``,
``segments`` and one per extra group.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import matplotlib
from matplotlib.figure import Figure
from matplotlib.ticker import MaxNLocator

from .core import BoundingBox, Dataset, DimensionError, Point
from .ppslab import AxiomOrder, axiom_closure, generation_gap
from .scenarios import FigureSpec, figure_spec

__all__ = ["render", "render_scenario", "save_svg"]

_RC = {
    "svg.hashsalt": "dealab",
    "figure.figsize": (6.4, 4.8),
    "font.size": 9.0,
    "axes.titlesize": 10.0,
}


def _axis_accessor(axis: str, m: int, p: int):
    """Map an axis name like ``x2`` or ``y1`` to a coordinate accessor."""
    if len(axis) < 2 or axis[0] not in ("x", "y") or not axis[1:].isdigit():
        raise DimensionError(f"axis {axis!r} is not of the form x<i> or y<r>")
    kind = axis[0]
    index = int(axis[1:]) - 1
    bound = m if kind == "x" else p
    if not 0 <= index < bound:
        raise DimensionError(f"axis {axis!r} is out of range for this dataset")
    if kind == "x":
        return lambda point: point.inputs[index]
    return lambda point: point.outputs[index]


def _project(points: Sequence[Point], ax_x, ax_y) -> tuple[list[float], list[float]]:
    xs = [float(ax_x(point)) for point in points]
    ys = [float(ax_y(point)) for point in points]
    return xs, ys


def _frontier_polyline(data: Dataset, xmax: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Boundary of the single-input single-output real technology.

    Vertical rise at the smallest observed input, upper concave chain across
    the observations, then a horizontal run at the best output level out to
    ``xmax``.
    """
    best: dict[Fraction, Fraction] = {}
    for dmu in data.dmus:
        x, y = dmu.inputs[0], dmu.outputs[0]
        if x not in best or y > best[x]:
            best[x] = y
    pts = sorted(best.items())

    def cross(o, a, b) -> Fraction:
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    hull: list[tuple[Fraction, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2 and cross(hull[-2], hull[-1], pt) >= 0:
            hull.pop()
        hull.append(pt)
    peak = max(range(len(hull)), key=lambda i: (hull[i][1], -hull[i][0]))
    hull = hull[: peak + 1]

    polyline = [(hull[0][0], Fraction(0))] + hull
    tail_x = max(xmax, hull[-1][0])
    if tail_x > hull[-1][0]:
        polyline.append((tail_x, hull[-1][1]))
    return polyline


def render(spec: FigureSpec) -> Figure:
    """Draw the figure a FigureSpec describes and return it unsaved."""
    data = spec.dataset
    ax_x = _axis_accessor(spec.axes[0], data.m, data.p)
    ax_y = _axis_accessor(spec.axes[1], data.m, data.p)

    with matplotlib.rc_context(_RC):
        fig = Figure()
        ax = fig.add_subplot()

        observed = [dmu.point for dmu in data.dmus]

        for a, b in spec.segments:
            xs, ys = _project([a, b], ax_x, ax_y)
            ax.plot(xs, ys, linestyle="--", linewidth=1.0, color="0.55", gid="segments", zorder=1)

        if "frontier" in spec.overlays:
            if data.m != 1 or data.p != 1 or spec.axes != ("x1", "y1"):
                raise DimensionError(
                    "frontier overlay needs one input, one output and the default axes"
                )
            xmax = Fraction(spec.box.input_max[0]) if spec.box else max(d.inputs[0] for d in data.dmus)
            polyline = _frontier_polyline(data, xmax)
            ax.plot(
                [float(x) for x, _ in polyline],
                [float(y) for _, y in polyline],
                color="tab:green",
                linewidth=1.5,
                gid="frontier",
                zorder=2,
                label="frontier",
            )

        needs_closure = "closure" in spec.overlays or "gap" in spec.overlays
        if needs_closure:
            box = spec.box if spec.box is not None else BoundingBox.from_dataset(data)
            if "closure" in spec.overlays:
                order = AxiomOrder(iterate_to_fixpoint=spec.fixpoint)
                state = axiom_closure(data, box, order)
                generated = sorted(state.points - set(observed))
                if generated:
                    xs, ys = _project(generated, ax_x, ax_y)
                    ax.scatter(
                        xs,
                        ys,
                        marker="s",
                        s=30,
                        facecolors="none",
                        edgecolors="tab:blue",
                        gid="generated",
                        zorder=3,
                        label="generated",
                    )
            if "gap" in spec.overlays:
                gap = generation_gap(data, box)
                if gap:
                    xs, ys = _project(sorted(gap), ax_x, ax_y)
                    ax.scatter(
                        xs,
                        ys,
                        marker="x",
                        s=40,
                        color="tab:red",
                        gid="gap",
                        zorder=4,
                        label="gap",
                    )

        for label, points in spec.extras:
            xs, ys = _project(sorted(points), ax_x, ax_y)
            ax.scatter(
                xs,
                ys,
                marker="D",
                s=36,
                facecolors="none",
                edgecolors="tab:purple",
                gid=label,
                zorder=5,
                label=label,
            )

        xs, ys = _project(observed, ax_x, ax_y)
        ax.scatter(xs, ys, marker="o", s=32, color="black", gid="observations", zorder=6)
        for dmu in data.dmus:
            ax.annotate(
                dmu.name,
                (float(ax_x(dmu.point)), float(ax_y(dmu.point))),
                textcoords="offset points",
                xytext=(5, 5),
                fontsize=8,
            )

        ax.set_xlabel(spec.axes[0])
        ax.set_ylabel(spec.axes[1])
        if spec.title:
            ax.set_title(spec.title)
        ax.xaxis.set_major_locator(MaxNLocator(integer=True))
        ax.yaxis.set_major_locator(MaxNLocator(integer=True))
        ax.grid(True, linestyle=":", linewidth=0.4, alpha=0.6)
        ax.margins(0.08)
        if ax.get_legend_handles_labels()[0]:
            ax.legend(loc="lower right", fontsize=8)
    return fig


def render_scenario(name: str) -> Figure:
    return render(figure_spec(name))


def save_svg(fig: Figure, path) -> None:
    """Write the figure as a deterministic SVG file."""
    with matplotlib.rc_context(_RC):
        fig.savefig(path, format="svg", metadata={"Date": None})
