"""Scatter data, analytic boundary overlays and standalone SVG plots for the five trade-off figures."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from triresource import kernels
from triresource.closed_forms import Family, boundary_curve
from triresource.kernels import COL
from triresource.output import RunMetadata, write_csv
from triresource.relations import (
    INV_SQRT3,
    t1_residual,
    t2_lower,
    t2_upper,
    t3_lower,
    t3_upper,
    t4_slack_value,
    t5_effective,
)
from triresource.states import haar_amplitudes

WIDTH, HEIGHT = 800, 600
MARGIN = {"left": 90, "right": 30, "top": 40, "bottom": 70}
MAX_SVG_POINTS = 20_000
CURVE_POINTS = 400

COLORS = {"ellipse": "orangered", "psi_alpha": "orangered", "psi_m": "dodgerblue", "psi_theta": "forestgreen"}
LABELS = {
    "ggm": "GGM  G(|ψ⟩)",
    "gmc": "GMC  C(|ψ⟩)",
    "fill": "concurrence fill  F(|ψ⟩)",
    "coherence": "first-order coherence  D(|ψ⟩)",
    "steering": "max steering violation  S(|ψ⟩)",
}
_TABLE_COLUMN = {"ggm": "ggm", "gmc": "gmc", "fill": "fill", "coherence": "coherence", "steering": "s_max"}


class FigureId(str, Enum):
    F1 = "F1_ggm_gmc"
    F2 = "F2_d_gmc"
    F3 = "F3_d_fill"
    F4 = "F4_s_fill"
    F5 = "F5_s_d"

    @classmethod
    def parse(cls, text: str) -> "FigureId":
        for member in cls:
            if text in (member.value, member.name, member.name.lower()):
                return member
        raise ValueError(f"unknown figure {text!r}; choose from {[m.name for m in cls]}")


AXES = {
    FigureId.F1: ("gmc", "ggm"),
    FigureId.F2: ("gmc", "coherence"),
    FigureId.F3: ("fill", "coherence"),
    FigureId.F4: ("fill", "steering"),
    FigureId.F5: ("coherence", "steering"),
}
RANGES = {
    FigureId.F1: ((0.0, 1.0), (0.0, 0.5)),
    FigureId.F2: ((0.0, 1.0), (0.0, 1.0)),
    FigureId.F3: ((0.0, 1.0), (0.0, 1.0)),
    FigureId.F4: ((0.0, 1.0), (1.0, 3.0)),
    FigureId.F5: ((0.0, 1.0), (1.0, 3.0)),
}
# (family, role) pairs drawn over each scatter; F1 draws the ellipse instead
OVERLAYS = {
    FigureId.F1: (),
    FigureId.F2: ((Family.ALPHA, "upper"), (Family.M, "lower"), (Family.THETA, "axis")),
    FigureId.F3: ((Family.ALPHA, "upper"), (Family.M, "lower"), (Family.THETA, "axis")),
    FigureId.F4: ((Family.M, "upper"), (Family.THETA, "axis")),
    FigureId.F5: ((Family.M, "left-upper"), (Family.THETA, "right-upper")),
}


@dataclass(frozen=True)
class FigureSpec:
    figure: FigureId
    n_samples: int
    seed: int
    csv_path: Path | None = None
    svg_path: Path | None = None

    def __post_init__(self):
        if self.n_samples < 0:
            raise ValueError("n_samples must be >= 0")

    @property
    def axes(self) -> tuple[str, str]:
        return AXES[self.figure]


@dataclass(frozen=True)
class Curve:
    name: str
    role: str
    x: np.ndarray
    y: np.ndarray


def scatter_points(figure: FigureId, n: int, seed: int) -> np.ndarray:
    """(n, 2) array of (x, y) measure pairs for Haar states ``0..n-1`` of ``seed``."""
    if n == 0:
        return np.empty((0, 2))
    table = kernels.profile_table(haar_amplitudes(seed, 0, n))
    xq, yq = AXES[figure]
    return np.column_stack([table[:, COL[_TABLE_COLUMN[xq]]], table[:, COL[_TABLE_COLUMN[yq]]]])


def boundary_curves(figure: FigureId, n_points: int = CURVE_POINTS) -> list[Curve]:
    if figure is FigureId.F1:
        x = np.linspace(0.0, 1.0, n_points)
        return [Curve("ellipse", "exact", x, 0.5 * (1.0 - np.sqrt(np.clip(1.0 - x * x, 0.0, None))))]
    xq, yq = AXES[figure]
    curves = []
    for family, role in OVERLAYS[figure]:
        c = boundary_curve(family, xq, yq, n_points)
        curves.append(Curve(f"psi_{family.value}", role, c.x, c.y))
    return curves


def region_slack(figure: FigureId, x: np.ndarray, y: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Smallest constraint slack per point; non-negative (within ``tol``) means inside the region."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if figure is FigureId.F1:
        return -np.abs(t1_residual(y, x))
    if figure is FigureId.F2:
        return np.minimum(t2_upper(x, y), t2_lower(x, y))
    if figure is FigureId.F3:
        lower = np.where(y <= INV_SQRT3 + tol, t3_lower(x, y), np.inf)
        return np.minimum(t3_upper(x, y), lower)
    if figure is FigureId.F4:
        return t4_slack_value(x, y)
    return t5_effective(x, y, tol)


def decimate(points: np.ndarray, seed: int, limit: int = MAX_SVG_POINTS) -> np.ndarray:
    """Uniform subsample (order preserved) when there are more than ``limit`` points."""
    if len(points) <= limit:
        return points
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, 0x5EED])))
    keep = np.sort(rng.choice(len(points), size=limit, replace=False))
    return points[keep]


class _Frame:
    def __init__(self, xr, yr):
        (self.x0, self.x1), (self.y0, self.y1) = xr, yr
        self.left, self.top = MARGIN["left"], MARGIN["top"]
        self.w = WIDTH - MARGIN["left"] - MARGIN["right"]
        self.h = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(self, x):
        return self.left + (np.asarray(x) - self.x0) / (self.x1 - self.x0) * self.w

    def py(self, y):
        return self.top + self.h - (np.asarray(y) - self.y0) / (self.y1 - self.y0) * self.h


def _ticks(lo: float, hi: float, count: int = 5) -> np.ndarray:
    return np.linspace(lo, hi, count + 1)


def render_svg(figure: FigureId, points: np.ndarray, curves: list[Curve], metadata: RunMetadata) -> str:
    """Self-contained SVG: axes, one scatter group, one path per boundary curve."""
    (xr, yr) = RANGES[figure]
    frame = _Frame(xr, yr)
    xq, yq = AXES[figure]
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="13">',
        f"<title>{escape(figure.value)}</title>",
        f"<metadata>{escape(json.dumps({'figure': figure.value, **metadata.to_dict()}, sort_keys=True))}</metadata>",
        '<rect width="100%" height="100%" fill="white"/>',
        '<g id="axes" stroke="black" stroke-width="1" fill="none">',
        f'<rect x="{frame.left}" y="{frame.top}" width="{frame.w}" height="{frame.h}"/>',
    ]
    labels = []
    for t in _ticks(*xr):
        px = float(frame.px(t))
        out.append(f'<line x1="{px:.2f}" y1="{frame.top + frame.h}" x2="{px:.2f}" y2="{frame.top + frame.h + 6}"/>')
        labels.append(f'<text x="{px:.2f}" y="{frame.top + frame.h + 22}" text-anchor="middle">{t:.2g}</text>')
    for t in _ticks(*yr):
        py = float(frame.py(t))
        out.append(f'<line x1="{frame.left - 6}" y1="{py:.2f}" x2="{frame.left}" y2="{py:.2f}"/>')
        labels.append(f'<text x="{frame.left - 10}" y="{py + 4:.2f}" text-anchor="end">{t:.2g}</text>')
    out.append("</g>")
    out.append('<g id="labels" fill="black">')
    out.extend(labels)
    out.append(
        f'<text x="{frame.left + frame.w / 2:.1f}" y="{HEIGHT - 20}" text-anchor="middle">{escape(LABELS[xq])}</text>'
    )
    cy = frame.top + frame.h / 2
    out.append(
        f'<text x="24" y="{cy:.1f}" text-anchor="middle" transform="rotate(-90 24 {cy:.1f})">{escape(LABELS[yq])}</text>'
    )
    out.append("</g>")

    out.append(f'<g id="scatter" fill="#7b3fa0" fill-opacity="0.5" data-count="{len(points)}">')
    if len(points):
        xs, ys = frame.px(points[:, 0]), frame.py(points[:, 1])
        out.extend(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="1"/>' for x, y in zip(xs.tolist(), ys.tolist()))
    out.append("</g>")

    out.append('<g id="boundaries" fill="none" stroke-width="2.5">')
    for curve in curves:
        xs, ys = frame.px(curve.x), frame.py(curve.y)
        d = "M" + " L".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs.tolist(), ys.tolist()))
        out.append(f'<path class="boundary {curve.role}" data-name="{curve.name}" stroke="{COLORS[curve.name]}" d="{d}"/>')
    out.append("</g>")

    out.append('<g id="legend" font-size="12">')
    for i, curve in enumerate(curves):
        y = frame.top + 18 + 18 * i
        x = frame.left + frame.w - 170
        out.append(f'<line x1="{x}" y1="{y - 4}" x2="{x + 24}" y2="{y - 4}" stroke="{COLORS[curve.name]}" stroke-width="2.5"/>')
        out.append(f'<text x="{x + 30}" y="{y}">{escape(curve.name)} ({curve.role})</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def make_figure(spec: FigureSpec, timestamp: str | None = None) -> tuple[np.ndarray, list[Curve]]:
    """Compute the figure and write the CSV and/or SVG whose paths ``spec`` sets."""
    points = scatter_points(spec.figure, spec.n_samples, spec.seed)
    curves = boundary_curves(spec.figure)
    metadata = RunMetadata(seed=spec.seed, n_samples=spec.n_samples, timestamp=timestamp)
    xq, yq = spec.axes
    if spec.csv_path is not None:
        write_csv(
            spec.csv_path,
            f"index,{xq},{yq}",
            points,
            metadata,
            extra_comments=[f"# figure: {spec.figure.value}", f"# x: {xq}", f"# y: {yq}"],
        )
    if spec.svg_path is not None:
        Path(spec.svg_path).write_text(render_svg(spec.figure, decimate(points, spec.seed), curves, metadata))
    return points, curves


def inside_fraction(figure: FigureId, points: np.ndarray, tol: float = 1e-9) -> float:
    if not len(points):
        return math.nan
    return float(np.mean(region_slack(figure, points[:, 0], points[:, 1], tol) >= -tol))
