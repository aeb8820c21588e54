"""Deterministic SVG diagrams of a solve report.

Conventions: the defining segments are drawn on the axes and colored by role
(blue for b and c, green for l, orange for a, purple for the diameter chord of
a diameter-based hyperbola, red for each solution abscissa); the unused third
conic and the companion-ordinate segment are dashed.  Curves are sampled
parametrically (never by solving for y column-wise), so no sample sits near an
infinite slope and every emitted point satisfies its conic to roundoff.

Output is byte-deterministic: fixed element order, fixed 6-digit decimals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .conics import companion_ordinate
from .core import (
    AsymptoteFrame,
    CircleFrame,
    ConicKind,
    DiameterHyperbolaFrame,
    ImplicitConic,
    ParabolaFrame,
    SolveReport,
    Species,
)

COLOR_B_C = "#1f77b4"       # blue: b and c
COLOR_L = "#2ca02c"         # green: l
COLOR_A = "#ff7f0e"         # orange: a
COLOR_DIAMETER = "#9467bd"  # purple: diameter chord
COLOR_ROOT = "#d62728"      # red: solution segments
COLOR_AXES = "#000000"

DASH = "6 3"

# Sign of the l-vertex of each species' y^2-conic on the x-axis.
_L_SIGN = {
    Species.S1: 1, Species.S2: 1, Species.S3: -1,
    Species.S7: 1, Species.S8: 1, Species.S9: -1, Species.S10: -1,
    Species.S11: -1, Species.S12: 1, Species.S13: 1,
}


class EmptyViewportError(ValueError):
    """The report exposes no finite feature to frame (unreachable for valid species)."""


@dataclass(frozen=True)
class RenderOptions:
    width_px: int = 800
    height_px: int = 800
    show_hidden: bool = True
    samples_per_branch: int = 256
    margin_factor: float = 1.2

    def __post_init__(self) -> None:
        if self.width_px <= 0 or self.height_px <= 0:
            raise ValueError("pixel dimensions must be positive")
        if self.samples_per_branch < 16:
            raise ValueError("samples_per_branch must be at least 16")
        if self.margin_factor <= 0:
            raise ValueError("margin_factor must be positive")


@dataclass(frozen=True)
class Viewport:
    """World window plus the uniform world-to-screen map (y flipped up)."""

    x0: float
    x1: float
    y0: float
    y1: float
    scale: float
    width_px: int
    height_px: int

    def to_screen(self, x: float, y: float) -> Tuple[float, float]:
        cx, cy = 0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1)
        return (
            self.width_px / 2 + (x - cx) * self.scale,
            self.height_px / 2 - (y - cy) * self.scale,
        )

    def to_world(self, sx: float, sy: float) -> Tuple[float, float]:
        cx, cy = 0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1)
        return (
            cx + (sx - self.width_px / 2) / self.scale,
            cy - (sy - self.height_px / 2) / self.scale,
        )

    def contains(self, x: float, y: float) -> bool:
        slack = 1e-9 * max(self.x1 - self.x0, self.y1 - self.y0)
        return (self.x0 - slack <= x <= self.x1 + slack) and (
            self.y0 - slack <= y <= self.y1 + slack
        )


def _fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _segments(report: SolveReport) -> List[dict]:
    """Colored role segments in fixed draw order."""
    species = report.species
    segs: List[dict] = []
    if species.a is not None:
        segs.append(
            dict(p1=(0.0, 0.0), p2=(-float(report.cubic.A), 0.0),
                 color=COLOR_A, dashed=False, attrs={"data-param": "a"})
        )
    if species.b is not None:
        offset = next(
            c.frame.center[1]
            for c in report.triple.conics()
            if c.kind is ConicKind.ASYMPTOTIC_HYPERBOLA
        )
        segs.append(
            dict(p1=(0.0, 0.0), p2=(0.0, float(offset)),
                 color=COLOR_B_C, dashed=False, attrs={"data-param": "b"})
        )
    if species.c is not None:
        segs.append(
            dict(p1=(0.0, 0.0), p2=(0.0, float(species.c)),
                 color=COLOR_B_C, dashed=False, attrs={"data-param": "c"})
        )
    if species.l is not None:
        segs.append(
            dict(p1=(0.0, 0.0), p2=(_L_SIGN[species.id] * float(species.l), 0.0),
                 color=COLOR_L, dashed=False, attrs={"data-param": "l"})
        )
    for conic in report.triple.conics():
        if conic.kind is ConicKind.DIAMETER_HYPERBOLA:
            frame: DiameterHyperbolaFrame = conic.frame
            segs.append(
                dict(p1=(float(frame.vertex_1[0]), float(frame.vertex_1[1])),
                     p2=(float(frame.vertex_2[0]), float(frame.vertex_2[1])),
                     color=COLOR_DIAMETER, dashed=False,
                     attrs={"data-param": "diameter"})
            )
    for root in report.roots:
        segs.append(
            dict(p1=(0.0, 0.0), p2=(root.x, 0.0), color=COLOR_ROOT, dashed=False,
                 attrs={"data-root": _fmt(root.x), "data-length": _fmt(abs(root.x))})
        )
    for root in report.roots:
        y = float(companion_ordinate(report.triple.hidden, root.x))
        segs.append(
            dict(p1=(root.x, 0.0), p2=(root.x, y), color=COLOR_AXES, dashed=True,
                 attrs={"data-companion": _fmt(root.x)})
        )
    return segs


def _feature_points(report: SolveReport) -> List[Tuple[float, float]]:
    pts: List[Tuple[float, float]] = [(0.0, 0.0)]
    for seg in _segments(report):
        pts.append(seg["p1"])
        pts.append(seg["p2"])
    for conic in report.triple.conics():
        frame = conic.frame
        if isinstance(frame, CircleFrame):
            cx, cy = float(frame.center[0]), float(frame.center[1])
            r = float(frame.radius)
            pts += [(cx - r, cy - r), (cx + r, cy + r)]
        elif isinstance(frame, ParabolaFrame):
            pts.append((float(frame.vertex[0]), float(frame.vertex[1])))
        elif isinstance(frame, DiameterHyperbolaFrame):
            pts.append((float(frame.vertex_1[0]), float(frame.vertex_1[1])))
            pts.append((float(frame.vertex_2[0]), float(frame.vertex_2[1])))
        elif isinstance(frame, AsymptoteFrame):
            pts.append((float(frame.center[0]), float(frame.center[1])))
    for point in report.intersections:
        pts.append((point.x, point.y))
    return pts


def compute_viewport(report: SolveReport, opts: RenderOptions) -> Viewport:
    pts = _feature_points(report)
    if not pts or not all(math.isfinite(x) and math.isfinite(y) for x, y in pts):
        raise EmptyViewportError("no finite features to frame")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    cx, cy = 0.5 * (min(xs) + max(xs)), 0.5 * (min(ys) + max(ys))
    hw = max(0.5 * (max(xs) - min(xs)), 1e-12) * opts.margin_factor
    hh = max(0.5 * (max(ys) - min(ys)), 1e-12) * opts.margin_factor
    if hw < 1e-9:
        hw = 1.0
    if hh < 1e-9:
        hh = 1.0
    scale = min(opts.width_px / (2 * hw), opts.height_px / (2 * hh))
    return Viewport(
        x0=cx - hw, x1=cx + hw, y0=cy - hh, y1=cy + hh,
        scale=scale, width_px=opts.width_px, height_px=opts.height_px,
    )


def _sample_conic(conic: ImplicitConic, vp: Viewport, n: int) -> List[List[Tuple[float, float]]]:
    """World-space sample branches, each a list of on-curve points."""
    kind = conic.kind
    if kind is ConicKind.CIRCLE:
        frame: CircleFrame = conic.frame
        cx, cy = float(frame.center[0]), float(frame.center[1])
        r = float(frame.radius)
        ts = np.linspace(0.0, 2.0 * math.pi, n)
        return [[(cx + r * math.cos(t), cy + r * math.sin(t)) for t in ts]]

    if kind is ConicKind.PARABOLA:
        frame = conic.frame
        if frame.axis[0] == 0:
            xs = np.linspace(vp.x0, vp.x1, n)
            q_y = float(conic.q_y)
            return [[
                (float(x), -(float(conic.q_xx) * x * x + float(conic.q_x) * x
                             + float(conic.q_0)) / q_y)
                for x in xs
            ]]
        ys = np.linspace(vp.y0, vp.y1, n)
        q_x = float(conic.q_x)
        return [[
            (-(float(conic.q_yy) * y * y + float(conic.q_y) * y
               + float(conic.q_0)) / q_x, float(y))
            for y in ys
        ]]

    if kind is ConicKind.DIAMETER_HYPERBOLA:
        frame = conic.frame
        v1, v2 = float(frame.vertex_1[0]), float(frame.vertex_2[0])
        xc = 0.5 * (v1 + v2)
        s = 0.5 * abs(v2 - v1)
        if s == 0.0:
            xs = np.linspace(vp.x0, vp.x1, n)
            return [
                [(float(x), float(x) - xc) for x in xs],
                [(float(x), xc - float(x)) for x in xs],
            ]
        reach = max(abs(vp.x0 - xc), abs(vp.x1 - xc))
        span = max(abs(vp.y0), abs(vp.y1))
        t_max = max(
            math.acosh(max(1.0, reach / s)),
            math.asinh(span / s),
            1e-6,
        )
        ts = np.linspace(-t_max, t_max, n)
        right = [(xc + s * math.cosh(t), s * math.sinh(t)) for t in ts]
        left = [(xc - s * math.cosh(t), s * math.sinh(t)) for t in ts]
        return [right, left]

    # Asymptotic hyperbola: asymptotes x = 0 and y = k, curve y = k + m / x.
    k = -float(conic.q_x) / float(conic.q_xy)
    m = -float(conic.q_0) / float(conic.q_xy)
    span = max(abs(vp.y0 - k), abs(vp.y1 - k), 1e-12)
    x_near = abs(m) / span
    branches = []
    if vp.x1 > 0:
        lo, hi = max(x_near, vp.x0, 1e-300), vp.x1
        if 0 < lo < hi:
            xs = np.geomspace(lo, hi, n)
            branches.append([(float(x), k + m / float(x)) for x in xs])
    if vp.x0 < 0:
        lo_mag, hi_mag = max(x_near, -vp.x1, 1e-300), -vp.x0
        if 0 < lo_mag < hi_mag:
            xs = -np.geomspace(hi_mag, lo_mag, n)
            branches.append([(float(x), k + m / float(x)) for x in xs])
    return branches


def _clip_runs(
    points: Sequence[Tuple[float, float]], vp: Viewport
) -> List[List[Tuple[float, float]]]:
    """Split a sampled branch into maximal in-viewport runs of >= 2 points."""
    runs: List[List[Tuple[float, float]]] = []
    current: List[Tuple[float, float]] = []
    for x, y in points:
        if vp.contains(x, y):
            current.append((x, y))
        elif current:
            if len(current) >= 2:
                runs.append(current)
            current = []
    if len(current) >= 2:
        runs.append(current)
    return runs


def _path_element(run: Sequence[Tuple[float, float]], vp: Viewport) -> str:
    coords = [vp.to_screen(x, y) for x, y in run]
    d = "M " + " L ".join(f"{_fmt(sx)},{_fmt(sy)}" for sx, sy in coords)
    return f'<path d="{d}"/>'


def _line_element(seg: dict, vp: Viewport) -> str:
    (x1, y1), (x2, y2) = seg["p1"], seg["p2"]
    sx1, sy1 = vp.to_screen(x1, y1)
    sx2, sy2 = vp.to_screen(x2, y2)
    attrs = "".join(f' {k}="{v}"' for k, v in sorted(seg["attrs"].items()))
    dash = f' stroke-dasharray="{DASH}"' if seg["dashed"] else ""
    return (
        f'<line x1="{_fmt(sx1)}" y1="{_fmt(sy1)}" x2="{_fmt(sx2)}" y2="{_fmt(sy2)}"'
        f' stroke="{seg["color"]}"{dash}{attrs}/>'
    )


def render_svg(report: SolveReport, opts: Optional[RenderOptions] = None) -> str:
    """Standalone SVG document for the report; byte-identical for equal inputs."""
    opts = opts or RenderOptions()
    vp = compute_viewport(report, opts)
    n = opts.samples_per_branch

    lines: List[str] = []
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{opts.width_px}"'
        f' height="{opts.height_px}" viewBox="0 0 {opts.width_px} {opts.height_px}">'
    )

    # Axes, clipped to the viewport.
    lines.append(f'<g data-layer="axes" stroke="{COLOR_AXES}" stroke-width="1" fill="none">')
    ax0, ay = vp.to_screen(vp.x0, 0.0)
    ax1, _ = vp.to_screen(vp.x1, 0.0)
    lines.append(f'<line x1="{_fmt(ax0)}" y1="{_fmt(ay)}" x2="{_fmt(ax1)}" y2="{_fmt(ay)}"/>')
    bx, by0 = vp.to_screen(0.0, vp.y0)
    _, by1 = vp.to_screen(0.0, vp.y1)
    lines.append(f'<line x1="{_fmt(bx)}" y1="{_fmt(by0)}" x2="{_fmt(bx)}" y2="{_fmt(by1)}"/>')
    lines.append('</g>')

    lines.append('<g data-layer="conics" fill="none" stroke-width="2">')
    drawn = [
        ("working-1", report.triple.working_1, False),
        ("working-2", report.triple.working_2, False),
    ]
    if opts.show_hidden:
        drawn.append(("hidden", report.triple.hidden, True))
    for role, conic, dashed in drawn:
        dash = f' stroke-dasharray="{DASH}"' if dashed else ""
        lines.append(
            f'<g data-role="{role}" data-kind="{conic.kind.value}"'
            f' stroke="{COLOR_AXES}"{dash}>'
        )
        for branch in _sample_conic(conic, vp, n):
            for run in _clip_runs(branch, vp):
                lines.append(_path_element(run, vp))
        lines.append('</g>')
    lines.append('</g>')

    lines.append('<g data-layer="segments" stroke-width="3" fill="none">')
    for seg in _segments(report):
        lines.append(_line_element(seg, vp))
    lines.append('</g>')

    lines.append('</svg>')
    return "\n".join(lines) + "\n"
