"""1 维与 2 维多面体的 SVG 输出。

画布大小固定，精确坐标只在这里转成浮点，数值统一保留三位小数，
相同输入得到逐字节相同的文件。保留的面画实线，多余的画虚线。
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from core.errors import DimensionUnsupported
from core.field import to_float
from core.polyhedron import enumerate_faces, irredundant
from core.reduction import pullback
from core.types import DelzantTriple, Polyhedron, ReductionResult
from utils.config import SVG_HEIGHT, SVG_MARGIN, SVG_WIDTH

Point = Tuple[float, float]

_KEPT_STYLE = {"stroke": "#1f3b73", "stroke-width": "2"}
_DISCARDED_STYLE = {"stroke": "#888888", "stroke-width": "1.5", "stroke-dasharray": "6 4"}
_LEVEL_STYLE = {"stroke": "#b5651d", "stroke-width": "1.5", "stroke-dasharray": "2 3"}
_REDUCED_STYLE = {"stroke": "#c0392b", "stroke-width": "4"}


def _fmt(x: float) -> str:
    return f"{x:.3f}"


@dataclass(frozen=True)
class _View:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    @property
    def scale(self) -> float:
        return min(
            (SVG_WIDTH - 2 * SVG_MARGIN) / (self.xmax - self.xmin),
            (SVG_HEIGHT - 2 * SVG_MARGIN) / (self.ymax - self.ymin),
        )

    def screen(self, p: Point) -> Point:
        s = self.scale
        return SVG_MARGIN + (p[0] - self.xmin) * s, SVG_HEIGHT - SVG_MARGIN - (p[1] - self.ymin) * s

    def clip_line(self, normal: Point, offset: float) -> Optional[Tuple[Point, Point]]:
        """直线 ⟨μ, normal⟩ = offset 与视窗的交线段。"""
        a, b = normal
        hits: List[Point] = []
        if abs(b) > 1e-15:
            for x in (self.xmin, self.xmax):
                y = (offset - a * x) / b
                if self.ymin - 1e-9 <= y <= self.ymax + 1e-9:
                    hits.append((x, y))
        if abs(a) > 1e-15:
            for y in (self.ymin, self.ymax):
                x = (offset - b * y) / a
                if self.xmin - 1e-9 <= x <= self.xmax + 1e-9:
                    hits.append((x, y))
        if len(hits) < 2:
            return None
        hits.sort()
        return hits[0], hits[-1]


def _floats(v) -> Point:
    return tuple(to_float(x) for x in v)


def _hull(points: Sequence[Point]) -> List[Point]:
    """单调链凸包，逆时针。"""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o: Point, a: Point, b: Point) -> float:
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _root(title: str | None) -> ET.Element:
    root = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "width": str(SVG_WIDTH),
            "height": str(SVG_HEIGHT),
            "viewBox": f"0 0 {SVG_WIDTH} {SVG_HEIGHT}",
        },
    )
    ET.SubElement(root, "rect", {"width": str(SVG_WIDTH), "height": str(SVG_HEIGHT), "fill": "white"})
    if title:
        text = ET.SubElement(root, "text", {"x": str(SVG_MARGIN), "y": str(SVG_MARGIN // 2), "font-size": "14"})
        text.text = title
    return root


def _line(root: ET.Element, view: _View, a: Point, b: Point, style: dict) -> None:
    (x1, y1), (x2, y2) = view.screen(a), view.screen(b)
    attrs = {"x1": _fmt(x1), "y1": _fmt(y1), "x2": _fmt(x2), "y2": _fmt(y2)}
    attrs.update(style)
    ET.SubElement(root, "line", attrs)


def _view_for(points: Sequence[Point]) -> _View:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    pad = 0.25 * span
    cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
    half = span / 2 + pad
    return _View(cx - half, cx + half, cy - half, cy + half)


def _region_points(vertices: Sequence[Point], rays: Sequence[Point], reach: float) -> List[Point]:
    points = list(vertices)
    for v in vertices:
        for r in rays:
            norm = math.hypot(*r)
            points.append((v[0] + reach * r[0] / norm, v[1] + reach * r[1] / norm))
    return points


def _draw_plane(
    root: ET.Element,
    P: Polyhedron,
    extra_points: Sequence[Point] = (),
) -> _View:
    report = enumerate_faces(P)
    vertices = [_floats(v) for v in report.vertices]
    rays = [_floats(r) for r in report.rays]
    view = _view_for(list(vertices) + list(extra_points) + _region_points(vertices, rays, 1.0))
    reach = 4 * (view.xmax - view.xmin)
    region = _hull(_region_points(vertices, rays, reach))
    if len(region) >= 3:
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (view.screen(p) for p in region))
        ET.SubElement(root, "polygon", {"points": pts, "fill": "#dfe7f5", "stroke": "none", "clip-path": "url(#view)"})

    red = irredundant(P)
    kept = set(red.kept)
    for j, h in enumerate(P.halfspaces):
        if h.is_degenerate():
            continue
        segment = view.clip_line(_floats(h.normal), to_float(h.offset))
        if segment is not None:
            _line(root, view, segment[0], segment[1], _KEPT_STYLE if j in kept else _DISCARDED_STYLE)
    for v in vertices:
        x, y = view.screen(v)
        ET.SubElement(root, "circle", {"cx": _fmt(x), "cy": _fmt(y), "r": "3", "fill": "#1f3b73"})
    return view


def _clip_def(root: ET.Element) -> None:
    defs = ET.SubElement(root, "defs")
    clip = ET.SubElement(defs, "clipPath", {"id": "view"})
    ET.SubElement(
        clip,
        "rect",
        {
            "x": str(SVG_MARGIN),
            "y": str(SVG_MARGIN),
            "width": str(SVG_WIDTH - 2 * SVG_MARGIN),
            "height": str(SVG_HEIGHT - 2 * SVG_MARGIN),
        },
    )


def _draw_line_1d(root: ET.Element, P: Polyhedron, style: dict) -> None:
    report = enumerate_faces(P)
    xs = [to_float(v[0]) for v in report.vertices]
    rays = [to_float(r[0]) for r in report.rays]
    lo, hi = min(xs), max(xs)
    span = max(hi - lo, 1.0)
    view = _View(lo - span, hi + span, -span, span)
    _line(root, view, (view.xmin, 0.0), (view.xmax, 0.0), {"stroke": "#444444", "stroke-width": "1"})
    left = view.xmin if any(r < 0 for r in rays) else lo
    right = view.xmax if any(r > 0 for r in rays) else hi
    _line(root, view, (left, 0.0), (right, 0.0), style)
    for x in xs:
        sx, sy = view.screen((x, 0.0))
        ET.SubElement(root, "circle", {"cx": _fmt(sx), "cy": _fmt(sy), "r": "4", "fill": style["stroke"]})
        label = ET.SubElement(root, "text", {"x": _fmt(sx), "y": _fmt(sy + 20), "font-size": "12", "text-anchor": "middle"})
        label.text = f"{x:.4g}"


def polyhedron_svg(P: Polyhedron, title: str | None = None) -> str:
    """Raises: DimensionUnsupported: 维数大于 2。"""
    root = _root(title)
    if P.dim_ambient == 1:
        _draw_line_1d(root, P, _KEPT_STYLE)
    elif P.dim_ambient == 2:
        _clip_def(root)
        _draw_plane(root, P)
    else:
        raise DimensionUnsupported(f"cannot draw a polyhedron in dimension {P.dim_ambient}")
    return ET.tostring(root, encoding="unicode") + "\n"


def reduction_svg(triple: DelzantTriple, result: ReductionResult, title: str | None = None) -> str:
    """n = 2 时画 Δ、水平直线 μ₀ + ker j* 与 Δ_𝔨；否则只画约化后的多面体。"""
    P = triple.polyhedron
    reduced = result.reduced_triple.polyhedron
    if P.dim_ambient == 2:
        root = _root(title)
        _clip_def(root)
        embedded = [_floats(v) for v in result.embedded_vertices]
        view = _draw_plane(root, P, embedded)
        S = result.subspace
        k = _floats(S.k_basis[0])
        segment = view.clip_line(k, to_float(result.level[0]))
        if segment is not None:
            _line(root, view, segment[0], segment[1], _LEVEL_STYLE)
        reach = 4 * (view.xmax - view.xmin)
        directions: List[Point] = []
        if reduced.dim_ambient > 0:
            directions = [_floats(pullback(S, r)) for r in enumerate_faces(reduced).rays]
        ends = list(embedded)
        for v in embedded:
            for r in directions:
                norm = math.hypot(*r)
                ends.append((v[0] + reach * r[0] / norm, v[1] + reach * r[1] / norm))
        ends.sort()
        if len(ends) >= 2:
            _line(root, view, ends[0], ends[-1], dict(_REDUCED_STYLE, **{"clip-path": "url(#view)"}))
        return ET.tostring(root, encoding="unicode") + "\n"
    if reduced.dim_ambient <= 2:
        return polyhedron_svg(reduced, title)
    raise DimensionUnsupported(f"cannot draw a reduction of R^{P.dim_ambient} onto R^{reduced.dim_ambient}")


__all__ = ["polyhedron_svg", "reduction_svg"]
