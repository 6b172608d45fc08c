"""Deterministic SVG renderings of networks and two-point cells."""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .geom import Line, Point, Rect, clip_line_to_rect
from .netbuild import Configuration, Layer, PlanarNetwork

LAYER_STYLE = {
    Layer.Tree: ("layer-tree", "#1b9e77", 0.6),
    Layer.MediumGrid: ("layer-medium-grid", "#7570b3", 0.4),
    Layer.HotspotCell: ("layer-hotspot-cell", "#d95f02", 0.5),
    Layer.HotspotConnector: ("layer-hotspot-connector", "#e7298a", 0.4),
    Layer.PoissonLine: ("layer-poisson-line", "#666666", 0.4),
}


def _f(v: float) -> str:
    return f"{v:.6f}".rstrip("0").rstrip(".") if v == v else "0"


class _Canvas:
    def __init__(self, rect: Rect, size: float):
        self.rect = rect
        self.k = size / max(rect.width, rect.height)
        self.w = rect.width * self.k
        self.h = rect.height * self.k
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(self.w)}" height="{_f(self.h)}" '
            f'viewBox="0 0 {_f(self.w)} {_f(self.h)}">',
            f'<rect x="0" y="0" width="{_f(self.w)}" height="{_f(self.h)}" fill="white"/>',
        ]

    def xy(self, x: float, y: float) -> tuple[str, str]:
        # flip y so the picture has the usual orientation
        return _f((x - self.rect.xmin) * self.k), _f((self.rect.ymax - y) * self.k)

    def line(self, x0, y0, x1, y1) -> str:
        a, b = self.xy(x0, y0)
        c, d = self.xy(x1, y1)
        return f'<line x1="{a}" y1="{b}" x2="{c}" y2="{d}"/>'

    def group(self, gid: str, attrs: str, body: Sequence[str]) -> None:
        self.parts.append(f'<g id="{gid}" {attrs}>')
        self.parts.extend(body)
        self.parts.append("</g>")

    def text(self) -> str:
        return "\n".join(self.parts + ["</svg>", ""])


def network_svg(net: PlanarNetwork, config: Optional[Configuration] = None,
                window: Optional[Rect] = None, size: float = 800.0) -> str:
    """One ``<g>`` per layer with fixed ids, then the configuration points."""
    if window is None:
        window = config.window if config is not None else Rect(
            *net.nodes.min(axis=0), *net.nodes.max(axis=0))
    cv = _Canvas(window, size)
    nodes = net.nodes
    for lay in Layer:
        gid, colour, width = LAYER_STYLE[lay]
        sel = np.nonzero(net.layer == int(lay))[0]
        body = [cv.line(*nodes[net.ei[k]], *nodes[net.ej[k]]) for k in sel.tolist()]
        cv.group(gid, f'stroke="{colour}" stroke-width="{_f(width)}" fill="none"', body)
    if config is not None:
        body = []
        for x, y in config.xy:
            a, b = cv.xy(x, y)
            body.append(f'<circle cx="{a}" cy="{b}" r="1.5"/>')
        cv.group("points", 'fill="black"', body)
    return cv.text()


def cell_svg(window: Rect, v1: Point, v2: Point, retained: Sequence[Line], deleted: Sequence[Line],
             cell_vertices: np.ndarray, size: float = 800.0) -> str:
    """Retained and deleted lines, the cell polygon, and the two generator points."""
    cv = _Canvas(window, size)

    def chords(lines):
        out = []
        for ln in lines:
            seg = clip_line_to_rect(ln, window)
            if seg is not None:
                out.append(cv.line(seg.a.x, seg.a.y, seg.b.x, seg.b.y))
        return out

    cv.group("deleted-lines", 'stroke="#d95f02" stroke-width="0.5" stroke-dasharray="4 3" fill="none"',
             chords(deleted))
    cv.group("retained-lines", 'stroke="#666666" stroke-width="0.5" fill="none"', chords(retained))
    pts = " ".join(",".join(cv.xy(x, y)) for x, y in np.asarray(cell_vertices).reshape(-1, 2))
    cv.group("cell", 'fill="#1b9e77" fill-opacity="0.25" stroke="#1b9e77" stroke-width="1.5"',
             [f'<polygon points="{pts}"/>'] if pts else [])
    body = []
    for p in (v1, v2):
        a, b = cv.xy(p.x, p.y)
        body.append(f'<circle cx="{a}" cy="{b}" r="3"/>')
    cv.group("generators", 'fill="black"', body)
    return cv.text()
