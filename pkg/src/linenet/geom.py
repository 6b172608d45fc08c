"""Planar primitives: points, lines in normal form, segments, rectangles.

Lines are stored exclusively as ``(p, alpha)`` with ``alpha`` in ``[0, pi)``;
the line is the locus ``x cos(alpha) + y sin(alpha) = p``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import CollinearOverlap

EPS_PARALLEL = 1e-12
_SIDE_REL = 1e-12


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class Line:
    p: float
    alpha: float

    def __post_init__(self):
        if not (0.0 <= self.alpha < math.pi):
            raise ValueError(f"alpha={self.alpha} outside [0, pi)")

    @classmethod
    def normalized(cls, p: float, alpha: float) -> "Line":
        """Build a line from any angle, folding it into ``[0, pi)``."""
        a = math.fmod(alpha, 2 * math.pi)
        if a < 0:
            a += 2 * math.pi
        if a >= math.pi:
            a -= math.pi
            p = -p
        if a >= math.pi:  # fmod rounding right at the boundary
            a = 0.0
        return cls(p, a)

    @classmethod
    def through(cls, a: Point, b: Point) -> "Line":
        dx, dy = b.x - a.x, b.y - a.y
        L = math.hypot(dx, dy)
        if L == 0:
            raise ValueError("line through coincident points")
        nx, ny = -dy / L, dx / L
        return cls.normalized(nx * a.x + ny * a.y, math.atan2(ny, nx))

    @property
    def normal(self) -> tuple[float, float]:
        return (math.cos(self.alpha), math.sin(self.alpha))

    @property
    def direction(self) -> tuple[float, float]:
        return (-math.sin(self.alpha), math.cos(self.alpha))

    def signed_distance(self, q: Point) -> float:
        return q.x * math.cos(self.alpha) + q.y * math.sin(self.alpha) - self.p


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def length(self) -> float:
        return self.a.dist(self.b)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a.x, self.a.y, self.b.x, self.b.y)


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle ``[xmin, xmax] x [ymin, ymax]``."""

    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self):
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError("degenerate rectangle")

    @classmethod
    def square(cls, side: float, x0: float = 0.0, y0: float = 0.0) -> "Rect":
        return cls(x0, y0, x0 + side, y0 + side)

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    def corners(self) -> list[Point]:
        return [
            Point(self.xmin, self.ymin),
            Point(self.xmax, self.ymin),
            Point(self.xmax, self.ymax),
            Point(self.xmin, self.ymax),
        ]

    def contains(self, q: Point, strict: bool = False) -> bool:
        if strict:
            return self.xmin < q.x < self.xmax and self.ymin < q.y < self.ymax
        return self.xmin <= q.x <= self.xmax and self.ymin <= q.y <= self.ymax


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float


def _eps_side(l: Line, q: Point) -> float:
    return _SIDE_REL * max(1.0, abs(l.p), abs(q.x), abs(q.y))


def side_of(l: Line, q: Point) -> int:
    v = l.signed_distance(q)
    if abs(v) <= _eps_side(l, q):
        return 0
    return 1 if v > 0 else -1


def separates(l: Line, u: Point, v: Point) -> bool:
    return side_of(l, u) * side_of(l, v) < 0


def intersect_lines(l1: Line, l2: Line) -> Optional[Point]:
    da = abs(l1.alpha - l2.alpha) % math.pi
    if min(da, math.pi - da) <= EPS_PARALLEL:
        return None
    c1, s1 = math.cos(l1.alpha), math.sin(l1.alpha)
    c2, s2 = math.cos(l2.alpha), math.sin(l2.alpha)
    det = c1 * s2 - s1 * c2
    return Point((l1.p * s2 - l2.p * s1) / det, (c1 * l2.p - c2 * l1.p) / det)


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def intersect_segments(s1: Segment, s2: Segment) -> Optional[Point]:
    """Intersection point of two closed segments, or None.

    Raises CollinearOverlap when the segments share more than one point.
    """
    px, py = s1.a.x, s1.a.y
    rx, ry = s1.b.x - px, s1.b.y - py
    qx, qy = s2.a.x, s2.a.y
    sx, sy = s2.b.x - qx, s2.b.y - qy
    len_r = math.hypot(rx, ry)
    len_s = math.hypot(sx, sy)
    scale = max(1.0, abs(px), abs(py), abs(qx), abs(qy), len_r, len_s)
    tol = 1e-12 * scale
    denom = _cross(rx, ry, sx, sy)
    wx, wy = qx - px, qy - py
    if abs(denom) > 1e-12 * max(len_r * len_s, 1e-300):
        t = _cross(wx, wy, sx, sy) / denom
        u = _cross(wx, wy, rx, ry) / denom
        tt = tol / len_r if len_r > 0 else 0.0
        tu = tol / len_s if len_s > 0 else 0.0
        if -tt <= t <= 1 + tt and -tu <= u <= 1 + tu:
            if abs(t) <= tt:
                return s1.a
            if abs(t - 1) <= tt:
                return s1.b
            if abs(u) <= tu:
                return s2.a
            if abs(u - 1) <= tu:
                return s2.b
            return Point(px + t * rx, py + t * ry)
        return None
    # parallel: collinear only if s2.a lies on the carrier of s1
    if len_r == 0:
        return None
    if abs(_cross(wx, wy, rx, ry)) / len_r > tol:
        return None
    ux, uy = rx / len_r, ry / len_r
    a0, a1 = 0.0, len_r
    b0 = wx * ux + wy * uy
    b1 = b0 + sx * ux + sy * uy
    lo, hi = max(a0, min(b0, b1)), min(a1, max(b0, b1))
    if hi < lo - tol:
        return None
    if hi - lo > tol:
        raise CollinearOverlap(f"segments {s1} and {s2} overlap")
    m = 0.5 * (lo + hi)
    return Point(px + m * ux, py + m * uy)


def clip_line_to_rect(l: Line, rect: Rect) -> Optional[Segment]:
    """Chord of ``l`` inside ``rect`` (Liang-Barsky), endpoints snapped to the boundary."""
    c, s = math.cos(l.alpha), math.sin(l.alpha)
    ox, oy = l.p * c, l.p * s
    dx, dy = -s, c
    t0, t1 = -math.inf, math.inf
    for o, d, lo, hi in ((ox, dx, rect.xmin, rect.xmax), (oy, dy, rect.ymin, rect.ymax)):
        if abs(d) < 1e-15:
            if o < lo or o > hi:
                return None
            continue
        ta, tb = (lo - o) / d, (hi - o) / d
        if ta > tb:
            ta, tb = tb, ta
        t0, t1 = max(t0, ta), min(t1, tb)
    if not t1 > t0:
        return None
    a = _snap(Point(ox + t0 * dx, oy + t0 * dy), rect)
    b = _snap(Point(ox + t1 * dx, oy + t1 * dy), rect)
    if a == b:
        return None
    return Segment(a, b)


def _snap(q: Point, rect: Rect) -> Point:
    tol = 1e-9 * max(1.0, rect.width, rect.height)
    x = min(max(q.x, rect.xmin), rect.xmax)
    y = min(max(q.y, rect.ymin), rect.ymax)
    for edge in (rect.xmin, rect.xmax):
        if abs(x - edge) <= tol:
            x = edge
    for edge in (rect.ymin, rect.ymax):
        if abs(y - edge) <= tol:
            y = edge
    return Point(x, y)
