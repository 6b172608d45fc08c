"""Stationary isotropic Poisson line processes.

Normalization: a process of intensity ``lam`` has line density
``(lam / 2) dp dalpha`` on ``R x [0, pi)``, so a segment of length ``L`` is
hit ``lam * L`` times on average. Under this convention the mean length of
line per unit area is ``pi * lam / 2``.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import DegenerateSegment, NegativeLength, NegativeRadius, NonPositiveRadius
from .geom import Disk, Line, Point, Rect


@dataclass(frozen=True)
class LineProcessParams:
    intensity: float
    seed: int

    def __post_init__(self):
        if not self.intensity >= 0:
            raise ValueError("intensity must be >= 0")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


@dataclass(frozen=True)
class TubeWindow:
    """Rectangle around segment v1-v2 dilated by ``half_width`` on every side."""

    v1: Point
    v2: Point
    half_width: float
    inner_half_width: float = 0.0


Window = Union[Disk, Rect, TubeWindow]


@dataclass(frozen=True, eq=False)
class LineSample:
    """Immutable batch of lines held as parallel ``p``/``alpha`` arrays."""

    p: np.ndarray
    alpha: np.ndarray
    window: Window
    params: LineProcessParams
    level: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        for arr in (self.p, self.alpha, self.level):
            if arr is not None:
                arr.setflags(write=False)

    def __len__(self) -> int:
        return len(self.p)

    @property
    def lines(self) -> list[Line]:
        return [Line(float(p), float(a)) for p, a in zip(self.p, self.alpha)]

    def same_as(self, other: "LineSample") -> bool:
        return (
            self.p.tobytes() == other.p.tobytes()
            and self.alpha.tobytes() == other.alpha.tobytes()
        )


def make_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Independent PCG64 stream for replicate ``index`` under ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def hitting_measure_disk(radius: float, intensity: float) -> float:
    if radius < 0:
        raise NegativeRadius(f"radius={radius}")
    return intensity * math.pi * radius


def hitting_measure_segment(length: float, intensity: float) -> float:
    if length < 0:
        raise NegativeLength(f"length={length}")
    return intensity * length


def hitting_measure_rect(rect: Rect, intensity: float) -> float:
    # convex body: lam * perimeter / 2
    return intensity * (rect.width + rect.height)


def expected_length_in_rect(rect: Rect, intensity: float) -> float:
    """Mean total chord length of the process inside ``rect``."""
    return 0.5 * math.pi * intensity * rect.width * rect.height


def _fold(p: np.ndarray, a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.mod(a, 2 * np.pi)
    flip = a >= np.pi
    a = np.where(flip, a - np.pi, a)
    p = np.where(flip, -p, p)
    a = np.where(a >= np.pi, 0.0, a)
    return p, a


def _angles_abs_sin(rng, k):
    # density |sin a| / 2 on [0, pi)
    return np.arccos(1.0 - 2.0 * rng.random(k))


def _angles_width_weighted(rng, k, wc, ws):
    """Angles with density proportional to ``wc |cos a| + ws |sin a|``."""
    use_cos = rng.random(k) < wc / (wc + ws)
    a_sin = _angles_abs_sin(rng, k)
    return np.where(use_cos, np.mod(a_sin + 0.5 * np.pi, np.pi), a_sin)


def sample_disk(center: Point, radius: float, params: LineProcessParams,
                replicate: int = 0, rng: Optional[np.random.Generator] = None) -> LineSample:
    if not radius > 0:
        raise NonPositiveRadius(f"radius={radius}")
    rng = make_rng(params.seed, replicate) if rng is None else rng
    k = rng.poisson(hitting_measure_disk(radius, params.intensity))
    a = rng.random(k) * np.pi
    off = (2.0 * rng.random(k) - 1.0) * radius
    p = off + center.x * np.cos(a) + center.y * np.sin(a)
    return LineSample(p, a, Disk(center, radius), params)


def sample_rect(rect: Rect, params: LineProcessParams,
                replicate: int = 0, rng: Optional[np.random.Generator] = None) -> LineSample:
    """All process lines hitting ``rect``."""
    rng = make_rng(params.seed, replicate) if rng is None else rng
    k = rng.poisson(hitting_measure_rect(rect, params.intensity))
    if k == 0:
        e = np.empty(0)
        return LineSample(e, e.copy(), rect, params)
    a = _angles_width_weighted(rng, k, rect.width, rect.height)
    c, s = np.cos(a), np.sin(a)
    cx = 0.5 * (rect.xmin + rect.xmax)
    cy = 0.5 * (rect.ymin + rect.ymax)
    half = 0.5 * (rect.width * np.abs(c) + rect.height * s)
    p = cx * c + cy * s + (2.0 * rng.random(k) - 1.0) * half
    return LineSample(p, a, rect, params)


def _tube_local(rng, intensity, m, lo, hi):
    """Non-separating lines in the frame v1=(-m/2,0), v2=(m/2,0).

    A line with local normal angle ``a`` and tube level ``u >= 0`` has offset
    ``+-((m/2)|cos a| + u (|cos a| + sin a))``; it first meets the tube of
    half-width ``u``. Levels are Poisson with rate ``2 lam`` per unit level and
    sign, angle density proportional to ``|cos a| + sin a``.
    """
    k = rng.poisson(4.0 * intensity * (hi - lo))
    a = _angles_width_weighted(rng, k, 1.0, 1.0)
    u = lo + (hi - lo) * rng.random(k)
    sign = np.where(rng.random(k) < 0.5, -1.0, 1.0)
    c = np.abs(np.cos(a))
    p = sign * (0.5 * m * c + u * (c + np.sin(a)))
    return p, a, u


def sample_tube_nonseparating(v1: Point, v2: Point, half_width: float, params: LineProcessParams,
                              replicate: int = 0, rng: Optional[np.random.Generator] = None,
                              inner_half_width: float = 0.0) -> LineSample:
    """Process lines meeting the tube around v1-v2 that do not separate v1 from v2.

    Drawn directly from the restricted intensity measure, which has the same
    law as sampling every line hitting the tube and rejecting separating
    ones. With ``inner_half_width > 0`` only lines missing the inner tube are
    returned, so successive calls extend a sample without double counting.
    """
    m = v1.dist(v2)
    if m == 0:
        raise DegenerateSegment("v1 == v2")
    if not half_width > 0:
        raise ValueError("half_width must be > 0")
    if not 0 <= inner_half_width <= half_width:
        raise ValueError("need 0 <= inner_half_width <= half_width")
    rng = make_rng(params.seed, replicate) if rng is None else rng
    p, a, u = _tube_local(rng, params.intensity, m, inner_half_width, half_width)
    theta = math.atan2(v2.y - v1.y, v2.x - v1.x)
    cx, cy = 0.5 * (v1.x + v2.x), 0.5 * (v1.y + v2.y)
    ag = a + theta
    pg = p + cx * np.cos(ag) + cy * np.sin(ag)
    pg, ag = _fold(pg, ag)
    return LineSample(pg, ag, TubeWindow(v1, v2, half_width, inner_half_width), params, level=u)


def tube_expected_count(m: float, half_width: float, intensity: float) -> float:
    """Mean number of non-separating lines hitting the tube.

    The tube is a (m + 2w) x 2w rectangle, hit with mean ``lam (m + 4w)``;
    of those, ``lam m`` hit the segment itself.
    """
    return 4.0 * intensity * half_width


def cross_intersections(p1, a1, p2, a2):
    """Pairwise intersections across two line arrays.

    Returns ``(x, y, xi)`` with ``xi = (a2 - a1) mod pi``, the crossing
    angle. Exactly parallel pairs are dropped.
    """
    P1 = np.asarray(p1, float)[:, None]
    A1 = np.asarray(a1, float)[:, None]
    P2 = np.asarray(p2, float)[None, :]
    A2 = np.asarray(a2, float)[None, :]
    det = np.sin(A2 - A1)
    ok = np.abs(det) > 1e-12
    with np.errstate(divide="ignore", invalid="ignore"):
        x = (P1 * np.sin(A2) - P2 * np.sin(A1)) / det
        y = (np.cos(A1) * P2 - np.cos(A2) * P1) / det
    xi = np.mod(A2 - A1, np.pi)
    return x[ok], y[ok], xi[ok]


def intersection_angle_samples(sample1: LineSample, sample2: LineSample) -> list[tuple[Point, float]]:
    x, y, xi = cross_intersections(sample1.p, sample1.alpha, sample2.p, sample2.alpha)
    return [(Point(float(a), float(b)), float(c)) for a, b, c in zip(x, y, xi)]


def write_lines_csv(sample: LineSample, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\r\n")
        w.writerow(["p", "alpha"])
        for p, a in zip(sample.p, sample.alpha):
            w.writerow([f"{p:.17g}", f"{a:.17g}"])


def read_lines_csv(path) -> list[Line]:
    with open(path, newline="", encoding="utf-8") as fh:
        return [Line(float(r["p"]), float(r["alpha"])) for r in csv.DictReader(fh)]
