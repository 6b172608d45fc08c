"""The two-point cell and its mean perimeter excess ``J_m``.

Delete every line separating ``v1`` from ``v2``; the remaining lines cut the
plane into convex cells, one of which contains both points. ``J_m`` is its
mean perimeter minus ``2m`` for points at distance ``m`` under a unit
intensity process. Three evaluators are provided: Monte Carlo, numerical
quadrature of the exact double integral, and the large-``m`` asymptotic.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from scipy.integrate import quad

from . import _kernels
from .errors import DegenerateCell, NonConvergentWidening, PointsOutsideWindow, ToleranceNotMet
from .geom import Line, Point, Rect
from .lineproc import LineProcessParams, LineSample, make_rng, sample_disk, sample_tube_nonseparating

EULER_GAMMA = 0.57721566490153286061

_CLIP_REL = 1e-14
_EDGE_REL = 1e-12


@dataclass(frozen=True)
class ConvexCell:
    vertices: tuple[Point, ...]
    closed: bool

    @classmethod
    def from_array(cls, xy: np.ndarray, closed: bool) -> "ConvexCell":
        return cls(tuple(Point(float(x), float(y)) for x, y in xy), closed)

    def as_array(self) -> np.ndarray:
        return np.array([(v.x, v.y) for v in self.vertices], dtype=float).reshape(-1, 2)


@dataclass(frozen=True)
class EstimateReport:
    value: float
    replicates: int
    seed: int
    method: str
    std_error: Optional[float] = None
    abs_tolerance: Optional[float] = None
    m: Optional[float] = None
    intensity: Optional[float] = None
    meta: str = ""

    def __post_init__(self):
        if (self.std_error is None) == (self.abs_tolerance is None) and self.method != "asymptotic":
            raise ValueError("exactly one of std_error / abs_tolerance must be set")
        if self.std_error is not None and self.std_error < 0:
            raise ValueError("std_error must be >= 0")

    def to_dict(self) -> dict:
        out = {"value": self.value}
        if self.std_error is not None:
            out["std_error"] = self.std_error
        else:
            out["abs_tol"] = self.abs_tolerance if self.abs_tolerance is not None else 0.0
        out.update(replicates=self.replicates, seed=self.seed, m=self.m,
                   intensity=self.intensity, method=self.method)
        if self.meta:
            out["meta"] = self.meta
        return out


@dataclass(frozen=True)
class TwoPointGeometry:
    """Triangle quantities at ``x`` for generators ``v1``, ``v2``."""

    m: float
    eta_of_x: float
    phi_of_x: float

    @classmethod
    def at(cls, v1: Point, v2: Point, x: Point) -> "TwoPointGeometry":
        m = v1.dist(v2)
        eta = v1.dist(x) + v2.dist(x)
        return cls(m, eta, exterior_angle(v1, v2, x))


def exterior_angle(v1: Point, v2: Point, x: Point) -> float:
    """Sum of the triangle's interior angles at ``v1`` and ``v2``."""
    def angle_at(a: Point, b: Point, c: Point) -> float:
        ux, uy = b.x - a.x, b.y - a.y
        wx, wy = c.x - a.x, c.y - a.y
        return abs(math.atan2(ux * wy - uy * wx, ux * wx + uy * wy))
    if x == v1 or x == v2:
        return 0.0
    return angle_at(v1, v2, x) + angle_at(v2, v1, x)


# --------------------------------------------------------------------------
# cell construction

def _line_arrays(lines) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(lines, LineSample):
        return np.asarray(lines.p, float), np.asarray(lines.alpha, float)
    lines = list(lines)
    return (np.array([l.p for l in lines], dtype=float),
            np.array([l.alpha for l in lines], dtype=float))


def _halfplanes(p, a, v1: Point, v2: Point):
    """Half-planes ``n.x <= d`` containing both points, one per non-separating line."""
    c, s = np.cos(a), np.sin(a)
    f1 = c * v1.x + s * v1.y - p
    f2 = c * v2.x + s * v2.y - p
    scale = np.maximum(1.0, np.maximum(np.abs(p), max(abs(v1.x), abs(v1.y), abs(v2.x), abs(v2.y))))
    eps = 1e-12 * scale
    g1 = np.where(np.abs(f1) <= eps, 0, np.sign(f1))
    g2 = np.where(np.abs(f2) <= eps, 0, np.sign(f2))
    keep = g1 * g2 >= 0
    # both on the positive side (or on the line with the other positive) -> flip
    flip = (g1 + g2) > 0
    sgn = np.where(flip, -1.0, 1.0)[keep]
    return sgn * c[keep], sgn * s[keep], sgn * p[keep], ~keep


def _cell_polygon(nx, ny, d, rect: Rect) -> tuple[np.ndarray, bool]:
    scale = max(1.0, abs(rect.xmin), abs(rect.xmax), abs(rect.ymin), abs(rect.ymax))
    poly = np.array([[rect.xmin, rect.ymin], [rect.xmax, rect.ymin],
                     [rect.xmax, rect.ymax], [rect.xmin, rect.ymax]], dtype=float)
    xy = _kernels.clip_convex(poly, nx, ny, d, _CLIP_REL * scale)
    xy = _canonical(xy, 1e2 * _CLIP_REL * scale)
    return xy, not _touches_boundary(xy, rect, _EDGE_REL * scale)


def _canonical(xy: np.ndarray, tol: float) -> np.ndarray:
    """Drop repeated vertices; start at the lowest-then-leftmost one; CCW."""
    if len(xy) == 0:
        return xy
    keep = []
    for k in range(len(xy)):
        if not keep or np.max(np.abs(xy[k] - xy[keep[-1]])) > tol:
            keep.append(k)
    if len(keep) > 1 and np.max(np.abs(xy[keep[0]] - xy[keep[-1]])) <= tol:
        keep.pop()
    xy = xy[keep]
    if len(xy) >= 3 and _signed_area(xy) < 0:
        xy = xy[::-1]
    start = np.lexsort((xy[:, 0], xy[:, 1]))[0]
    return np.roll(xy, -start, axis=0)


def _signed_area(xy: np.ndarray) -> float:
    x, y = xy[:, 0], xy[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _touches_boundary(xy: np.ndarray, rect: Rect, tol: float) -> bool:
    nxt = np.roll(xy, -1, axis=0)
    for col, val in ((0, rect.xmin), (0, rect.xmax), (1, rect.ymin), (1, rect.ymax)):
        on = (np.abs(xy[:, col] - val) <= tol) & (np.abs(nxt[:, col] - val) <= tol)
        if on.any():
            return True
    return False


def two_point_cell(lines: Union[Sequence[Line], LineSample], v1: Point, v2: Point,
                   window: Rect) -> ConvexCell:
    """Cell of the non-separating lines containing ``v1`` and ``v2``, cut to ``window``."""
    if not (window.contains(v1, strict=True) and window.contains(v2, strict=True)):
        raise PointsOutsideWindow("generator points must lie strictly inside the window")
    p, a = _line_arrays(lines)
    nx, ny, d, _ = _halfplanes(p, a, v1, v2)
    xy, closed = _cell_polygon(nx, ny, d, window)
    return ConvexCell.from_array(xy, closed)


def separating_mask(lines: Union[Sequence[Line], LineSample], v1: Point, v2: Point) -> np.ndarray:
    p, a = _line_arrays(lines)
    return _halfplanes(p, a, v1, v2)[3]


def perimeter(cell: ConvexCell) -> float:
    if len(cell.vertices) < 3:
        raise DegenerateCell(f"cell has {len(cell.vertices)} vertices")
    xy = cell.as_array()
    d = np.roll(xy, -1, axis=0) - xy
    return float(np.sum(np.hypot(d[:, 0], d[:, 1])))


def _axis_perimeter_excess(xy: np.ndarray, m: float) -> float:
    """Perimeter minus ``2m`` for a convex polygon whose generators lie on the x-axis.

    Splits each edge as ``|dx| + dy^2 / (len + |dx|)`` so that the large
    horizontal extent cancels exactly against ``2m``.
    """
    d = np.roll(xy, -1, axis=0) - xy
    L = np.hypot(d[:, 0], d[:, 1])
    dx = np.abs(d[:, 0])
    with np.errstate(invalid="ignore", divide="ignore"):
        bend = np.where(L > 0, d[:, 1] ** 2 / (L + dx), 0.0)
    return float(np.sum(bend) + 2.0 * ((xy[:, 0].max() - xy[:, 0].min()) - m))


# --------------------------------------------------------------------------
# J_m evaluators

def Jm_asymptotic(m: float) -> float:
    """Large-``m`` form; evaluated for any ``m > 0`` but only meaningful for large ``m``."""
    if not m > 0:
        raise ValueError("m must be > 0")
    return 8.0 / 3.0 * (math.log(m) + EULER_GAMMA + 5.0 / 3.0)


def prob_no_separating(v1: Point, v2: Point, x: Point, intensity: float) -> float:
    eta = v1.dist(x) + v2.dist(x)
    return math.exp(-0.5 * intensity * (eta - v1.dist(v2)))


def initial_half_width(m: float, intensity: float) -> float:
    return max(10.0, math.sqrt(intensity * m)) / intensity


def _one_replicate(m: float, params: LineProcessParams, index: int, w0: float,
                   max_doublings: int) -> tuple[float, float, int]:
    rng = make_rng(params.seed, index)
    v1, v2 = Point(-0.5 * m, 0.0), Point(0.5 * m, 0.0)
    lo, w = 0.0, w0
    ps, alphas = [], []
    for _ in range(max_doublings + 1):
        s = sample_tube_nonseparating(v1, v2, w, params, rng=rng, inner_half_width=lo)
        ps.append(s.p)
        alphas.append(s.alpha)
        window = Rect(-0.5 * m - w, -w, 0.5 * m + w, w)
        p, a = np.concatenate(ps), np.concatenate(alphas)
        nx, ny, d, sep = _halfplanes(p, a, v1, v2)
        if sep.any():
            raise AssertionError("tube sampler returned a separating line")
        xy, closed = _cell_polygon(nx, ny, d, window)
        if closed:
            excess = _axis_perimeter_excess(xy, m)
            if excess < -1e-9 * max(1.0, m):
                raise AssertionError(f"closed cell perimeter below 2m (excess {excess})")
            return excess, w, len(p)
        lo, w = w, 2.0 * w
    raise NonConvergentWidening(
        f"replicate {index}: cell not closed with half-width {lo} (> 2^{max_doublings} x {w0})")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("LINENET_THREADS", "1")))
    except ValueError:
        return 1


def estimate_Jm_mc(m: float, intensity: float, replicates: int, seed: int,
                   half_width0: Optional[float] = None, max_doublings: int = 16) -> EstimateReport:
    """Monte Carlo mean of (perimeter - 2m) over independent cells.

    Each replicate grows a tube around the segment, doubling its half-width
    and adding only the lines of the new annulus, until the cell is closed
    strictly inside the tube. Lines missing the tube cannot cut such a
    cell, so the cell is exact.
    """
    if not m > 0:
        raise ValueError("m must be > 0")
    if replicates < 2:
        raise ValueError("need at least 2 replicates")
    if not intensity > 0:
        raise ValueError("intensity must be > 0")
    params = LineProcessParams(intensity, seed)
    w0 = initial_half_width(m, intensity) if half_width0 is None else half_width0
    run = lambda i: _one_replicate(m, params, i, w0, max_doublings)  # noqa: E731
    nthreads = _threads()
    if nthreads > 1:
        with ThreadPoolExecutor(nthreads) as ex:
            results = list(ex.map(run, range(replicates)))
    else:
        results = [run(i) for i in range(replicates)]
    ex_vals = np.array([r[0] for r in results])
    widths = np.array([r[1] for r in results])
    counts = np.array([r[2] for r in results])
    se = float(ex_vals.std(ddof=1) / math.sqrt(replicates))
    meta = (f"tube half-width start {w0:.6g}, median final {np.median(widths):.6g}, "
            f"max final {widths.max():.6g}; mean lines/replicate {counts.mean():.6g}; "
            f"kernel {_kernels.BACKEND}")
    return EstimateReport(float(ex_vals.mean()), replicates, seed, "mc", std_error=se,
                          m=m, intensity=intensity, meta=meta)


def _phi_minus_sin(phi: float) -> float:
    if phi < 1e-2:
        p2 = phi * phi
        return phi * p2 / 6.0 * (1.0 - p2 / 20.0 * (1.0 - p2 / 42.0))
    return phi - math.sin(phi)


def Jm_integrand(m: float, r: float, theta: float) -> float:
    """Polar integrand about ``v2 = (m/2, 0)``: ``(phi - sin phi) exp(-(eta - m)/2) r``.

    The point is ``v2 + r (-cos theta, sin theta)``; ``theta`` is the
    triangle's interior angle at ``v2``.
    """
    if r <= 0:
        return 0.0
    c, s = math.cos(theta), math.sin(theta)
    d1 = math.hypot(m - r * c, r * s)
    if m - r > 0:
        # d1 - (m - r) without cancellation
        gap = 2.0 * m * r * (2.0 * math.sin(0.5 * theta) ** 2) / (d1 + m - r)
    else:
        gap = r + d1 - m
    phi = theta + math.atan2(r * s, m - r * c)
    return _phi_minus_sin(phi) * math.exp(-0.5 * gap) * r


def _Jm_polar(m: float, eps: float, r_cut: float) -> tuple[float, float]:
    err = 0.0

    def inner_a(theta):
        nonlocal err
        rmax = 0.5 * m / math.cos(theta)
        scale = 2.0 / max(math.sin(0.5 * theta) ** 2, 1e-300)  # e-fold length of the exponent
        pts = [x for x in (scale, 10 * scale, 50 * scale) if x < rmax]
        v, e = quad(lambda r: Jm_integrand(m, r, theta), 0.0, rmax, points=pts or None,
                    limit=400, epsabs=0.0, epsrel=eps)
        err += e
        return v

    def inner_b(theta):
        nonlocal err
        v, e = quad(lambda r: Jm_integrand(m, r, theta), 0.0, r_cut, limit=400,
                    epsabs=0.0, epsrel=eps)
        err += e
        return v

    theta_star = m ** (-1.0 / 3.0)
    cuts = sorted({0.0, min(m ** -0.5, 0.5), min(theta_star, 1.0), 0.3, 0.5 * math.pi})
    total_a = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi > lo:
            v, e = quad(inner_a, lo, hi, limit=200, epsabs=0.0, epsrel=eps)
            total_a += v
            err += e
    total_b, e = quad(inner_b, 0.5 * math.pi, math.pi, limit=200, epsabs=0.0, epsrel=eps)
    err += e
    return 2.0 * (total_a + total_b), 2.0 * err


def Jm_quadrature(m: float, rel_tol: float = 1e-8, intensity: float = 1.0) -> EstimateReport:
    """Numerical quadrature of the exact double integral for ``J_m``.

    For intensity other than one, uses ``J(m; lam) = J(lam m; 1) / lam``.
    """
    if not m > 0:
        raise ValueError("m must be > 0")
    if not 0 < rel_tol < 0.1:
        raise ValueError("rel_tol must be in (0, 0.1)")
    if not intensity > 0:
        raise ValueError("intensity must be > 0")
    mu = intensity * m
    r_cut = 80.0
    coarse, _ = _Jm_polar(mu, rel_tol / 10.0, r_cut)
    fine, qerr = _Jm_polar(mu, rel_tol / 100.0, r_cut)
    diff = abs(fine - coarse)
    if diff > rel_tol * abs(fine):
        raise ToleranceNotMet(f"estimated error {diff:.3g} exceeds rel_tol * |J| at m={m}")
    # the requested relative accuracy is the reported floor
    tol = max(diff, rel_tol * abs(fine))
    return EstimateReport(fine / intensity, 0, 0, "quad", abs_tolerance=tol / intensity,
                          m=m, intensity=intensity,
                          meta=f"quad error sum {qerr:.3g}; region B cut at r={r_cut / intensity:g}")


def estimate_prob_no_separating_mc(v1: Point, v2: Point, x: Point, intensity: float,
                                   replicates: int, seed: int) -> EstimateReport:
    """Frequency of 'no line cuts both v1-x and v2-x' over independent samples."""
    pts = np.array([[v1.x, v1.y], [v2.x, v2.y], [x.x, x.y]])
    c = pts.mean(axis=0)
    radius = float(np.max(np.hypot(*(pts - c).T))) * 1.01 + 1e-9
    center = Point(float(c[0]), float(c[1]))
    params = LineProcessParams(intensity, seed)
    hits = np.zeros(replicates, dtype=bool)
    for i in range(replicates):
        s = sample_disk(center, radius, params, replicate=i)
        if len(s) == 0:
            continue
        cs, sn = np.cos(s.alpha), np.sin(s.alpha)
        f = [cs * q[0] + sn * q[1] - s.p for q in pts]
        both = (f[0] * f[2] < 0) & (f[1] * f[2] < 0)
        hits[i] = both.any()
    freq = 1.0 - hits.mean()
    se = math.sqrt(max(freq * (1 - freq), 0.0) / replicates)
    return EstimateReport(float(freq), replicates, seed, "mc", std_error=se, intensity=intensity)
