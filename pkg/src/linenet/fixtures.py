"""Clustered configurations whose networks are short yet have tiny excess.

The window is cut into ``K x K`` subsquares of side about ``L / ln n``; the
points are shared out evenly and placed very close to the subsquare
centres; the network is the complete graph on the centres plus one spoke
from each point to its centre. Routes are then spoke, straight chord,
spoke, so the excess is at most four spoke lengths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geom import Point, Segment
from .netbuild import Configuration, Layer, PlanarNetwork, _planarize_arrays, resolve_collinear_overlaps


@dataclass(frozen=True, eq=False)
class ClusteredFixture:
    config: Configuration
    centres: np.ndarray
    owner: np.ndarray   # centre index of every point
    spread: float
    K: int

    @property
    def cell_side(self) -> float:
        return self.config.side / self.K

    def spoke_lengths(self) -> np.ndarray:
        return np.hypot(*(self.config.xy - self.centres[self.owner]).T)


def clustered_fixture(n: int, gamma: float = 0.45, spread: float = 1e-3, seed: int = 0
                      ) -> ClusteredFixture:
    """Points within ``spread`` of the centres of subsquares of side about ``n^gamma / ln n``."""
    side = math.sqrt(n)
    target = n ** gamma / math.log(n)
    K = max(1, round(side / target))
    h = side / K
    g = (np.arange(K) + 0.5) * h
    cx, cy = np.meshgrid(g, g, indexing="ij")
    centres = np.column_stack([cx.ravel(), cy.ravel()])
    owner = np.arange(n) % len(centres)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    r = spread * np.sqrt(rng.random(n))
    a = 2.0 * np.pi * rng.random(n)
    xy = centres[owner] + np.column_stack([r * np.cos(a), r * np.sin(a)])
    return ClusteredFixture(Configuration(xy, side), centres, owner, spread, K)


def clustered_excess(fx: ClusteredFixture) -> float:
    """Exact all-pairs mean excess of the spoke-and-complete-graph network."""
    xy, c, own = fx.config.xy, fx.centres, fx.owner
    spoke = fx.spoke_lengths()
    n = len(xy)
    total = 0.0
    for k in range(n - 1):
        j = np.arange(k + 1, n)
        chord = np.hypot(*(c[own[j]] - c[own[k]]).T)
        euclid = np.hypot(*(xy[j] - xy[k]).T)
        total += float((spoke[k] + chord + spoke[j] - euclid).sum())
    return total / (n * (n - 1) / 2)


def lattice_union_length(K: int, h: float) -> float:
    """Length of the union of all chords between points of a ``K x K`` lattice of spacing ``h``.

    Collinear chords overlap, so each lattice line with ``c`` points
    contributes only the ``c - 1`` steps between consecutive points.
    """
    if K < 2:
        return 0.0
    ii, jj = np.meshgrid(np.arange(K), np.arange(K), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    total = 0.0
    for a in range(0, K):
        for b in range(-(K - 1), K):
            if (a == 0 and b <= 0) or math.gcd(a, abs(b)) != 1:
                continue
            # lines with direction (a, b) are labelled by b*i - a*j
            key = b * ii - a * jj
            _, counts = np.unique(key, return_counts=True)
            total += float((counts - 1).sum()) * math.hypot(a, b) * h
    return total


def clustered_length(fx: ClusteredFixture) -> float:
    return lattice_union_length(fx.K, fx.cell_side) + float(fx.spoke_lengths().sum())


def clustered_network(fx: ClusteredFixture) -> PlanarNetwork:
    """Planarized network; only practical for small ``K``."""
    items = []
    cs = [Point(float(x), float(y)) for x, y in fx.centres]
    for p in range(len(cs)):
        for q in range(p + 1, len(cs)):
            items.append((Segment(cs[p], cs[q]), Layer.Tree))
    for k, (x, y) in enumerate(fx.config.xy):
        if math.hypot(x - fx.centres[fx.owner[k], 0], y - fx.centres[fx.owner[k], 1]) > 0:
            items.append((Segment(Point(float(x), float(y)), cs[fx.owner[k]]), Layer.HotspotConnector))
    seg = np.array([s.as_tuple() for s, _ in items], dtype=float)
    lay = np.array([int(l) for _, l in items], dtype=np.int64)
    tol = 1e-9 * max(1.0, fx.config.side)
    seg, lay = resolve_collinear_overlaps(seg, lay, tol)
    return _planarize_arrays(seg, lay, tol)
