"""Hierarchical low-cost network over a point configuration.

Layers, from the smallest scale up: a baseline tree on the points (Euclidean
MST standing in for the Steiner tree), hot-spot cells of a fine grid with
connectors to the points inside them, a medium grid, and Poisson lines
clipped to the window. The union is planarized into a routable graph.
"""
from __future__ import annotations

import json
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import minimum_spanning_tree
from scipy.spatial import Delaunay, QhullError

from . import _kernels
from .errors import CollinearOverlap, NodeMismatch, NonIntegralRatio
from .geom import Line, Point, Rect, Segment, clip_line_to_rect
from .lineproc import LineProcessParams, sample_rect

log = logging.getLogger(__name__)


class Layer(IntEnum):
    Tree = 0
    MediumGrid = 1
    HotspotCell = 2
    HotspotConnector = 3
    PoissonLine = 4


ALL_LAYERS = frozenset(Layer)

# which layer keeps a stretch covered by several collinear inputs
_OVERLAP_PRIORITY = {
    Layer.MediumGrid: 0,
    Layer.Tree: 1,
    Layer.HotspotCell: 2,
    Layer.HotspotConnector: 3,
    Layer.PoissonLine: 4,
}


def _integral_ratio(a: float, b: float, what: str) -> int:
    r = a / b
    k = round(r)
    if k < 1 or abs(r - k) > 1e-9 * max(1.0, r):
        raise NonIntegralRatio(f"{what} = {r} is not a positive integer")
    return int(k)


@dataclass(frozen=True, eq=False)
class Configuration:
    xy: np.ndarray
    side: float

    def __post_init__(self):
        xy = np.ascontiguousarray(self.xy, dtype=float).reshape(-1, 2)
        object.__setattr__(self, "xy", xy)
        xy.setflags(write=False)
        if len(xy) < 2:
            raise ValueError("a configuration needs n >= 2 points")
        if not np.all(np.isfinite(xy)):
            raise ValueError("non-finite coordinates")
        if xy.min() < 0 or xy.max() > self.side:
            raise ValueError("points must lie in the window [0, side]^2")

    @classmethod
    def from_points(cls, points, side: Optional[float] = None) -> "Configuration":
        xy = np.array([(p.x, p.y) if isinstance(p, Point) else tuple(p) for p in points], dtype=float)
        return cls(xy, math.sqrt(len(xy)) if side is None else side)

    @classmethod
    def uniform(cls, n: int, seed: int) -> "Configuration":
        side = math.sqrt(n)
        rng = np.random.default_rng(np.random.SeedSequence(seed))
        return cls(rng.random((n, 2)) * side, side)

    @property
    def n(self) -> int:
        return len(self.xy)

    @property
    def points(self) -> list[Point]:
        return [Point(float(x), float(y)) for x, y in self.xy]

    @property
    def window(self) -> Rect:
        return Rect.square(self.side)


def default_scales(n: int, side: Optional[float] = None) -> tuple[float, float]:
    """Medium side ``s ~ (ln n)^(1/3)`` and small side ``t ~ (ln n)^(-1/6)``,
    rounded so that ``side/s`` and ``s/t`` are integers."""
    side = math.sqrt(n) if side is None else side
    ln = math.log(max(n, 3))
    k_medium = max(1, round(side / ln ** (1.0 / 3.0)))
    s = side / k_medium
    k_small = max(1, round(s * ln ** (1.0 / 6.0)))
    return s, s / k_small


@dataclass(frozen=True)
class BuildParams:
    intensity: float
    s: float
    t: float
    seed: int

    def __post_init__(self):
        if self.intensity < 0:
            raise ValueError("intensity must be >= 0")
        if not (self.s > 0 and self.t > 0):
            raise ValueError("s and t must be > 0")

    @classmethod
    def default(cls, n: int, intensity: float, seed: int, side: Optional[float] = None) -> "BuildParams":
        s, t = default_scales(n, side)
        return cls(intensity, s, t, seed)

    def check(self, side: float) -> tuple[int, int]:
        return (_integral_ratio(side, self.s, "side/s"), _integral_ratio(self.s, self.t, "s/t"))


@dataclass(frozen=True)
class LengthAccounting:
    tree: float
    medium_grid: float
    hotspot_cell: float
    hotspot_connector: float
    poisson_line: float
    baseline_tree_length: float

    @property
    def total(self) -> float:
        return self.tree + self.medium_grid + self.hotspot_cell + self.hotspot_connector + self.poisson_line

    @property
    def excess_over_tree(self) -> float:
        return self.total - self.baseline_tree_length

    def to_dict(self) -> dict:
        return {
            "Tree": self.tree,
            "MediumGrid": self.medium_grid,
            "HotspotCell": self.hotspot_cell,
            "HotspotConnector": self.hotspot_connector,
            "PoissonLine": self.poisson_line,
            "total": self.total,
            "baseline_tree_length": self.baseline_tree_length,
            "excess_over_tree": self.excess_over_tree,
        }


class _NodeIndex:
    """Coordinate de-duplication with a tolerance, via a hashed grid."""

    def __init__(self, tol: float):
        self.tol = tol
        self.q = 2.0 * tol
        self.cells: dict[tuple[int, int], list[int]] = defaultdict(list)
        self.xy: list[tuple[float, float]] = []

    def find(self, x: float, y: float) -> int:
        kx, ky = math.floor(x / self.q), math.floor(y / self.q)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for nid in self.cells.get((kx + dx, ky + dy), ()):
                    px, py = self.xy[nid]
                    if abs(px - x) <= self.tol and abs(py - y) <= self.tol:
                        return nid
        return -1

    def add(self, x: float, y: float) -> int:
        nid = self.find(x, y)
        if nid >= 0:
            return nid
        nid = len(self.xy)
        self.xy.append((x, y))
        self.cells[(math.floor(x / self.q), math.floor(y / self.q))].append(nid)
        return nid


@dataclass(eq=False)
class PlanarNetwork:
    nodes: np.ndarray
    ei: np.ndarray
    ej: np.ndarray
    length: np.ndarray
    layer: np.ndarray
    tol: float = 1e-9
    warnings: list[str] = field(default_factory=list)
    point_nodes: Optional[np.ndarray] = field(default=None, repr=False)
    _csr: Optional[tuple] = field(default=None, repr=False)
    _index: Optional[_NodeIndex] = field(default=None, repr=False)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.ei)

    @property
    def edges(self) -> list[tuple[int, int, float, Layer]]:
        return [(int(a), int(b), float(l), Layer(int(k)))
                for a, b, l, k in zip(self.ei, self.ej, self.length, self.layer)]

    def total_length(self) -> float:
        return float(self.length.sum())

    def layer_lengths(self) -> dict[Layer, float]:
        return {lay: float(self.length[self.layer == lay].sum()) for lay in Layer}

    def csr(self):
        if self._csr is None:
            n = self.n_nodes
            src = np.concatenate([self.ei, self.ej])
            dst = np.concatenate([self.ej, self.ei])
            w = np.concatenate([self.length, self.length])
            order = np.lexsort((dst, src))
            src, dst, w = src[order], dst[order], w[order]
            indptr = np.zeros(n + 1, dtype=np.int64)
            np.add.at(indptr, src + 1, 1)
            indptr = np.cumsum(indptr)
            self._csr = (indptr, dst.astype(np.int64), w.astype(float))
        return self._csr

    def node_of(self, q) -> int:
        if self._index is None:
            idx = _NodeIndex(self.tol)
            for x, y in self.nodes:
                idx.add(float(x), float(y))
            self._index = idx
        x, y = (q.x, q.y) if isinstance(q, Point) else q
        nid = self._index.find(float(x), float(y))
        if nid < 0:
            raise NodeMismatch(f"point ({x}, {y}) is not a network node")
        return nid

    def nodes_of(self, xy: np.ndarray) -> np.ndarray:
        return np.array([self.node_of((x, y)) for x, y in np.asarray(xy)], dtype=np.int64)

    def components(self) -> np.ndarray:
        """Component label per node (union-find)."""
        parent = list(range(self.n_nodes))

        def root(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in zip(self.ei.tolist(), self.ej.tolist()):
            ra, rb = root(a), root(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return np.array([root(a) for a in range(self.n_nodes)], dtype=np.int64)

    def is_connected(self) -> bool:
        return self.n_nodes == 0 or len(np.unique(self.components())) == 1

    def points_connected(self) -> bool:
        """True when every configuration point lies in one component."""
        if self.point_nodes is None or len(self.point_nodes) == 0:
            return True
        return len(np.unique(self.components()[self.point_nodes])) == 1

    def to_json(self) -> str:
        doc = {
            "nodes": [[float(x), float(y)] for x, y in self.nodes],
            "edges": [[int(a), int(b), float(l), Layer(int(k)).name]
                      for a, b, l, k in zip(self.ei, self.ej, self.length, self.layer)],
        }
        return json.dumps(doc, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "PlanarNetwork":
        doc = json.loads(text)
        nodes = np.array(doc["nodes"], dtype=float).reshape(-1, 2)
        edges = doc["edges"]
        ei = np.array([e[0] for e in edges], dtype=np.int64)
        ej = np.array([e[1] for e in edges], dtype=np.int64)
        ln = np.array([e[2] for e in edges], dtype=float)
        lay = np.array([Layer[e[3]] for e in edges], dtype=np.int64)
        scale = max(1.0, float(np.abs(nodes).max())) if len(nodes) else 1.0
        return cls(nodes, ei, ej, ln, lay, tol=1e-9 * scale)


# --------------------------------------------------------------------------
# baseline tree

def _merge_duplicates(xy: np.ndarray, tol: float) -> tuple[np.ndarray, list[str]]:
    idx = _NodeIndex(tol)
    keep, warn = [], []
    for k, (x, y) in enumerate(xy):
        before = len(idx.xy)
        nid = idx.add(float(x), float(y))
        if len(idx.xy) > before:
            keep.append(k)
        else:
            warn.append(f"point {k} coincides with point {keep[nid]}; merged")
    return xy[keep], warn


def emst_edges(xy: np.ndarray) -> np.ndarray:
    """Euclidean minimum spanning tree edges ``(i, j)`` with ``i < j``."""
    n = len(xy)
    if n < 2:
        return np.empty((0, 2), dtype=np.int64)
    cand = None
    if n > 3:
        try:
            tri = Delaunay(xy)
            s = tri.simplices
            cand = np.vstack([s[:, [0, 1]], s[:, [1, 2]], s[:, [0, 2]]])
        except QhullError:
            cand = None
    if cand is None:
        cand = np.array([(i, j) for i in range(n) for j in range(i + 1, n)], dtype=np.int64)
    cand = np.unique(np.sort(cand, axis=1), axis=0)
    w = np.hypot(*(xy[cand[:, 0]] - xy[cand[:, 1]]).T)
    # zero weights vanish in sparse storage; duplicates are merged upstream
    g = coo_matrix((w, (cand[:, 0], cand[:, 1])), shape=(n, n)).tocsr()
    t = minimum_spanning_tree(g).tocoo()
    e = np.sort(np.column_stack([t.row, t.col]).astype(np.int64), axis=1)
    return e[np.lexsort((e[:, 1], e[:, 0]))]


def steiner_surrogate(config: Configuration) -> PlanarNetwork:
    """Baseline tree: Euclidean MST on the points (Tree layer only)."""
    tol = 1e-9 * max(1.0, config.side)
    xy, warn = _merge_duplicates(config.xy, tol)
    for w in warn:
        log.warning(w)
    e = emst_edges(xy)
    ln = np.hypot(*(xy[e[:, 0]] - xy[e[:, 1]]).T) if len(e) else np.empty(0)
    return PlanarNetwork(xy.copy(), e[:, 0].copy(), e[:, 1].copy(), ln,
                         np.full(len(e), int(Layer.Tree), dtype=np.int64), tol=tol, warnings=warn)


# --------------------------------------------------------------------------
# grids and hot-spots

def medium_grid(side: float, s: float) -> list[Segment]:
    k = _integral_ratio(side, s, "side/s")
    ticks = [side * i / k for i in range(k + 1)]
    out = [Segment(Point(x, 0.0), Point(x, side)) for x in ticks]
    out += [Segment(Point(0.0, y), Point(side, y)) for y in ticks]
    return out


def hotspot_cells(config: Configuration, t: float, s: Optional[float] = None
                  ) -> tuple[list[Rect], list[Segment]]:
    """Small-grid cells holding two or more points, and point-to-perimeter connectors."""
    side = config.side
    if s is not None:
        _integral_ratio(s, t, "s/t")
    k = _integral_ratio(side, t, "side/t")
    ij = np.minimum((config.xy / (side / k)).astype(np.int64), k - 1)
    members: dict[tuple[int, int], list[int]] = defaultdict(list)
    for idx, (a, b) in enumerate(ij.tolist()):
        members[(a, b)].append(idx)
    hot = sorted(key for key, pts in members.items() if len(pts) >= 2)
    if len(hot) > config.n / 2:
        raise AssertionError("more hot-spot cells than n/2")
    cells, connectors = [], []
    tol = 1e-9 * max(1.0, side)
    for a, b in hot:
        r = Rect(side * a / k, side * b / k, side * (a + 1) / k, side * (b + 1) / k)
        cells.append(r)
        for idx in members[(a, b)]:
            x, y = config.xy[idx]
            options = [(x - r.xmin, Point(r.xmin, y)), (r.xmax - x, Point(r.xmax, y)),
                       (y - r.ymin, Point(x, r.ymin)), (r.ymax - y, Point(x, r.ymax))]
            dist, foot = min(options, key=lambda o: o[0])
            if dist > tol:
                connectors.append(Segment(Point(float(x), float(y)), foot))
    return cells, connectors


def hotspot_perimeter(cells: Sequence[Rect], side: float, t: float, s: float) -> list[Segment]:
    """Unit sides of the hot-spot cells, de-duplicated, minus those on medium grid lines."""
    k = _integral_ratio(side, t, "side/t")
    ratio = _integral_ratio(s, t, "s/t")
    edges = set()
    for r in cells:
        a, b = round(r.xmin / side * k), round(r.ymin / side * k)
        edges.update({("h", b, a), ("h", b + 1, a), ("v", a, b), ("v", a + 1, b)})
    out = []
    for kind, line, pos in sorted(edges):
        if line % ratio == 0:
            continue
        c, p0, p1 = side * line / k, side * pos / k, side * (pos + 1) / k
        if kind == "h":
            out.append(Segment(Point(p0, c), Point(p1, c)))
        else:
            out.append(Segment(Point(c, p0), Point(c, p1)))
    return out


def poisson_segments(window: Rect, intensity: float, seed: int) -> list[Segment]:
    if intensity == 0:
        return []
    sample = sample_rect(window, LineProcessParams(intensity, seed))
    out = []
    for line in sample.lines:
        seg = clip_line_to_rect(line, window)
        if seg is not None:
            out.append(seg)
    return out


# --------------------------------------------------------------------------
# planarization

def resolve_collinear_overlaps(seg: np.ndarray, layers: np.ndarray, tol: float
                               ) -> tuple[np.ndarray, np.ndarray]:
    """Split segments sharing a carrier line into disjoint pieces.

    Each stretch covered more than once is kept once, under the layer with
    the highest priority (medium grid, then tree, hot-spot sides,
    connectors, Poisson lines).
    """
    seg = np.asarray(seg, dtype=float).reshape(-1, 4)
    layers = np.asarray(layers, dtype=np.int64)
    d = seg[:, 2:] - seg[:, :2]
    L = np.hypot(d[:, 0], d[:, 1])
    alpha = np.mod(np.arctan2(d[:, 0], -d[:, 1]), np.pi)  # normal angle
    alpha = np.where(np.pi - alpha <= 1e-12, 0.0, alpha)
    p = seg[:, 0] * np.cos(alpha) + seg[:, 1] * np.sin(alpha)
    order = np.lexsort((p, alpha))
    groups, cur = [], [order[0]] if len(order) else []
    for a, b in zip(order[:-1], order[1:]):
        if abs(alpha[b] - alpha[a]) <= 1e-12 and abs(p[b] - p[a]) <= tol:
            cur.append(b)
        else:
            groups.append(cur)
            cur = [b]
    if cur:
        groups.append(cur)
    keep = np.ones(len(seg), dtype=bool)
    extra_seg, extra_lay = [], []
    for g in groups:
        if len(g) < 2:
            continue
        a0 = alpha[g[0]]
        ux, uy = -math.sin(a0), math.cos(a0)
        iv = []
        for k in g:
            s0 = seg[k, 0] * ux + seg[k, 1] * uy
            s1 = seg[k, 2] * ux + seg[k, 3] * uy
            iv.append((min(s0, s1), max(s0, s1), int(layers[k]), k))
        iv.sort()
        overlapping = any(iv[q + 1][0] < iv[q][1] - tol for q in range(len(iv) - 1)) or \
            _any_overlap(iv, tol)
        if not overlapping:
            continue
        for _, _, _, k in iv:
            keep[k] = False
        pts = sorted({v for a, b, _, _ in iv for v in (a, b)})
        pieces = []
        for lo, hi in zip(pts[:-1], pts[1:]):
            if hi - lo <= tol:
                continue
            mid = 0.5 * (lo + hi)
            cover = [lay for a, b, lay, _ in iv if a - tol <= mid <= b + tol]
            if not cover:
                continue
            best = min(cover, key=lambda lay: _OVERLAP_PRIORITY[Layer(lay)])
            if pieces and pieces[-1][2] == best and abs(pieces[-1][1] - lo) <= tol:
                pieces[-1][1] = hi
            else:
                pieces.append([lo, hi, best])
        # carrier point: any input point projected back
        k0 = g[0]
        base = np.array([seg[k0, 0], seg[k0, 1]])
        s_base = base[0] * ux + base[1] * uy
        for lo, hi, lay in pieces:
            a = base + (lo - s_base) * np.array([ux, uy])
            b = base + (hi - s_base) * np.array([ux, uy])
            extra_seg.append(_snap_endpoint(a, seg[g]) + _snap_endpoint(b, seg[g]))
            extra_lay.append(lay)
    out_seg = seg[keep]
    out_lay = layers[keep]
    if extra_seg:
        out_seg = np.vstack([out_seg, np.array(extra_seg, dtype=float)])
        out_lay = np.concatenate([out_lay, np.array(extra_lay, dtype=np.int64)])
    return out_seg, out_lay


def _any_overlap(iv, tol):
    reach = -math.inf
    for a, b, _, _ in iv:
        if a < reach - tol:
            return True
        reach = max(reach, b)
    return False


def _snap_endpoint(q, group_seg) -> list[float]:
    """Reuse an original endpoint's exact coordinates when ``q`` is one of them."""
    ends = group_seg.reshape(-1, 2)
    dist = np.abs(ends - q).max(axis=1)
    k = int(np.argmin(dist))
    if dist[k] <= 1e-9 * max(1.0, float(np.abs(q).max())):
        return [float(ends[k, 0]), float(ends[k, 1])]
    return [float(q[0]), float(q[1])]


def _planarize_arrays(seg: np.ndarray, layers: np.ndarray, tol: float) -> PlanarNetwork:
    seg = np.asarray(seg, dtype=float).reshape(-1, 4)
    layers = np.asarray(layers, dtype=np.int64)
    status, I, J, T, U, X, Y = _kernels.segment_intersections(seg, tol)
    if status == _kernels.COLLINEAR:
        raise CollinearOverlap(f"segments {int(I[0])} and {int(J[0])} overlap collinearly")
    idx = _NodeIndex(tol)
    stops: list[list[tuple[float, int]]] = [[] for _ in range(len(seg))]
    for k, (x0, y0, x1, y1) in enumerate(seg.tolist()):
        stops[k].append((0.0, idx.add(x0, y0)))
        stops[k].append((1.0, idx.add(x1, y1)))
    for i, j, t, u, x, y in zip(I.tolist(), J.tolist(), T.tolist(), U.tolist(), X.tolist(), Y.tolist()):
        nid = idx.add(x, y)
        stops[i].append((t, nid))
        stops[j].append((u, nid))
    seen = set()
    ei, ej, lay = [], [], []
    for k, st in enumerate(stops):
        st.sort()
        prev = None
        for _, nid in st:
            if prev is not None and nid != prev:
                key = (min(prev, nid), max(prev, nid))
                if key not in seen:
                    seen.add(key)
                    ei.append(key[0])
                    ej.append(key[1])
                    lay.append(int(layers[k]))
            prev = nid
    nodes = np.array(idx.xy, dtype=float).reshape(-1, 2)
    ei = np.array(ei, dtype=np.int64)
    ej = np.array(ej, dtype=np.int64)
    ln = np.hypot(*(nodes[ei] - nodes[ej]).T) if len(ei) else np.empty(0)
    net = PlanarNetwork(nodes, ei, ej, ln, np.array(lay, dtype=np.int64), tol=tol)
    net._index = idx
    return net


def planarize(segments: Iterable[tuple[Segment, Layer]], tol: Optional[float] = None) -> PlanarNetwork:
    """Graph whose nodes are all endpoints and crossings of the input segments."""
    items = list(segments)
    seg = np.array([s.as_tuple() for s, _ in items], dtype=float).reshape(-1, 4)
    layers = np.array([int(l) for _, l in items], dtype=np.int64)
    if tol is None:
        tol = 1e-9 * max(1.0, float(np.abs(seg).max()) if len(seg) else 1.0)
    return _planarize_arrays(seg, layers, tol)


# --------------------------------------------------------------------------
# full build

def _snap_to_grid(xy: np.ndarray, side: float, k: int, tol: float) -> np.ndarray:
    g = xy / side * k
    near = np.abs(g - np.round(g)) * side / k <= tol
    return np.where(near, np.round(g) * side / k, xy)


def build_network(config: Configuration, params: BuildParams,
                  layers: frozenset = ALL_LAYERS) -> tuple[PlanarNetwork, LengthAccounting]:
    side = config.side
    k_medium, ratio = params.check(side)
    tol = 1e-9 * max(1.0, side)
    xy = _snap_to_grid(config.xy, side, k_medium * ratio, tol)
    xy, warn = _merge_duplicates(xy, tol)
    cfg = Configuration(xy, side)

    tree = emst_edges(xy)
    baseline = float(np.hypot(*(xy[tree[:, 0]] - xy[tree[:, 1]]).T).sum()) if len(tree) else 0.0

    seg_rows: list[tuple[float, float, float, float]] = []
    lay_rows: list[int] = []

    def add(segs, lay):
        for s in segs:
            seg_rows.append(s.as_tuple())
            lay_rows.append(int(lay))

    if Layer.Tree in layers:
        for a, b in tree:
            seg_rows.append((xy[a, 0], xy[a, 1], xy[b, 0], xy[b, 1]))
            lay_rows.append(int(Layer.Tree))
    if Layer.MediumGrid in layers:
        add(medium_grid(side, params.s), Layer.MediumGrid)
    if Layer.HotspotCell in layers or Layer.HotspotConnector in layers:
        cells, connectors = hotspot_cells(cfg, params.t, params.s)
        if Layer.HotspotCell in layers:
            add(hotspot_perimeter(cells, side, params.t, params.s), Layer.HotspotCell)
        if Layer.HotspotConnector in layers:
            add(connectors, Layer.HotspotConnector)
    if Layer.PoissonLine in layers:
        add(poisson_segments(cfg.window, params.intensity, params.seed), Layer.PoissonLine)

    seg = np.array(seg_rows, dtype=float).reshape(-1, 4)
    lay = np.array(lay_rows, dtype=np.int64)
    seg, lay = resolve_collinear_overlaps(seg, lay, tol)
    net = _planarize_arrays(seg, lay, tol)
    net.warnings.extend(warn)
    for w in warn:
        log.warning(w)

    input_total = float(np.hypot(seg[:, 2] - seg[:, 0], seg[:, 3] - seg[:, 1]).sum())
    if abs(net.total_length() - input_total) > 1e-6 * max(1.0, input_total):
        raise AssertionError("planarization changed total length")
    ll = net.layer_lengths()
    acc = LengthAccounting(ll[Layer.Tree], ll[Layer.MediumGrid], ll[Layer.HotspotCell],
                           ll[Layer.HotspotConnector], ll[Layer.PoissonLine], baseline)
    net.point_nodes = net.nodes_of(config.xy)
    return net, acc
