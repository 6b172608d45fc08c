"""Route-length statistics and equidistribution costs.

The excess of a network is the mean over distinct point pairs of
``route - euclid``; the ratio statistic is the mean of ``route / euclid - 1``.
"""
from __future__ import annotations

import csv
import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import _kernels
from .errors import CoincidentPoints, Disconnected, NonIntegralRatio, SizeMismatch
from .netbuild import Configuration, PlanarNetwork

ALL_PAIRS_MAX_N = 2000
COINCIDENT_TOL = 1e-9


class PairMode(Enum):
    AllPairs = "all"
    RandomPairs = "random"


@dataclass(frozen=True)
class PairSamplePlan:
    mode: PairMode
    count: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.mode is PairMode.RandomPairs and self.count < 1:
            raise ValueError("RandomPairs needs count >= 1")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")

    @classmethod
    def all_pairs(cls) -> "PairSamplePlan":
        return cls(PairMode.AllPairs)

    @classmethod
    def random_pairs(cls, n: int, seed: int, count: Optional[int] = None) -> "PairSamplePlan":
        total = n * (n - 1) // 2
        return cls(PairMode.RandomPairs, min(2000, total) if count is None else count, seed)

    def pairs(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Index arrays ``(i, j)`` with ``i < j``."""
        total = n * (n - 1) // 2
        if self.mode is PairMode.AllPairs:
            if n > ALL_PAIRS_MAX_N:
                raise ValueError(f"AllPairs is limited to n <= {ALL_PAIRS_MAX_N}; use RandomPairs")
            i, j = np.triu_indices(n, k=1)
            return i.astype(np.int64), j.astype(np.int64)
        k = min(self.count, total)
        rng = np.random.default_rng(np.random.SeedSequence(self.seed))
        ranks = np.sort(rng.choice(total, size=k, replace=False))
        return unrank_pairs(ranks, n)


def unrank_pairs(ranks: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Map ranks in ``[0, n(n-1)/2)`` to pairs ``i < j`` in row-major order."""
    ranks = np.asarray(ranks, dtype=np.int64)
    # row i starts at rank i*n - i*(i+1)/2
    i = np.floor((2 * n - 1 - np.sqrt((2.0 * n - 1) ** 2 - 8.0 * ranks)) / 2).astype(np.int64)
    start = i * n - i * (i + 1) // 2
    # guard against rounding in the square root
    over = start > ranks
    i[over] -= 1
    start = i * n - i * (i + 1) // 2
    nxt = (i + 1) * n - (i + 1) * (i + 2) // 2
    under = nxt <= ranks
    i[under] += 1
    start = i * n - i * (i + 1) // 2
    j = ranks - start + i + 1
    return i, j


@dataclass(frozen=True)
class StatReport:
    excess: float
    ratio: float
    pairs_used: int
    mode: str
    excess_std_error: Optional[float] = None
    ratio_std_error: Optional[float] = None
    excluded_pairs: int = 0
    total_pairs: int = 0

    def to_dict(self) -> dict:
        return {
            "excess": self.excess,
            "excess_std_error": self.excess_std_error,
            "ratio": self.ratio,
            "ratio_std_error": self.ratio_std_error,
            "pairs_used": self.pairs_used,
            "excluded_pairs": self.excluded_pairs,
            "total_pairs": self.total_pairs,
            "mode": self.mode,
        }


@dataclass(frozen=True)
class EquidistReport:
    L: float
    cost: float
    reference: str
    reference_sample_size: int
    seed: int

    def to_dict(self) -> dict:
        return {"L": self.L, "cost": self.cost, "reference": self.reference,
                "reference_sample_size": self.reference_sample_size, "seed": self.seed}


@dataclass(frozen=True)
class PairTable:
    i: np.ndarray
    j: np.ndarray
    euclid: np.ndarray
    route: np.ndarray

    @property
    def excess(self) -> np.ndarray:
        return self.route - self.euclid

    @property
    def ratio(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(self.euclid >= COINCIDENT_TOL, self.route / self.euclid - 1.0, np.nan)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\r\n")
            w.writerow(["i", "j", "euclid", "route", "excess", "ratio"])
            for row in zip(self.i.tolist(), self.j.tolist(), self.euclid.tolist(),
                           self.route.tolist(), self.excess.tolist(), self.ratio.tolist()):
                a, b, e, r, x, q = row
                w.writerow([a, b, f"{e:.17g}", f"{r:.17g}", f"{x:.17g}",
                            "" if math.isnan(q) else f"{q:.17g}"])


# --------------------------------------------------------------------------
# routing

def _check_route(route: float, euclid: float, tol: float) -> None:
    if math.isinf(route):
        raise Disconnected("no path between the requested nodes")
    if route < euclid - tol:
        raise AssertionError(f"route {route} shorter than straight line {euclid}")


def node_distances(net: PlanarNetwork, source: int, targets=None) -> np.ndarray:
    indptr, indices, weights = net.csr()
    return _kernels.dijkstra(indptr, indices, weights, int(source), targets)


def route_length(net: PlanarNetwork, a, b) -> float:
    """Shortest-path length between the nodes at ``a`` and ``b``."""
    ia, ib = net.node_of(a), net.node_of(b)
    d = float(node_distances(net, ia, [ib])[ib])
    pa, pb = net.nodes[ia], net.nodes[ib]
    _check_route(d, float(np.hypot(*(pa - pb))), 1e-9 * max(1.0, d))
    return d


def pair_routes(net: PlanarNetwork, xy: np.ndarray, i: np.ndarray, j: np.ndarray,
                nodes: Optional[np.ndarray] = None) -> PairTable:
    """Route and straight-line lengths for the given point pairs.

    One early-exit search per distinct source point.
    """
    xy = np.asarray(xy, dtype=float)
    nodes = net.nodes_of(xy) if nodes is None else np.asarray(nodes)
    route = np.empty(len(i))
    by_src: dict[int, list[int]] = defaultdict(list)
    for k, a in enumerate(i.tolist()):
        by_src[a].append(k)
    for a in sorted(by_src):
        ks = by_src[a]
        tgt = nodes[j[ks]]
        dist = node_distances(net, nodes[a], np.unique(tgt))
        route[ks] = dist[tgt]
    euclid = np.hypot(*(xy[i] - xy[j]).T)
    if np.isinf(route).any():
        raise Disconnected("some configuration points are not connected")
    slack = 1e-9 * np.maximum(1.0, route)
    bad = route < euclid - slack
    if bad.any():
        k = int(np.nonzero(bad)[0][0])
        raise AssertionError(f"route {route[k]} shorter than straight line {euclid[k]}")
    return PairTable(i, j, euclid, route)


def _mean_se(values: np.ndarray, population: int, sampled: bool) -> tuple[float, Optional[float]]:
    k = len(values)
    mean = float(values.mean())
    if not sampled:
        return mean, None
    if k < 2:
        return mean, float("nan")
    fpc = (population - k) / (population - 1) if population > 1 else 0.0
    return mean, float(values.std(ddof=1) / math.sqrt(k) * math.sqrt(max(fpc, 0.0)))


def summarize(table: PairTable, plan: PairSamplePlan, n: int) -> StatReport:
    total = n * (n - 1) // 2
    sampled = plan.mode is PairMode.RandomPairs
    ex_mean, ex_se = _mean_se(table.excess, total, sampled)
    ok = table.euclid >= COINCIDENT_TOL
    excluded = int((~ok).sum())
    if ok.any():
        ratio_vals = table.route[ok] / table.euclid[ok] - 1.0
        r_mean, r_se = _mean_se(ratio_vals, total, sampled)
    else:
        r_mean, r_se = float("nan"), None
    return StatReport(max(ex_mean, 0.0), max(r_mean, 0.0) if not math.isnan(r_mean) else r_mean,
                      len(table.i), plan.mode.value, ex_se, r_se, excluded, total)


def pair_stats(net: PlanarNetwork, config: Configuration, plan: PairSamplePlan,
               policy: str = "shortest", s: Optional[float] = None) -> tuple[StatReport, PairTable]:
    i, j = plan.pairs(config.n)
    if policy == "shortest":
        table = pair_routes(net, config.xy, i, j)
    elif policy == "grid-vertex":
        if s is None:
            raise ValueError("grid-vertex policy needs the medium grid side s")
        table = grid_vertex_routes(net, config, i, j, s)
    else:
        raise ValueError(f"unknown route policy {policy!r}")
    return summarize(table, plan, config.n), table


def excess_stat(net: PlanarNetwork, config: Configuration, plan: PairSamplePlan) -> StatReport:
    return pair_stats(net, config, plan)[0]


def ratio_stat(net: PlanarNetwork, config: Configuration, plan: PairSamplePlan) -> StatReport:
    rep = pair_stats(net, config, plan)[0]
    if rep.excluded_pairs == rep.pairs_used:
        raise CoincidentPoints("every sampled pair is coincident; ratio undefined")
    return rep


def grid_vertex_routes(net: PlanarNetwork, config: Configuration, i: np.ndarray, j: np.ndarray,
                       s: float) -> PairTable:
    """Upper-bound routes through the nearest medium-grid vertices.

    Each point walks to its nearest grid vertex, the two vertices are joined
    by a shortest path, and the far point is reached from its own vertex.
    Never shorter than the true shortest path.
    """
    side = config.side
    k = round(side / s)
    gv = np.clip(np.round(config.xy / side * k), 0, k) * side / k
    vnodes = net.nodes_of(gv)
    pnodes = net.nodes_of(config.xy)
    uniq = np.unique(np.concatenate([vnodes[i], vnodes[j]]))
    legs = {}
    for v in uniq.tolist():
        legs[v] = node_distances(net, v)
    route = np.array([legs[vnodes[a]][pnodes[a]] + legs[vnodes[a]][vnodes[b]] + legs[vnodes[b]][pnodes[b]]
                      for a, b in zip(i.tolist(), j.tolist())])
    if np.isinf(route).any():
        raise Disconnected("grid vertex unreachable")
    euclid = np.hypot(*(config.xy[i] - config.xy[j]).T)
    return PairTable(i, j, euclid, route)


# --------------------------------------------------------------------------
# equidistribution

def reference_sample(kind: str, n: int, side: float, seed: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    if kind == "square":
        return rng.random((n, 2)) * side
    if kind == "disk":
        # uniform on the disk inscribed in the window
        r = 0.5 * side * np.sqrt(rng.random(n))
        a = 2.0 * np.pi * rng.random(n)
        return np.column_stack([0.5 * side + r * np.cos(a), 0.5 * side + r * np.sin(a)])
    raise ValueError(f"unknown reference {kind!r}")


def truncated_assignment_cost(x: np.ndarray, y: np.ndarray, L: float) -> float:
    """Optimal mean of ``min(1, |x_i - y_sigma(i)| / L)`` over bijections."""
    x = np.asarray(x, dtype=float).reshape(-1, 2)
    y = np.asarray(y, dtype=float).reshape(-1, 2)
    if len(x) != len(y):
        raise SizeMismatch(f"{len(x)} points vs {len(y)} reference points")
    if not L > 0:
        raise ValueError("L must be > 0")
    if len(x) == 0:
        return 0.0
    d = np.hypot(x[:, None, 0] - y[None, :, 0], x[:, None, 1] - y[None, :, 1])
    c = np.minimum(1.0, d / L)
    r, k = linear_sum_assignment(c)
    return float(min(1.0, max(0.0, c[r, k].mean())))


def equidist_cost(config: Configuration, L: float, reference_sample_size: int, seed: int,
                  reference: str = "square") -> EquidistReport:
    if reference_sample_size != config.n:
        raise SizeMismatch(f"reference sample size {reference_sample_size} != n = {config.n}")
    y = reference_sample(reference, config.n, config.side, seed)
    cost = truncated_assignment_cost(config.xy, y, L)
    name = {"square": "UniformSquare", "disk": "UniformDisk"}[reference]
    return EquidistReport(L, cost, name, reference_sample_size, seed)


def box_count_equidist(config: Configuration, lam: float) -> float:
    """``(1/n) sum |N(box) - n/k^2|`` over the ``k x k`` partition into ``lam``-boxes."""
    r = config.side / lam
    k = round(r)
    if k < 1 or abs(r - k) > 1e-9 * max(1.0, r):
        raise NonIntegralRatio(f"side/lambda = {r} is not a positive integer")
    ij = np.minimum((config.xy / lam).astype(np.int64), k - 1)
    counts = np.bincount(ij[:, 0] * k + ij[:, 1], minlength=k * k)
    return float(np.abs(counts - config.n / (k * k)).sum() / config.n)

