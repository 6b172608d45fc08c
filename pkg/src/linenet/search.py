"""Rejection search over random augmentations.

Each attempt rebuilds the network with a fresh line-process seed and is
accepted when both the added length and the route excess are at or below
their thresholds. Thresholds are set to three times pilot means, so each
exceeds its threshold with probability at most about 1/3 by Markov's
inequality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import ExhaustedAttempts
from .netbuild import BuildParams, Configuration, PlanarNetwork, build_network
from .stats import PairSamplePlan, excess_stat


@dataclass(frozen=True)
class AttemptRecord:
    index: int
    seed: int
    length_excess: float
    route_excess: float
    accepted: bool

    def to_dict(self) -> dict:
        return {"index": self.index, "seed": self.seed, "length_excess": self.length_excess,
                "route_excess": self.route_excess, "accepted": self.accepted}


@dataclass(frozen=True)
class SearchSpec:
    config: Configuration
    params: BuildParams
    length_threshold: float
    excess_threshold: float
    max_attempts: int
    base_seed: int
    pair_plan: Optional[PairSamplePlan] = None

    def __post_init__(self):
        if not (self.length_threshold >= 0 and self.excess_threshold >= 0):
            raise ValueError("thresholds must be >= 0")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")

    def plan(self) -> PairSamplePlan:
        # fixed across attempts so they are compared on the same pairs
        if self.pair_plan is not None:
            return self.pair_plan
        return PairSamplePlan.random_pairs(self.config.n, self.base_seed)


@dataclass(frozen=True, eq=False)
class SearchResult:
    accepted: bool
    attempts_used: int
    network: Optional[PlanarNetwork]
    log: tuple[AttemptRecord, ...]
    length_threshold: float
    excess_threshold: float

    @property
    def best(self) -> AttemptRecord:
        """Attempt with the smallest worse-of-the-two threshold ratio."""
        return min(self.log, key=lambda r: _score(r, self.length_threshold, self.excess_threshold))

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "attempts_used": self.attempts_used,
            "length_threshold": self.length_threshold,
            "excess_threshold": self.excess_threshold,
            "best_index": self.best.index,
            "attempts": [r.to_dict() for r in self.log],
        }


def _ratio(x: float, t: float) -> float:
    if t == math.inf:
        return 0.0
    if t == 0:
        return 0.0 if x <= 0 else math.inf
    return x / t


def _score(r: AttemptRecord, lt: float, et: float) -> float:
    return max(_ratio(r.length_excess, lt), _ratio(r.route_excess, et))


def measure(config: Configuration, params: BuildParams, plan: PairSamplePlan
            ) -> tuple[PlanarNetwork, float, float]:
    """Build once; return the network, its added length and its route excess."""
    net, acc = build_network(config, params)
    rep = excess_stat(net, config, plan)
    return net, acc.excess_over_tree, rep.excess


def pilot_measurements(config: Configuration, params: BuildParams, pilot_attempts: int, seed: int,
                       plan: Optional[PairSamplePlan] = None) -> tuple[np.ndarray, np.ndarray]:
    if pilot_attempts < 2:
        raise ValueError("pilot_attempts must be >= 2")
    plan = PairSamplePlan.random_pairs(config.n, seed) if plan is None else plan
    le, re = [], []
    for k in range(pilot_attempts):
        _, a, b = measure(config, replace(params, seed=seed + k), plan)
        le.append(a)
        re.append(b)
    return np.array(le), np.array(re)


def calibrate_thresholds(config: Configuration, params: BuildParams, pilot_attempts: int, seed: int,
                         plan: Optional[PairSamplePlan] = None) -> tuple[float, float]:
    """Three times the pilot means of the added length and the route excess."""
    le, re = pilot_measurements(config, params, pilot_attempts, seed, plan)
    return 3.0 * float(le.mean()), 3.0 * float(re.mean())


def rejection_search(spec: SearchSpec) -> SearchResult:
    """Attempt ``k`` (0-based) uses line seed ``base_seed + k``; first success wins."""
    plan = spec.plan()
    log = []
    for k in range(spec.max_attempts):
        seed = spec.base_seed + k
        net, le, re = measure(spec.config, replace(spec.params, seed=seed), plan)
        ok = le <= spec.length_threshold and re <= spec.excess_threshold
        log.append(AttemptRecord(k, seed, le, re, ok))
        if ok:
            return SearchResult(True, k + 1, net, tuple(log), spec.length_threshold,
                                spec.excess_threshold)
    result = SearchResult(False, spec.max_attempts, None, tuple(log), spec.length_threshold,
                          spec.excess_threshold)
    raise ExhaustedAttempts(f"no attempt met both thresholds in {spec.max_attempts} tries "
                            f"(best attempt {result.best.index})", result)
