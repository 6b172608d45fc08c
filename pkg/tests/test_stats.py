from __future__ import annotations

import math

import numpy as np
import pytest

from linenet.errors import CoincidentPoints, Disconnected, NonIntegralRatio, SizeMismatch
from linenet.geom import Point, Segment
from linenet.netbuild import BuildParams, Configuration, Layer, PlanarNetwork, build_network, planarize
from linenet.stats import (
    PairMode,
    PairSamplePlan,
    box_count_equidist,
    equidist_cost,
    excess_stat,
    pair_stats,
    ratio_stat,
    route_length,
    truncated_assignment_cost,
    unrank_pairs,
)

from oracles import brute_assignment, floyd_warshall


def chain(*pts):
    return planarize([(Segment(Point(*a), Point(*b)), Layer.Tree) for a, b in zip(pts, pts[1:])])


L_NET = chain((0, 0), (3, 0), (3, 4))
L_CFG = Configuration.from_points([(0, 0), (3, 0), (3, 4)], side=4)


def test_route_length_examples():
    assert route_length(chain((0, 0), (5, 0)), Point(0, 0), Point(5, 0)) == pytest.approx(5.0)
    assert route_length(L_NET, Point(0, 0), Point(3, 4)) == pytest.approx(7.0)
    assert route_length(L_NET, Point(3, 4), Point(0, 0)) == pytest.approx(7.0)


def test_route_length_disconnected():
    net = planarize([(Segment(Point(0, 0), Point(1, 0)), Layer.Tree),
                     (Segment(Point(0, 2), Point(1, 2)), Layer.Tree)])
    with pytest.raises(Disconnected):
        route_length(net, Point(0, 0), Point(1, 2))


def test_route_length_against_floyd_warshall():
    rng = np.random.default_rng(17)
    for _ in range(10):
        segs = []
        for _ in range(12):
            p, q = rng.random(2) * 5, rng.random(2) * 5
            segs.append((Segment(Point(*p), Point(*q)), Layer.PoissonLine))
        net = planarize(segs)
        if net.n_nodes > 50:
            continue
        d = floyd_warshall(net.n_nodes, [(int(a), int(b), float(w)) for a, b, w in
                                         zip(net.ei, net.ej, net.length)])
        for a in range(net.n_nodes):
            for b in range(a + 1, net.n_nodes):
                pa, pb = tuple(net.nodes[a]), tuple(net.nodes[b])
                if math.isinf(d[a, b]):
                    with pytest.raises(Disconnected):
                        route_length(net, pa, pb)
                else:
                    assert route_length(net, pa, pb) == pytest.approx(d[a, b], abs=1e-9)


def test_excess_and_ratio_examples():
    rep = excess_stat(L_NET, L_CFG, PairSamplePlan.all_pairs())
    assert rep.excess == pytest.approx(2 / 3)
    assert rep.pairs_used == 3 and rep.excess_std_error is None
    _, table = pair_stats(L_NET, L_CFG, PairSamplePlan.all_pairs())
    k = [n for n, (a, b) in enumerate(zip(table.i, table.j)) if (a, b) == (0, 2)][0]
    assert table.ratio[k] == pytest.approx(0.4)
    cfg = Configuration.from_points([(0, 0), (1, 0), (2.5, 0), (4, 0)], side=4)
    net = chain((0, 0), (1, 0), (2.5, 0), (4, 0))
    rep = ratio_stat(net, cfg, PairSamplePlan.all_pairs())
    assert rep.excess == pytest.approx(0.0, abs=1e-12) and rep.ratio == pytest.approx(0.0, abs=1e-12)


def test_ratio_all_coincident():
    net = chain((0, 0), (1, 0))
    cfg = Configuration(np.array([[0.0, 0.0], [0.0, 0.0]]), 1.0)
    with pytest.raises(CoincidentPoints):
        ratio_stat(net, cfg, PairSamplePlan.all_pairs())


def test_unrank_pairs_matches_triu():
    for n in (2, 3, 7, 50, 2001):
        i, j = np.triu_indices(n, k=1)
        gi, gj = unrank_pairs(np.arange(len(i)), n)
        assert np.array_equal(gi, i) and np.array_equal(gj, j)


def test_plan_guards():
    with pytest.raises(ValueError):
        PairSamplePlan.all_pairs().pairs(2001)
    with pytest.raises(ValueError):
        PairSamplePlan(PairMode.RandomPairs, 0, 1)
    p = PairSamplePlan.random_pairs(10, 3)
    i, j = p.pairs(10)
    assert len(i) == 45 and len(set(zip(i.tolist(), j.tolist()))) == 45
    i, j = PairSamplePlan.random_pairs(3000, 3).pairs(3000)
    assert len(i) == 2000 and np.all(i < j)


def test_random_pairs_agree_with_all_pairs():
    cfg = Configuration.uniform(200, 21)
    net, _ = build_network(cfg, BuildParams.default(200, 0.5, 2))
    full = ratio_stat(net, cfg, PairSamplePlan.all_pairs())
    for seed in range(3):
        samp = ratio_stat(net, cfg, PairSamplePlan.random_pairs(200, seed, count=500))
        assert abs(samp.excess - full.excess) < 3 * samp.excess_std_error
        assert abs(samp.ratio - full.ratio) < 3 * samp.ratio_std_error


def test_grid_vertex_policy_is_an_upper_bound():
    cfg = Configuration.uniform(150, 4)
    p = BuildParams.default(150, 0.5, 4)
    net, _ = build_network(cfg, p)
    plan = PairSamplePlan.random_pairs(150, 1, count=200)
    a, ta = pair_stats(net, cfg, plan)
    b, tb = pair_stats(net, cfg, plan, policy="grid-vertex", s=p.s)
    assert np.all(tb.route >= ta.route - 1e-9)
    assert b.excess >= a.excess


def test_rigid_motion_invariance():
    cfg = Configuration.uniform(120, 8)
    net, _ = build_network(cfg, BuildParams.default(120, 0.5, 8))
    base = ratio_stat(net, cfg, PairSamplePlan.all_pairs())
    c, s = math.cos(0.7), math.sin(0.7)
    rot = np.array([[c, -s], [s, c]])
    shift = np.array([40.0, 40.0])
    nodes = net.nodes @ rot.T + shift
    moved = PlanarNetwork(nodes, net.ei, net.ej, net.length, net.layer, tol=net.tol)
    xy = cfg.xy @ rot.T + shift
    cfg2 = Configuration(xy, 100.0)
    rep = ratio_stat(moved, cfg2, PairSamplePlan.all_pairs())
    assert rep.excess == pytest.approx(base.excess, abs=1e-9)
    assert rep.ratio == pytest.approx(base.ratio, abs=1e-9)


def test_equidist_examples():
    rng = np.random.default_rng(2)
    x = rng.random((20, 2))
    for L in (0.01, 0.5, 3.0):
        assert truncated_assignment_cost(x, x[::-1], L) == pytest.approx(0.0, abs=1e-15)
    assert truncated_assignment_cost([[0, 0]], [[0, 2]], 2.0) == 1.0
    assert truncated_assignment_cost([[0, 0]], [[0, 5]], 2.0) == 1.0
    assert truncated_assignment_cost([[0, 0]], [[0, 1]], 2.0) == pytest.approx(0.5)
    with pytest.raises(SizeMismatch):
        truncated_assignment_cost(x, x[:3], 1.0)
    cfg = Configuration.uniform(30, 1)
    with pytest.raises(SizeMismatch):
        equidist_cost(cfg, 1.0, 29, 3)


def test_equidist_matches_permutation_brute_force():
    rng = np.random.default_rng(6)
    for _ in range(5):
        x, y = rng.random((6, 2)), rng.random((6, 2))
        for L in (0.2, 0.7):
            assert truncated_assignment_cost(x, y, L) == pytest.approx(brute_assignment(x, y, L), abs=1e-12)


def test_equidist_monotone_in_L_and_in_unit_interval():
    cfg = Configuration.uniform(200, 3)
    costs = [equidist_cost(cfg, L, 200, 5).cost for L in (0.1, 0.5, 1.0, 2.0, 5.0, 20.0)]
    assert all(0 <= c <= 1 for c in costs)
    assert all(b <= a + 1e-12 for a, b in zip(costs, costs[1:]))
    rep = equidist_cost(cfg, 2.0, 200, 5, reference="disk")
    assert rep.reference == "UniformDisk" and 0 <= rep.cost <= 1


@pytest.mark.xfail(strict=True, reason="measured cost is about 0.29 at L = 3 for n = 400; see project notes")
def test_equidist_uniform_400_L3_small():
    cfg = Configuration.uniform(400, 0)
    assert equidist_cost(cfg, 3.0, 400, 1).cost < 0.1


def test_box_count_examples():
    xy = np.array([[i + 0.5, j + 0.5] for i in range(4) for j in range(4)])
    assert box_count_equidist(Configuration(xy, 4.0), 1.0) == 0.0
    # 16 points, 4 boxes of side 2, all in one box: (12 + 3*4)/16
    one = Configuration(np.full((16, 2), 0.5), 4.0)
    k = 4
    assert box_count_equidist(one, 2.0) == pytest.approx(2 * (16 - 16 / k) / 16)
    with pytest.raises(NonIntegralRatio):
        box_count_equidist(one, 3.0)


def test_box_count_uniform_small():
    n = 10_000
    lam = n ** 0.25
    vals = [box_count_equidist(Configuration.uniform(n, s), lam) for s in range(20)]
    # Binomial(n, 1/k^2) oracle with k^2 = sqrt(n) boxes
    rng = np.random.default_rng(0)
    k2 = int(round(math.sqrt(n)))
    sim = [np.abs(rng.multinomial(n, [1 / k2] * k2) - n / k2).sum() / n for _ in range(200)]
    assert max(vals) < 0.2
    assert abs(np.mean(vals) - np.mean(sim)) < 3 * math.hypot(np.std(vals) / math.sqrt(20), np.std(sim) / math.sqrt(200))


def test_pair_csv(tmp_path):
    _, table = pair_stats(L_NET, L_CFG, PairSamplePlan.all_pairs())
    path = tmp_path / "pairs.csv"
    table.write_csv(path)
    raw = path.read_bytes()
    assert raw.startswith(b"i,j,euclid,route,excess,ratio\r\n")
    assert raw.count(b"\r\n") == 4
