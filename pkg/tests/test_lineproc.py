from __future__ import annotations

import math

import numpy as np
import pytest

from linenet.errors import DegenerateSegment, NegativeLength, NegativeRadius, NonPositiveRadius
from linenet.geom import Line, Point, Rect, clip_line_to_rect, separates
from linenet.lineproc import (
    LineProcessParams,
    cross_intersections,
    expected_length_in_rect,
    hitting_measure_disk,
    hitting_measure_rect,
    hitting_measure_segment,
    intersection_angle_samples,
    make_rng,
    read_lines_csv,
    sample_disk,
    sample_rect,
    sample_tube_nonseparating,
    tube_expected_count,
    write_lines_csv,
)
from linenet.lineproc import LineSample


def test_hitting_measures():
    # integral of (1/2) dp dalpha over |p| < 1, alpha in [0, pi)
    assert hitting_measure_disk(1, 1) == pytest.approx(0.5 * 2 * math.pi)
    assert hitting_measure_disk(0, 1) == 0
    assert hitting_measure_disk(2, 0.5) == pytest.approx(math.pi)
    assert hitting_measure_segment(1, 1) == 1
    assert hitting_measure_segment(5, 1) == 5
    assert hitting_measure_segment(3, 2) == 6
    with pytest.raises(NegativeRadius):
        hitting_measure_disk(-1, 1)
    with pytest.raises(NegativeLength):
        hitting_measure_segment(-1, 1)


def test_sample_disk_counts_and_determinism():
    params = LineProcessParams(1.0, 42)
    counts = np.array([len(sample_disk(Point(0, 0), 2.0, params, replicate=i)) for i in range(10_000)])
    assert abs(counts.mean() - 2 * math.pi) < 3 * math.sqrt(2 * math.pi / 10_000)
    a = sample_disk(Point(1, 2), 3.0, params, replicate=3)
    b = sample_disk(Point(1, 2), 3.0, params, replicate=3)
    assert a.same_as(b)
    assert len(sample_disk(Point(0, 0), 5.0, LineProcessParams(0.0, 1))) == 0
    with pytest.raises(NonPositiveRadius):
        sample_disk(Point(0, 0), 0.0, params)


def test_sample_disk_lines_hit_disk():
    s = sample_disk(Point(3, -2), 4.0, LineProcessParams(2.0, 1))
    c = Point(3, -2)
    for l in s.lines:
        assert abs(l.signed_distance(c)) <= 4.0 + 1e-12
        assert 0 <= l.alpha < math.pi


def test_sample_is_immutable():
    s = sample_disk(Point(0, 0), 3.0, LineProcessParams(1.0, 1))
    with pytest.raises(ValueError):
        s.p[0] = 1.0


def test_tube_mean_count_matches_rectangle_measure():
    m, w = 10.0, 5.0
    v1, v2 = Point(-5, 0), Point(5, 0)
    # rectangle (m + 2w) x 2w is hit lam * (m + 4w) times; lam * m of those separate
    rect = Rect(-5 - w, -w, 5 + w, w)
    assert tube_expected_count(m, w, 1.0) == pytest.approx(hitting_measure_rect(rect, 1.0) - m)
    params = LineProcessParams(1.0, 3)
    direct = np.array([len(sample_tube_nonseparating(v1, v2, w, params, replicate=i)) for i in range(4000)])
    assert abs(direct.mean() - 20.0) < 3 * math.sqrt(20.0 / 4000)
    # independent route: disk sample, keep lines meeting the tube that do not separate
    R = math.hypot(5 + w, w)
    kept = []
    for i in range(4000):
        s = sample_disk(Point(0, 0), R, LineProcessParams(1.0, 99), replicate=i)
        k = 0
        for l in s.lines:
            if clip_line_to_rect(l, rect) is not None and not separates(l, v1, v2):
                k += 1
        kept.append(k)
    kept = np.array(kept)
    se = math.sqrt(direct.var() / 4000 + kept.var() / 4000)
    assert abs(direct.mean() - kept.mean()) < 3 * se


def test_tube_lines_never_separate_and_meet_tube():
    v1, v2 = Point(1, 2), Point(4, 6)
    s = sample_tube_nonseparating(v1, v2, 2.0, LineProcessParams(3.0, 8))
    assert len(s) > 0
    for l in s.lines:
        assert not separates(l, v1, v2)
    # levels lie within the tube
    assert np.all(s.level >= 0) and np.all(s.level <= 2.0)


def test_tube_collapse_and_errors():
    v1, v2 = Point(0, 0), Point(10, 0)
    n = [len(sample_tube_nonseparating(v1, v2, 1e-6, LineProcessParams(1.0, 1), replicate=i)) for i in range(200)]
    assert sum(n) == 0
    with pytest.raises(DegenerateSegment):
        sample_tube_nonseparating(v1, v1, 1.0, LineProcessParams(1.0, 1))


def test_intersection_angles_examples():
    params = LineProcessParams(1.0, 0)
    s1 = LineSample(np.array([0.0]), np.array([0.0]), Rect(-1, -1, 1, 1), params)
    s2 = LineSample(np.array([0.0]), np.array([math.pi / 2]), Rect(-1, -1, 1, 1), params)
    out = intersection_angle_samples(s1, s2)
    assert len(out) == 1
    assert out[0][1] == pytest.approx(math.pi / 2)
    s3 = LineSample(np.array([1.0]), np.array([0.0]), Rect(-1, -1, 1, 1), params)
    assert intersection_angle_samples(s1, s3) == []


def test_rect_sampler_hits_rect_and_length():
    rect = Rect(0, 0, 20, 10)
    params = LineProcessParams(0.5, 4)
    lengths = []
    for i in range(3000):
        s = sample_rect(rect, params, replicate=i)
        tot = 0.0
        for l in s.lines:
            seg = clip_line_to_rect(l, rect)
            assert seg is not None
            tot += seg.length()
        lengths.append(tot)
    lengths = np.array(lengths)
    want = expected_length_in_rect(rect, 0.5)
    assert abs(lengths.mean() - want) < 3 * lengths.std() / math.sqrt(len(lengths))


def test_cross_intersections_shapes():
    x, y, xi = cross_intersections([0.0, 1.0], [0.0, 0.5], [0.0], [1.0])
    assert len(x) == 2 and np.all((xi >= 0) & (xi < math.pi))


def test_make_rng_streams_differ():
    a = make_rng(1, 0).random(4)
    b = make_rng(1, 1).random(4)
    assert not np.array_equal(a, b)
    assert np.array_equal(a, make_rng(1, 0).random(4))


def test_csv_roundtrip(tmp_path):
    s = sample_disk(Point(0, 0), 5.0, LineProcessParams(1.0, 5))
    path = tmp_path / "lines.csv"
    write_lines_csv(s, path)
    text = path.read_bytes()
    assert text.startswith(b"p,alpha\r\n")
    back = read_lines_csv(path)
    assert back == [Line(float(p), float(a)) for p, a in zip(s.p, s.alpha)]
