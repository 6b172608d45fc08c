"""Independent brute-force reference implementations used only by the tests."""
from __future__ import annotations

import itertools
import math

import numpy as np


def side(p, a, x, y):
    return x * math.cos(a) + y * math.sin(a) - p


def arrangement_cell(lines, v1, v2, rect, tol=1e-9):
    """Cell of the arrangement of the non-separating lines and the window containing v1.

    Vertex enumeration: intersect every pair of carrier lines (process lines
    and window edges), keep the intersections lying in the window and never
    strictly on the far side of a retained line from v1, then order them
    around their centroid.
    """
    kept = []
    for p, a in lines:
        s1 = side(p, a, *v1)
        s2 = side(p, a, *v2)
        if s1 * s2 < 0 and abs(s1) > 1e-12 and abs(s2) > 1e-12:
            continue
        kept.append((p, a))
    xmin, ymin, xmax, ymax = rect
    carriers = list(kept) + [(-xmin, math.pi), (xmax, 0.0), (-ymin, 1.5 * math.pi), (ymax, 0.5 * math.pi)]
    # window edges as (p, a) with possibly a >= pi; only used through cos/sin
    pts = []
    for (p1, a1), (p2, a2) in itertools.combinations(carriers, 2):
        det = math.cos(a1) * math.sin(a2) - math.sin(a1) * math.cos(a2)
        if abs(det) < 1e-12:
            continue
        x = (p1 * math.sin(a2) - p2 * math.sin(a1)) / det
        y = (math.cos(a1) * p2 - math.cos(a2) * p1) / det
        if not (xmin - tol <= x <= xmax + tol and ymin - tol <= y <= ymax + tol):
            continue
        ok = True
        for p, a in kept:
            ref = side(p, a, *v1)
            if ref == 0:
                ref = side(p, a, *v2)
            val = side(p, a, x, y)
            if ref * val < 0 and abs(val) > tol:
                ok = False
                break
        if ok:
            pts.append((x, y))
    if not pts:
        return np.empty((0, 2))
    uniq = []
    for q in pts:
        if all(max(abs(q[0] - u[0]), abs(q[1] - u[1])) > tol for u in uniq):
            uniq.append(q)
    arr = np.array(uniq)
    c = arr.mean(axis=0)
    ang = np.arctan2(arr[:, 1] - c[1], arr[:, 0] - c[0])
    arr = arr[np.argsort(ang)]
    # drop vertices in the middle of straight edges
    out = []
    n = len(arr)
    for k in range(n):
        a, b, d = arr[k - 1], arr[k], arr[(k + 1) % n]
        cross = (b[0] - a[0]) * (d[1] - b[1]) - (b[1] - a[1]) * (d[0] - b[0])
        if abs(cross) > 1e-9 * max(1.0, np.abs(arr).max()):
            out.append(b)
    return np.array(out).reshape(-1, 2)


def same_vertex_set(a, b, tol=1e-9):
    a = np.asarray(a).reshape(-1, 2)
    b = np.asarray(b).reshape(-1, 2)
    if len(a) != len(b):
        return False
    for q in a:
        if np.min(np.max(np.abs(b - q), axis=1)) > tol:
            return False
    return True


def floyd_warshall(n, edges):
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for i, j, w in edges:
        if w < d[i, j]:
            d[i, j] = d[j, i] = w
    for k in range(n):
        d = np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :])
    return d


def prim_length(xy):
    """O(n^2) Prim on the complete Euclidean graph."""
    n = len(xy)
    inside = np.zeros(n, dtype=bool)
    best = np.full(n, np.inf)
    best[0] = 0.0
    total = 0.0
    for _ in range(n):
        k = int(np.argmin(np.where(inside, np.inf, best)))
        inside[k] = True
        total += best[k]
        d = np.hypot(*(xy - xy[k]).T)
        best = np.where(~inside & (d < best), d, best)
    return total


def exhaustive_mst_length(xy):
    """Minimum over every (n-1)-edge subset that spans the points."""
    n = len(xy)
    edges = [(i, j, math.dist(xy[i], xy[j])) for i in range(n) for j in range(i + 1, n)]
    best = math.inf
    for sub in itertools.combinations(edges, n - 1):
        parent = list(range(n))

        def root(a):
            while parent[a] != a:
                a = parent[a]
            return a

        ok = True
        for i, j, _ in sub:
            ri, rj = root(i), root(j)
            if ri == rj:
                ok = False
                break
            parent[ri] = rj
        if ok:
            best = min(best, sum(w for _, _, w in sub))
    return best


def brute_assignment(x, y, L):
    n = len(x)
    best = math.inf
    for perm in itertools.permutations(range(n)):
        c = sum(min(1.0, math.dist(x[i], y[perm[i]]) / L) for i in range(n)) / n
        best = min(best, c)
    return best


def parametric_segment_hit(s1, s2):
    """Intersection of two non-parallel segments by solving for both parameters."""
    (ax, ay), (bx, by) = s1
    (cx, cy), (dx, dy) = s2
    m = np.array([[bx - ax, -(dx - cx)], [by - ay, -(dy - cy)]])
    if abs(np.linalg.det(m)) < 1e-12:
        return "parallel"
    t, u = np.linalg.solve(m, [cx - ax, cy - ay])
    if -1e-12 <= t <= 1 + 1e-12 and -1e-12 <= u <= 1 + 1e-12:
        return (ax + t * (bx - ax), ay + t * (by - ay))
    return None


def clip_by_halfplanes(p, a, rect):
    """Chord of a line inside a rectangle by clipping a long segment against four half-planes."""
    c, s = math.cos(a), math.sin(a)
    big = 10 * (abs(p) + max(abs(v) for v in rect) + 1)
    pts = [(p * c - big * s, p * s + big * c), (p * c + big * s, p * s - big * c)]
    xmin, ymin, xmax, ymax = rect
    for nx, ny, d in ((-1, 0, -xmin), (1, 0, xmax), (0, -1, -ymin), (0, 1, ymax)):
        (x0, y0), (x1, y1) = pts
        f0 = nx * x0 + ny * y0 - d
        f1 = nx * x1 + ny * y1 - d
        if f0 > 0 and f1 > 0:
            return None
        if f0 > 0:
            t = f0 / (f0 - f1)
            pts[0] = (x0 + t * (x1 - x0), y0 + t * (y1 - y0))
        elif f1 > 0:
            t = f0 / (f0 - f1)
            pts[1] = (x0 + t * (x1 - x0), y0 + t * (y1 - y0))
    return pts
