"""Pure Python / numpy implementations of the hot kernels.

Same signatures and return conventions as the compiled ``_ckernels`` module.
"""
from __future__ import annotations

import heapq

import numpy as np

# Status codes shared with the compiled kernels.
OK = 0
COLLINEAR = 1


def _clip_one(poly, a, b, d, tol):
    out = []
    n = len(poly)
    for k in range(n):
        px, py = poly[k]
        qx, qy = poly[(k + 1) % n]
        fp = a * px + b * py - d
        fq = a * qx + b * qy - d
        if fp <= tol:
            out.append((px, py))
        if (fp < -tol and fq > tol) or (fp > tol and fq < -tol):
            t = fp / (fp - fq)
            out.append((px + t * (qx - px), py + t * (qy - py)))
    return np.array(out, dtype=float).reshape(-1, 2)


def clip_convex(poly, nx, ny, d, tol):
    """Intersect a convex polygon with half-planes ``nx*x + ny*y <= d``.

    Vectorized variant: repeatedly discards half-planes that already
    contain the polygon and cuts with the most violated one.
    """
    poly = np.asarray(poly, dtype=float)
    nx = np.asarray(nx, dtype=float)
    ny = np.asarray(ny, dtype=float)
    d = np.asarray(d, dtype=float)
    while len(nx) and len(poly):
        viol = (np.multiply.outer(nx, poly[:, 0]) + np.multiply.outer(ny, poly[:, 1])).max(axis=1) - d
        keep = viol > tol
        if not keep.any():
            break
        nx, ny, d, viol = nx[keep], ny[keep], d[keep], viol[keep]
        j = int(np.argmax(viol))
        poly = _clip_one(poly, nx[j], ny[j], d[j], tol)
        mask = np.ones(len(nx), dtype=bool)
        mask[j] = False
        nx, ny, d = nx[mask], ny[mask], d[mask]
    return poly


def _candidate_pairs(seg, tol):
    xmin = np.minimum(seg[:, 0], seg[:, 2]) - tol
    xmax = np.maximum(seg[:, 0], seg[:, 2]) + tol
    ymin = np.minimum(seg[:, 1], seg[:, 3]) - tol
    ymax = np.maximum(seg[:, 1], seg[:, 3]) + tol
    order = np.argsort(xmin, kind="stable")
    sxmin = xmin[order]
    ii, jj = [], []
    for pos in range(len(order)):
        i = order[pos]
        stop = np.searchsorted(sxmin, xmax[i], side="right")
        if stop <= pos + 1:
            continue
        cand = order[pos + 1:stop]
        ok = (ymin[cand] <= ymax[i]) & (ymax[cand] >= ymin[i])
        cand = cand[ok]
        if len(cand):
            ii.append(np.full(len(cand), i))
            jj.append(cand)
    if not ii:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    ii = np.concatenate(ii)
    jj = np.concatenate(jj)
    lo = np.minimum(ii, jj)
    hi = np.maximum(ii, jj)
    return lo.astype(np.int64), hi.astype(np.int64)


def segment_intersections(seg, tol):
    """All intersecting pairs among segments ``seg[k] = (x0, y0, x1, y1)``.

    Returns ``(status, i, j, t, u, x, y)`` where ``t``/``u`` are the
    parameters along segments ``i``/``j``. ``status == COLLINEAR`` flags a
    collinear overlap; ``i[0], j[0]`` then identify the offending pair.
    """
    seg = np.ascontiguousarray(seg, dtype=float)
    ci, cj = _candidate_pairs(seg, tol)
    empty = np.empty(0)
    if len(ci) == 0:
        e = np.empty(0, dtype=np.int64)
        return OK, e, e.copy(), empty, empty.copy(), empty.copy(), empty.copy()
    P0 = seg[ci, :2]
    R = seg[ci, 2:] - P0
    Q0 = seg[cj, :2]
    S = seg[cj, 2:] - Q0
    W = Q0 - P0
    lr = np.hypot(R[:, 0], R[:, 1])
    ls = np.hypot(S[:, 0], S[:, 1])
    denom = R[:, 0] * S[:, 1] - R[:, 1] * S[:, 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (W[:, 0] * S[:, 1] - W[:, 1] * S[:, 0]) / denom
        u = (W[:, 0] * R[:, 1] - W[:, 1] * R[:, 0]) / denom
        tt = tol / lr
        tu = tol / ls
    nonpar = np.abs(denom) > 1e-12 * lr * ls
    hit = nonpar & (t >= -tt) & (t <= 1 + tt) & (u >= -tu) & (u <= 1 + tu)

    out_i, out_j, out_t, out_u = [ci[hit]], [cj[hit]], [t[hit]], [u[hit]]

    par = ~nonpar
    if par.any():
        pidx = np.nonzero(par)[0]
        off = np.abs(W[pidx, 0] * R[pidx, 1] - W[pidx, 1] * R[pidx, 0]) / lr[pidx]
        coll = pidx[off <= tol]
        for k in coll:
            ux, uy = R[k] / lr[k]
            b0 = W[k, 0] * ux + W[k, 1] * uy
            b1 = b0 + S[k, 0] * ux + S[k, 1] * uy
            lo, hi = max(0.0, min(b0, b1)), min(lr[k], max(b0, b1))
            if hi < lo - tol:
                continue
            if hi - lo > tol:
                return (COLLINEAR, np.array([ci[k]]), np.array([cj[k]]), empty, empty, empty, empty)
            m = 0.5 * (lo + hi)
            tk = m / lr[k]
            uk = (m - b0) / (b1 - b0)
            out_i.append(np.array([ci[k]]))
            out_j.append(np.array([cj[k]]))
            out_t.append(np.array([tk]))
            out_u.append(np.array([uk]))

    i = np.concatenate(out_i).astype(np.int64)
    j = np.concatenate(out_j).astype(np.int64)
    t = np.clip(np.concatenate(out_t), 0.0, 1.0)
    u = np.clip(np.concatenate(out_u), 0.0, 1.0)
    lr_i = np.hypot(seg[i, 2] - seg[i, 0], seg[i, 3] - seg[i, 1])
    ls_j = np.hypot(seg[j, 2] - seg[j, 0], seg[j, 3] - seg[j, 1])
    t = np.where(t * lr_i <= tol, 0.0, np.where((1 - t) * lr_i <= tol, 1.0, t))
    u = np.where(u * ls_j <= tol, 0.0, np.where((1 - u) * ls_j <= tol, 1.0, u))
    x = seg[i, 0] + t * (seg[i, 2] - seg[i, 0])
    y = seg[i, 1] + t * (seg[i, 3] - seg[i, 1])
    # snap to exact endpoints so shared vertices coincide bit-for-bit
    for tv, sv in ((t, seg[i]), (u, seg[j])):
        at0 = tv == 0.0
        at1 = tv == 1.0
        x = np.where(at0, sv[:, 0], np.where(at1, sv[:, 2], x))
        y = np.where(at0, sv[:, 1], np.where(at1, sv[:, 3], y))
    order = np.lexsort((j, i))
    return OK, i[order], j[order], t[order], u[order], x[order], y[order]


def dijkstra(indptr, indices, weights, source, targets=None):
    """Single-source shortest path distances on a CSR graph.

    When ``targets`` is given the search stops once all of them are settled;
    unsettled nodes keep distance ``inf``.
    """
    n = len(indptr) - 1
    dist = np.full(n, np.inf)
    remaining = None
    if targets is not None:
        remaining = set(int(v) for v in targets)
    dist[source] = 0.0
    heap = [(0.0, int(source))]
    indptr = np.asarray(indptr).tolist()
    indices = np.asarray(indices).tolist()
    weights = np.asarray(weights).tolist()
    dl = dist.tolist()
    settled = [False] * n
    while heap:
        dv, v = heapq.heappop(heap)
        if settled[v]:
            continue
        settled[v] = True
        if remaining is not None:
            remaining.discard(v)
            if not remaining:
                break
        for k in range(indptr[v], indptr[v + 1]):
            w = indices[k]
            nd = dv + weights[k]
            if nd < dl[w]:
                dl[w] = nd
                heapq.heappush(heap, (nd, w))
    dist = np.array(dl)
    if remaining is not None:
        dist[~np.array(settled)] = np.inf
    return dist
