# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Mirrors ``_pykernels`` exactly in signature."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, INFINITY
from libc.stdlib cimport malloc, free

cnp.import_array()

OK = 0
COLLINEAR = 1


def clip_convex(poly, nx, ny, d, double tol):
    """Sequential Sutherland-Hodgman clipping by half-planes ``n.x <= d``."""
    cdef double[:, ::1] P = np.ascontiguousarray(poly, dtype=np.float64)
    cdef double[::1] A = np.ascontiguousarray(nx, dtype=np.float64)
    cdef double[::1] B = np.ascontiguousarray(ny, dtype=np.float64)
    cdef double[::1] D = np.ascontiguousarray(d, dtype=np.float64)
    cdef Py_ssize_t nh = A.shape[0]
    cdef Py_ssize_t cap = P.shape[0] + nh + 4
    cdef cnp.ndarray buf1 = np.empty((cap, 2))
    cdef cnp.ndarray buf2 = np.empty((cap, 2))
    cdef double[:, ::1] cur = buf1
    cdef double[:, ::1] nxt = buf2
    cdef double[:, ::1] tmp
    cdef Py_ssize_t n = P.shape[0], m, k, h
    cdef double a, b, dd, fp, fq, t, px, py, qx, qy, worst, f
    for k in range(n):
        cur[k, 0] = P[k, 0]
        cur[k, 1] = P[k, 1]
    with nogil:
        for h in range(nh):
            if n == 0:
                break
            a = A[h]
            b = B[h]
            dd = D[h]
            worst = -INFINITY
            for k in range(n):
                f = a * cur[k, 0] + b * cur[k, 1] - dd
                if f > worst:
                    worst = f
            if worst <= tol:
                continue
            m = 0
            for k in range(n):
                px = cur[k, 0]
                py = cur[k, 1]
                qx = cur[(k + 1) % n, 0]
                qy = cur[(k + 1) % n, 1]
                fp = a * px + b * py - dd
                fq = a * qx + b * qy - dd
                if fp <= tol:
                    nxt[m, 0] = px
                    nxt[m, 1] = py
                    m += 1
                if (fp < -tol and fq > tol) or (fp > tol and fq < -tol):
                    t = fp / (fp - fq)
                    nxt[m, 0] = px + t * (qx - px)
                    nxt[m, 1] = py + t * (qy - py)
                    m += 1
            tmp = cur
            cur = nxt
            nxt = tmp
            n = m
    return np.array(cur[:n], copy=True)


def segment_intersections(seg, double tol):
    """All intersecting pairs; same contract as ``_pykernels.segment_intersections``."""
    arr = np.ascontiguousarray(seg, dtype=np.float64).reshape(-1, 4)
    cdef double[:, ::1] S = arr
    cdef Py_ssize_t N = S.shape[0]
    xmin_a = np.minimum(arr[:, 0], arr[:, 2]) - tol
    cdef double[::1] xmin = xmin_a
    cdef double[::1] xmax = np.maximum(arr[:, 0], arr[:, 2]) + tol
    cdef double[::1] ymin = np.minimum(arr[:, 1], arr[:, 3]) - tol
    cdef double[::1] ymax = np.maximum(arr[:, 1], arr[:, 3]) + tol
    cdef long[::1] order = np.argsort(xmin_a, kind="stable").astype(np.int_)
    cdef Py_ssize_t pos, q, i, j, ii, jj
    cdef double px, py, rx, ry, qx, qy, sx, sy, wx, wy, lr, ls, den, t, u, tt, tu
    cdef double ux, uy, b0, b1, lo, hi, mm, x, y
    cdef int status = 0
    cdef bint found
    cdef Py_ssize_t cap = 1024, cnt = 0
    bi = np.empty(cap, dtype=np.int64)
    bf = np.empty((4, cap), dtype=np.float64)
    cdef cnp.int64_t[::1] vi = bi
    cdef double[:, ::1] vf = bf
    bj = np.empty(cap, dtype=np.int64)
    cdef cnp.int64_t[::1] vj = bj
    for pos in range(N):
        i = order[pos]
        for q in range(pos + 1, N):
            j = order[q]
            if xmin[j] > xmax[i]:
                break
            if ymin[j] > ymax[i] or ymax[j] < ymin[i]:
                continue
            if i < j:
                ii = i
                jj = j
            else:
                ii = j
                jj = i
            px = S[ii, 0]
            py = S[ii, 1]
            rx = S[ii, 2] - px
            ry = S[ii, 3] - py
            qx = S[jj, 0]
            qy = S[jj, 1]
            sx = S[jj, 2] - qx
            sy = S[jj, 3] - qy
            wx = qx - px
            wy = qy - py
            lr = sqrt(rx * rx + ry * ry)
            ls = sqrt(sx * sx + sy * sy)
            den = rx * sy - ry * sx
            found = False
            if fabs(den) > 1e-12 * lr * ls:
                t = (wx * sy - wy * sx) / den
                u = (wx * ry - wy * rx) / den
                tt = tol / lr
                tu = tol / ls
                if t >= -tt and t <= 1 + tt and u >= -tu and u <= 1 + tu:
                    found = True
            else:
                if fabs(wx * ry - wy * rx) / lr <= tol:
                    ux = rx / lr
                    uy = ry / lr
                    b0 = wx * ux + wy * uy
                    b1 = b0 + sx * ux + sy * uy
                    lo = b0 if b0 < b1 else b1
                    hi = b1 if b0 < b1 else b0
                    if lo < 0.0:
                        lo = 0.0
                    if hi > lr:
                        hi = lr
                    if hi >= lo - tol:
                        if hi - lo > tol:
                            status = COLLINEAR
                            return (status, np.array([ii]), np.array([jj]),
                                    np.empty(0), np.empty(0), np.empty(0), np.empty(0))
                        mm = 0.5 * (lo + hi)
                        t = mm / lr
                        u = (mm - b0) / (b1 - b0)
                        found = True
            if not found:
                continue
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
            if u < 0.0:
                u = 0.0
            elif u > 1.0:
                u = 1.0
            if t * lr <= tol:
                t = 0.0
            elif (1.0 - t) * lr <= tol:
                t = 1.0
            if u * ls <= tol:
                u = 0.0
            elif (1.0 - u) * ls <= tol:
                u = 1.0
            x = px + t * rx
            y = py + t * ry
            if t == 0.0:
                x = S[ii, 0]
                y = S[ii, 1]
            elif t == 1.0:
                x = S[ii, 2]
                y = S[ii, 3]
            if u == 0.0:
                x = S[jj, 0]
                y = S[jj, 1]
            elif u == 1.0:
                x = S[jj, 2]
                y = S[jj, 3]
            if cnt == cap:
                # grow the output buffers geometrically
                cap *= 2
                bi = np.resize(bi, cap)
                bj = np.resize(bj, cap)
                bf = np.concatenate([bf, np.empty_like(bf)], axis=1)
                vi = bi
                vj = bj
                vf = bf
            vi[cnt] = ii
            vj[cnt] = jj
            vf[0, cnt] = t
            vf[1, cnt] = u
            vf[2, cnt] = x
            vf[3, cnt] = y
            cnt += 1
    ai = bi[:cnt].copy()
    aj = bj[:cnt].copy()
    at = bf[0, :cnt].copy()
    au = bf[1, :cnt].copy()
    ax = bf[2, :cnt].copy()
    ay = bf[3, :cnt].copy()
    o = np.lexsort((aj, ai))
    return OK, ai[o], aj[o], at[o], au[o], ax[o], ay[o]


cdef inline void _push(double* hk, long* hv, Py_ssize_t* size, double key, long val) noexcept nogil:
    cdef Py_ssize_t c = size[0]
    cdef Py_ssize_t p
    size[0] += 1
    while c > 0:
        p = (c - 1) >> 1
        if hk[p] <= key:
            break
        hk[c] = hk[p]
        hv[c] = hv[p]
        c = p
    hk[c] = key
    hv[c] = val


cdef inline void _pop(double* hk, long* hv, Py_ssize_t* size) noexcept nogil:
    cdef Py_ssize_t n = size[0] - 1
    cdef double key = hk[n]
    cdef long val = hv[n]
    cdef Py_ssize_t c = 0, ch
    size[0] = n
    while True:
        ch = 2 * c + 1
        if ch >= n:
            break
        if ch + 1 < n and hk[ch + 1] < hk[ch]:
            ch += 1
        if hk[ch] >= key:
            break
        hk[c] = hk[ch]
        hv[c] = hv[ch]
        c = ch
    if n > 0:
        hk[c] = key
        hv[c] = val


def dijkstra(indptr, indices, weights, long source, targets=None):
    """Binary-heap Dijkstra on a CSR graph with optional early exit."""
    cdef long[::1] ip = np.ascontiguousarray(indptr, dtype=np.int_)
    cdef long[::1] ix = np.ascontiguousarray(indices, dtype=np.int_)
    cdef double[::1] wt = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = ip.shape[0] - 1
    cdef Py_ssize_t ne = ix.shape[0]
    cdef cnp.ndarray dist_a = np.full(n, np.inf)
    cdef double[::1] dist = dist_a
    cdef cnp.ndarray settled_a = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] settled = settled_a
    cdef cnp.ndarray want_a = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] want = want_a
    cdef Py_ssize_t remaining = -1
    cdef long v, w
    cdef Py_ssize_t k, size = 0
    cdef double dv, nd
    if targets is not None:
        remaining = 0
        for v in targets:
            if not want[v]:
                want[v] = 1
                remaining += 1
    cdef double* hk = <double*> malloc((ne + 1) * sizeof(double))
    cdef long* hv = <long*> malloc((ne + 1) * sizeof(long))
    if hk == NULL or hv == NULL:
        free(hk)
        free(hv)
        raise MemoryError()
    try:
        with nogil:
            dist[source] = 0.0
            _push(hk, hv, &size, 0.0, source)
            while size > 0:
                dv = hk[0]
                v = hv[0]
                _pop(hk, hv, &size)
                if settled[v]:
                    continue
                settled[v] = 1
                if remaining > 0 and want[v]:
                    remaining -= 1
                    if remaining == 0:
                        break
                for k in range(ip[v], ip[v + 1]):
                    w = ix[k]
                    nd = dv + wt[k]
                    if nd < dist[w]:
                        dist[w] = nd
                        _push(hk, hv, &size, nd, w)
    finally:
        free(hk)
        free(hv)
    if targets is not None:
        dist_a[settled_a == 0] = np.inf
    return dist_a
