"""Time the compiled and pure-Python kernels on identical inputs.

Usage: python3 benchmarks/bench_kernels.py [--repeat R]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from linenet import _kernels
from linenet.netbuild import BuildParams, Configuration, build_network


def cases():
    rng = np.random.default_rng(0)
    poly = np.array([[-50.0, -50.0], [50.0, -50.0], [50.0, 50.0], [-50.0, 50.0]])
    a = rng.random(400) * 2 * np.pi
    clip = (poly, np.cos(a), np.sin(a), rng.random(400) * 40 + 1, 1e-12)
    seg = rng.random((1500, 4)) * 100
    short = rng.random((4000, 4)) * 100
    short[:, 2:] = short[:, :2] + (rng.random((4000, 2)) - 0.5) * 5
    cfg = Configuration.uniform(2000, 1)
    net, _ = build_network(cfg, BuildParams.default(2000, 0.1, 1))
    indptr, indices, weights = net.csr()
    return {
        "clip_convex (400 half-planes)": ("clip_convex", clip),
        "segment_intersections (1500 long)": ("segment_intersections", (seg, 1e-9)),
        "segment_intersections (4000 short)": ("segment_intersections", (short, 1e-9)),
        f"dijkstra ({net.n_nodes} nodes)": ("dijkstra", (indptr, indices, weights, 0)),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = _kernels.available_backends()
    print(f"default backend: {_kernels.BACKEND}")
    print(f"{'kernel':42s}" + "".join(f"{b:>12s}" for b in backends) + f"{'speedup':>10s}")
    for label, (name, inputs) in cases().items():
        times = {}
        for b, mod in backends.items():
            fn = getattr(mod, name)
            times[b] = min(timeit.repeat(lambda: fn(*inputs), number=1, repeat=args.repeat))
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{label:42s}" + "".join(f"{times[b] * 1e3:10.2f}ms" for b in backends) + f"{speed:9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
