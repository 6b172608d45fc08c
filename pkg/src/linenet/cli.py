"""Command-line entry point: ``linenet <command> ...``.

Every run writes a JSON manifest (even on failure) naming the command, its
parameters, seeds, package version, output files and wall-clock duration.
Outputs themselves never contain timestamps, so reruns are byte-identical.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .cell import (
    Jm_asymptotic,
    Jm_quadrature,
    estimate_Jm_mc,
    separating_mask,
    two_point_cell,
)
from .errors import ExhaustedAttempts, LinenetError, NodeMismatch
from .geom import Point, Rect
from .lineproc import LineProcessParams, sample_rect
from .netbuild import BuildParams, Configuration, PlanarNetwork, build_network, default_scales
from .search import SearchSpec, calibrate_thresholds, rejection_search
from .stats import PairSamplePlan, equidist_cost, pair_stats
from .svg import cell_svg, network_svg


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# formatting helpers

def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "" if math.isnan(v) else f"{float(v):.17g}"
    return str(v)


def csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue()


def json_text(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=True) + "\n"


class Outputs:
    def __init__(self):
        self.paths: list[str] = []

    def write(self, path: Optional[str], text: str) -> None:
        if path is None or path == "-":
            sys.stdout.write(text)
            return
        p = Path(path)
        if p.parent and not p.parent.exists():
            p.parent.mkdir(parents=True, exist_ok=True)
        with open(p, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        self.paths.append(str(p))


def parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def parse_ints(text: str) -> list[int]:
    vals = parse_floats(text)
    if any(v != int(v) for v in vals):
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def read_points(path: str) -> np.ndarray:
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for rec in csv.reader(fh):
            if not rec or not "".join(rec).strip():
                continue
            try:
                rows.append((float(rec[0]), float(rec[1])))
            except (ValueError, IndexError):
                if rows:
                    raise UsageError(f"{path}: bad row {rec!r}")
                # header line
    return np.array(rows, dtype=float).reshape(-1, 2)


def load_config(args) -> Configuration:
    if getattr(args, "points", None):
        xy = read_points(args.points)
        side = args.side if args.side is not None else math.sqrt(len(xy))
        return Configuration(xy, side)
    if getattr(args, "uniform", None):
        return Configuration.uniform(args.uniform, args.seed)
    raise UsageError("give --points FILE or --uniform N")


def build_params(args, config: Configuration) -> BuildParams:
    s0, t0 = default_scales(config.n, config.side)
    s = args.s if args.s is not None else s0
    t = args.t if args.t is not None else (t0 if args.s is None else s / max(1, round(s / t0)))
    p = BuildParams(args.intensity, s, t, args.seed)
    p.check(config.side)
    return p


# --------------------------------------------------------------------------
# commands

def cmd_jm(args, out: Outputs) -> None:
    methods = ["mc", "quad", "asymptotic"] if args.method == "all" else [args.method]
    if "mc" in methods and args.replicates < 2:
        raise UsageError("--replicates must be >= 2 for the mc method")
    if not args.intensity > 0:
        raise UsageError("--intensity must be > 0")
    rows = []
    for m in args.m:
        if not m > 0:
            raise UsageError("every m must be > 0")
        for meth in methods:
            if meth == "mc":
                r = estimate_Jm_mc(m, args.intensity, args.replicates, args.seed)
                rows.append([m, "mc", r.value, r.value / 2, r.std_error, None, r.replicates, args.seed])
            elif meth == "quad":
                r = Jm_quadrature(m, args.rel_tol, args.intensity)
                rows.append([m, "quad", r.value, r.value / 2, None, r.abs_tolerance, 0, args.seed])
            else:
                v = Jm_asymptotic(args.intensity * m) / args.intensity
                rows.append([m, "asymptotic", v, v / 2, None, 0.0, 0, args.seed])
    header = ["m", "method", "J_m", "semi_excess", "std_error", "abs_tol", "replicates", "seed"]
    out.write(args.out, csv_text(header, rows))


def cmd_cell_svg(args, out: Outputs) -> None:
    if not args.m > 0:
        raise UsageError("--m must be > 0")
    margin = args.margin if args.margin is not None else max(10.0 / args.intensity, 0.5 * args.m)
    half = 0.5 * args.m + margin
    window = Rect(-half, -half, half, half)
    v1, v2 = Point(-0.5 * args.m, 0.0), Point(0.5 * args.m, 0.0)
    sample = sample_rect(window, LineProcessParams(args.intensity, args.seed), replicate=args.replicate)
    cell = two_point_cell(sample, v1, v2, window)
    sep = separating_mask(sample, v1, v2)
    lines = sample.lines
    retained = [l for l, s in zip(lines, sep) if not s]
    deleted = [l for l, s in zip(lines, sep) if s]
    out.write(args.out, cell_svg(window, v1, v2, retained, deleted, cell.as_array()))


def cmd_build(args, out: Outputs) -> None:
    config = load_config(args)
    params = build_params(args, config)
    net, acc = build_network(config, params)
    out.write(args.out_json, net.to_json() + "\n")
    if args.out_svg:
        out.write(args.out_svg, network_svg(net, config))
    doc = {"n": config.n, "side": config.side, "intensity": params.intensity, "s": params.s,
           "t": params.t, "seed": params.seed, "accounting": acc.to_dict(),
           "connected": net.is_connected(), "points_connected": net.points_connected(), "warnings": list(net.warnings)}
    out.write(args.out_accounting, json_text(doc))


def _plan(args, n: int) -> PairSamplePlan:
    if args.pairs == "all":
        return PairSamplePlan.all_pairs()
    return PairSamplePlan.random_pairs(n, args.seed, args.count)


def cmd_stats(args, out: Outputs) -> None:
    with open(args.network, encoding="utf-8") as fh:
        net = PlanarNetwork.from_json(fh.read())
    xy = read_points(args.points)
    side = args.side if args.side is not None else max(float(xy.max()), float(net.nodes.max()))
    config = Configuration(xy, side)
    try:
        net.nodes_of(xy)
    except NodeMismatch as exc:
        raise NodeMismatch(f"points file does not match the network: {exc}") from None
    rep, table = pair_stats(net, config, _plan(args, config.n), policy=args.policy, s=args.s)
    out.write(args.out, json_text(rep.to_dict()))
    if args.pairs_csv:
        buf = Path(args.pairs_csv)
        table.write_csv(buf)
        out.paths.append(str(buf))


def cmd_equidist(args, out: Outputs) -> None:
    config = load_config(args)
    if not args.L > 0:
        raise UsageError("--L must be > 0")
    size = config.n if args.reference_size is None else args.reference_size
    reps = [equidist_cost(config, args.L, size, args.seed + 1 + k, args.reference)
            for k in range(args.repeats)]
    costs = np.array([r.cost for r in reps])
    doc = {"L": args.L, "cost": float(costs.mean()),
           "cost_std_error": float(costs.std(ddof=1) / math.sqrt(len(costs))) if len(costs) > 1 else None,
           "reference": reps[0].reference, "reference_sample_size": size, "seed": args.seed,
           "repeats": [r.to_dict() for r in reps]}
    out.write(args.out, json_text(doc))


def cmd_search(args, out: Outputs) -> None:
    config = load_config(args)
    params = build_params(args, config)
    plan = PairSamplePlan.random_pairs(config.n, args.seed, args.count)
    lt, et = args.length_threshold, args.excess_threshold
    calibrated = lt is None or et is None
    if calibrated:
        # pilot seeds are disjoint from the attempt seeds
        clt, cet = calibrate_thresholds(config, params, args.pilot, args.seed + 1_000_000, plan)
        lt = clt if lt is None else lt
        et = cet if et is None else et
    spec = SearchSpec(config, params, lt, et, args.max_attempts, args.seed, plan)
    try:
        result = rejection_search(spec)
        err = None
    except ExhaustedAttempts as exc:
        result, err = exc.result, exc
    doc = {"n": config.n, "calibrated": calibrated, **result.to_dict()}
    out.write(args.out, json_text(doc))
    if result.accepted and args.out_network:
        out.write(args.out_network, result.network.to_json() + "\n")
    if err is not None:
        raise err


def cmd_scaling(args, out: Outputs) -> None:
    rows = []
    for n in args.n:
        vals = []
        for k in range(args.seeds):
            seed = args.seed + k
            config = Configuration.uniform(n, seed)
            s, t = default_scales(n)
            net, acc = build_network(config, BuildParams(args.intensity, s, t, seed))
            rep, _ = pair_stats(net, config, PairSamplePlan.random_pairs(n, seed, args.count))
            row = [rep.excess, rep.ratio, acc.total, acc.baseline_tree_length, acc.medium_grid,
                   acc.hotspot_cell + acc.hotspot_connector, acc.poisson_line]
            vals.append(row)
            rows.append([n, seed] + row)
        rows.append([n, "mean"] + list(np.mean(np.array(vals), axis=0)))
    header = ["n", "seed", "excess", "ratio", "total_length", "tree_length", "medium_grid",
              "hotspot", "poisson_line"]
    out.write(args.out, csv_text(header, rows))


# --------------------------------------------------------------------------
# parser

def _add_config_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--points", help="CSV of x,y pairs")
    src.add_argument("--uniform", type=int, metavar="N", help="N uniform points in [0, sqrt N]^2")
    p.add_argument("--side", type=float, help="window side for --points (default sqrt n)")


def _add_build_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--intensity", type=float, default=0.1, help="Poisson line intensity")
    p.add_argument("--s", type=float, help="medium grid side (default from n)")
    p.add_argument("--t", type=float, help="small grid side (default from n)")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linenet", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--manifest", help="manifest path (default <command>.manifest.json)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jm", help="mean perimeter excess of the two-point cell")
    p.add_argument("--m", type=parse_floats, required=True, help="comma-separated separations")
    p.add_argument("--intensity", type=float, default=1.0)
    p.add_argument("--replicates", type=int, default=1000)
    p.add_argument("--method", choices=["mc", "quad", "asymptotic", "all"], default="all")
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_jm)

    p = sub.add_parser("cell-svg", help="render one sampled two-point cell")
    p.add_argument("--m", type=float, default=10.0)
    p.add_argument("--intensity", type=float, default=1.0)
    p.add_argument("--margin", type=float)
    p.add_argument("--replicate", type=int, default=0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cell_svg)

    p = sub.add_parser("build", help="build the layered network")
    _add_config_args(p)
    _add_build_args(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-json", required=True)
    p.add_argument("--out-svg")
    p.add_argument("--out-accounting")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("stats", help="excess and ratio statistics of a network")
    p.add_argument("--network", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--side", type=float)
    p.add_argument("--pairs", choices=["all", "random"], default="random")
    p.add_argument("--count", type=int)
    p.add_argument("--policy", choices=["shortest", "grid-vertex"], default="shortest")
    p.add_argument("--s", type=float, help="medium grid side, for --policy grid-vertex")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--pairs-csv")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("equidist", help="truncated matching cost against a uniform reference")
    _add_config_args(p)
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--reference", choices=["square", "disk"], default="square")
    p.add_argument("--reference-size", type=int)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_equidist)

    p = sub.add_parser("search", help="rejection search for a network meeting both thresholds")
    _add_config_args(p)
    _add_build_args(p)
    p.add_argument("--length-threshold", type=float)
    p.add_argument("--excess-threshold", type=float)
    p.add_argument("--pilot", type=int, default=10)
    p.add_argument("--max-attempts", type=int, default=10)
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--out-network")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("scaling", help="sweep n and report seed-averaged statistics")
    p.add_argument("--n", type=parse_ints, required=True)
    p.add_argument("--intensity", type=float, default=0.1)
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scaling)
    return ap


def _guess_command(argv: list[str]) -> str:
    names = {"jm", "cell-svg", "build", "stats", "equidist", "search", "scaling"}
    return next((a for a in argv if a in names), "linenet")


def _manifest_path(argv: list[str], command: str) -> str:
    for k, a in enumerate(argv):
        if a == "--manifest" and k + 1 < len(argv):
            return argv[k + 1]
        if a.startswith("--manifest="):
            return a.split("=", 1)[1]
    return f"{command}.manifest.json"


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    command = _guess_command(argv)
    manifest = {"command": command, "version": __version__, "argv": argv, "parameters": None,
                "seeds": [], "outputs": [], "status": "ok", "error": None,
                "exit_code": 0, "started_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
                "duration_s": None}
    out = Outputs()
    t0 = time.perf_counter()
    code = 0
    emit = True
    try:
        try:
            args = make_parser().parse_args(argv)
        except SystemExit as exc:
            code = int(exc.code or 0)
            emit = code != 0  # --help / --version are not runs
            manifest.update(status="usage-error", error="invalid arguments")
            return code
        params = {k: v for k, v in vars(args).items() if k not in ("func", "manifest")}
        manifest["parameters"] = params
        manifest["seeds"] = [args.seed] if getattr(args, "seed", None) is not None else []
        try:
            args.func(args, out)
        except UsageError as exc:
            print(f"linenet {command}: error: {exc}", file=sys.stderr)
            code = 2
            manifest.update(status="usage-error", error=str(exc))
        except (LinenetError, ValueError, OSError) as exc:
            print(f"linenet {command}: {type(exc).__name__}: {exc}", file=sys.stderr)
            code = 1
            manifest.update(status="error", error=f"{type(exc).__name__}: {exc}")
        return code
    finally:
        if emit:
            manifest["outputs"] = out.paths
            manifest["exit_code"] = code
            manifest["duration_s"] = time.perf_counter() - t0
            try:
                with open(_manifest_path(argv, command), "w", encoding="utf-8") as fh:
                    fh.write(json.dumps(manifest, indent=2, default=str) + "\n")
            except OSError as exc:
                print(f"linenet: could not write manifest: {exc}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
