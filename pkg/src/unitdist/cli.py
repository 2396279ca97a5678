"""Command-line surface: generate point sets, run pipeline stages, emit
deterministic CSV / JSON reports.

    unitdist generate --kind scaled-lattice --n 512 --out points.txt
    unitdist partition --points points.txt --out rundir
    unitdist count --points points.txt
    unitdist verify --points points.txt --out rundir
    unitdist scale --generator scaled-lattice --sizes 256,1024 --out rundir
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .generators import KINDS, generate
from .incidence import UnitSphere, brute_force_unit_distances, incidences
from .partition import build_first_partition, generic_rotation
from .pipeline import Config, parse_t_rule, run_pipeline
from .pointio import read_points, write_points
from .poly import format_poly
from .verify import scaling_experiment


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def checks_csv(check_rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "theoretical", "observed", "status", "context"])
    for row in check_rows:
        w.writerow(row)
    return buf.getvalue()


def scaling_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "unit_distances", "ratio_3_2", "ratio_4_3", "wall_time_ms"])
    for r in rows:
        w.writerow([r.n, r.unit_distances, str(r.ratio_3_2),
                    str(r.ratio_4_3), r.wall_time_ms])
    return buf.getvalue()


def _config_from(args) -> Config:
    return Config(
        seed=args.seed,
        t_rule=args.t_rule,
        strategy=args.strategy,
        epsilon=Fraction(args.epsilon),
        exact_budget=args.budget,
        subdivision_depth=args.depth,
        output_dir=args.out,
    )


def _add_config_flags(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t-rule", default="n^(3/4)")
    p.add_argument("--strategy", choices=["auto", "exact", "heuristic"],
                   default="auto")
    p.add_argument("--epsilon", default="1/10",
                   help="heuristic bisection slack, a rational like 1/10")
    p.add_argument("--budget", type=int, default=100_000,
                   help="exact-strategy enumeration budget")
    p.add_argument("--depth", type=int, default=7,
                   help="quadtree subdivision depth")
    p.add_argument("--out", default="out", help="output directory")


def cmd_generate(args):
    pts, meta = generate(args.kind, args.n, args.seed)
    out = Path(args.out)
    if out.suffix:  # treat as a file path
        out.parent.mkdir(parents=True, exist_ok=True)
        write_points(out, pts)
        target = out
    else:
        out.mkdir(parents=True, exist_ok=True)
        target = out / f"{args.kind}-{args.n}.txt"
        write_points(target, pts)
    print(f"wrote {len(pts)} points to {target}")
    if meta:
        print(f"generator meta: {json.dumps(_jsonable(meta), sort_keys=True)}")
    return 0


def cmd_partition(args):
    pts = read_points(args.points)
    cfg = _config_from(args)
    n = len(pts)
    t = parse_t_rule(cfg.t_rule, n)
    strategy = cfg.resolve_strategy(n)
    rotated, _, rot_meta = generic_rotation(pts, seed=cfg.seed)
    level = build_first_partition(rotated, t, strategy, cfg.epsilon,
                                  seed=cfg.seed, budget=cfg.exact_budget)
    doc = {
        "n": n, "t": t, "strategy": strategy,
        "rotation": {"quaternion": list(rot_meta["quaternion"]),
                     "redraws": rot_meta["redraws"]},
        "rounds": [{"index": r.index, "sets": r.sets,
                    "basis_degree": r.basis_degree, "mode": r.mode,
                    "slack": str(r.slack)} for r in level.rounds],
        "bisectors": [format_poly(b) for b in level.bisectors],
        "factors": [format_poly(f) for f in level.factors],
        "product_degree": level.product_degree(),
        "max_cell": level.max_cell(),
        "cell_bound": str(level.cell_bound()),
        "cells": {"".join("+" if s > 0 else "-" for s in sig): idx
                  for sig, idx in sorted(level.cells.items())},
        "zero_set_points": list(level.zero_set_points),
    }
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "partition.json").write_text(dump_json(doc))
    print(f"partition: k={level.k} max_cell={level.max_cell()} "
          f"|P0|={len(level.zero_set_points)} -> {outdir / 'partition.json'}")
    return 0


def cmd_count(args):
    pts = read_points(args.points)
    oracle = brute_force_unit_distances(pts)
    spheres = [UnitSphere(p) for p in pts]
    inc = incidences(pts, spheres)
    doc = {"n": len(pts), "unit_distances": oracle, "incidences": inc}
    print(dump_json(doc), end="")
    if inc != 2 * oracle:
        print("ERROR: incidence identity violated", file=sys.stderr)
        return 1
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "counts.json").write_text(dump_json(doc))
    return 0


def cmd_verify(args):
    pts = read_points(args.points)
    cfg = _config_from(args)
    report = run_pipeline(pts, cfg, checks="full")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "report.json").write_text(dump_json(report))
    (outdir / "checks.csv").write_text(checks_csv(report.get("checks", [])))
    failed = report.get("checks_failed", 0)
    print(f"pipeline count {report['pipeline_incidences']} == "
          f"2 x {report['oracle_unit_distances']} unit distances; "
          f"{len(report.get('checks', []))} checks, {failed} failed")
    print(f"reports in {outdir}")
    return 1 if failed else 0


def cmd_scale(args):
    sizes = [int(s) for s in args.sizes.split(",") if s]
    cfg = _config_from(args)
    rows = scaling_experiment(args.generator, sizes, cfg.t_rule, cfg)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "scaling.csv").write_text(scaling_csv(rows))
    for r in rows:
        print(f"n={r.n:6d} unit_distances={r.unit_distances:8d} "
              f"ratio_3_2={float(r.ratio_3_2):.6f} [{r.wall_time_ms} ms]")
    print(f"wrote {outdir / 'scaling.csv'}")
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="unitdist",
        description="exact unit-distance incidence counting via polynomial partitions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated point-set file")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("partition", help="build the first-level partition")
    p.add_argument("--points", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("count", help="oracle and incidence counts")
    p.add_argument("--points", required=True)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="full pipeline with bound checks")
    p.add_argument("--points", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scale", help="scaling experiment across sizes")
    p.add_argument("--generator", choices=KINDS, required=True)
    p.add_argument("--sizes", required=True, help="comma-separated sizes")
    _add_config_flags(p)
    p.set_defaults(func=cmd_scale)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
