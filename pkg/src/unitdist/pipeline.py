"""End-to-end orchestration: rotate, partition, attribute every incidence to
its stratum, run the second level inside each zero-set factor, verify, and
assemble a deterministic report.

The pipeline's total incidence count is assembled stratum by stratum (first
level cells, second-level cells, second-level zero sets) and must equal the
brute-force oracle exactly; a mismatch raises."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import rng as rngmod
from .incidence import UnitSphere, brute_force_unit_distances, incidence_lists
from .partition import (
    PartitionError,
    build_first_partition,
    build_second_partition,
    choose_E,
    generic_rotation,
    make_point,
    pseudo_factorize,
)
from .poly import format_poly
from .verify import (
    check_first_partition,
    check_holder_aggregate,
    check_second_partition,
)

F = Fraction


@dataclass
class Config:
    seed: int = 0
    t_rule: str = "n^(3/4)"
    strategy: str = "auto"  # exact | heuristic | auto (exact for n <= 512)
    epsilon: Fraction = Fraction(1, 10)
    exact_budget: int = 100_000
    subdivision_depth: int = 7
    output_dir: str = "out"
    sphere_sample: int = 48

    def resolve_strategy(self, n: int) -> str:
        if self.strategy != "auto":
            return self.strategy
        return "exact" if n <= 512 else "heuristic"


_T_RULE_RE = re.compile(r"^\s*n\s*\^\s*\(?\s*(\d+)\s*/\s*(\d+)\s*\)?\s*$")


def parse_t_rule(rule: str, n: int) -> int:
    """Evaluate the cell-count rule. `n^(a/b)` uses exact integer roots
    (floor); otherwise the rule is arithmetic in n (e.g. "64", "n/4")."""
    m = _T_RULE_RE.match(rule)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        target = n**a
        t = 1
        while (t + 1) ** b <= target:
            t += 1
        return max(t, 1)
    value = eval(rule, {"__builtins__": {}}, {"n": n})  # arithmetic only
    return max(int(value), 1)


class PipelineError(RuntimeError):
    def __init__(self, stage, message):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


def _fr(x) -> str:
    return str(x)


def _sig_key(sig) -> str:
    return "".join("+" if s > 0 else "-" for s in sig)


def run_pipeline(points, config: Config | None = None, checks: str = "full"):
    """Execute the full decomposition and return the report dictionary.

    checks="counts" skips the (slower) verification sweeps; the exact
    oracle-equality assertion always runs.
    """
    cfg = config or Config()
    pts = [make_point(*p) for p in points]
    n = len(pts)
    if n == 0:
        raise PipelineError("input", "empty point set")
    strategy = cfg.resolve_strategy(n)
    t = parse_t_rule(cfg.t_rule, n)

    try:
        rotated, _matrix, rot_meta = generic_rotation(pts, seed=cfg.seed)
    except PartitionError as err:
        raise PipelineError("rotation", str(err))

    try:
        level = build_first_partition(
            rotated, t, strategy, cfg.epsilon,
            seed=cfg.seed, budget=cfg.exact_budget)
    except Exception as err:
        raise PipelineError("first-partition", str(err))

    spheres = [UnitSphere(p) for p in rotated]
    inc_lists = incidence_lists(rotated, spheres)
    total_incidences = sum(len(h) for h in inc_lists)

    cell_of = {}
    for sig, idx in level.cells.items():
        for i in idx:
            cell_of[i] = sig
    zero_set = set(level.zero_set_points)

    first_cell_incidences = 0
    per_sphere_counts = []
    for hits in inc_lists:
        c = sum(1 for i in hits if i in cell_of)
        first_cell_incidences += c
        per_sphere_counts.append(len(hits))

    report = {
        "config": {
            "seed": cfg.seed, "t_rule": cfg.t_rule, "strategy": strategy,
            "epsilon": _fr(cfg.epsilon), "exact_budget": cfg.exact_budget,
            "subdivision_depth": cfg.subdivision_depth,
        },
        "n": n,
        "t": t,
        "rotation": {"quaternion": list(rot_meta["quaternion"]),
                     "redraws": rot_meta["redraws"]},
        "first_partition": {
            "rounds": [
                {"index": r.index, "sets": r.sets, "basis_degree": r.basis_degree,
                 "mode": r.mode, "slack": _fr(r.slack), "fixups": r.fixups}
                for r in level.rounds
            ],
            "bisectors": [format_poly(b) for b in level.bisectors],
            "factors": [format_poly(f) for f in level.factors],
            "product_degree": level.product_degree(),
            "cells": {_sig_key(sig): idx for sig, idx in sorted(level.cells.items())},
            "max_cell": level.max_cell(),
            "cell_bound": _fr(level.cell_bound()),
            "zero_set_points": list(level.zero_set_points),
        },
        "incidence": {
            "per_sphere": per_sphere_counts,
            "first_level_cells": first_cell_incidences,
        },
        "second_partitions": [],
        "checks": [],
    }

    second_incidences = 0
    all_checks = []
    split = None
    seconds = []
    if zero_set:
        try:
            split = pseudo_factorize(level, rotated)
        except PartitionError as err:
            raise PipelineError("factor-split", str(err))
        for fi, (factor_idx, q_global) in enumerate(split.assignments):
            factor = split.factors[factor_idx]
            m_i = len(q_global)
            entry = {
                "factor": format_poly(factor),
                "degree": factor.total_degree(),
                "m_i": m_i,
                "certified_irreducible": split.certified[factor_idx],
                "points": list(q_global),
            }
            if m_i == 0:
                report["second_partitions"].append(entry)
                continue
            D_i = factor.total_degree()
            E = choose_E(m_i, n, D_i)
            Q = [rotated[g] for g in q_global]
            try:
                sp = build_second_partition(
                    Q, factor, E, strategy, cfg.epsilon,
                    seed=rngmod.stream_seed(cfg.seed, "pipeline-second", fi),
                    budget=cfg.exact_budget)
            except Exception as err:
                raise PipelineError("second-partition", str(err))
            local_cells = {}
            for sig, idx in sp.cells.items():
                for i in idx:
                    local_cells[q_global[i]] = sig
            q0_global = {q_global[i] for i in sp.zero_set_points}
            cell_inc = 0
            q0_inc = 0
            for hits in inc_lists:
                for g in hits:
                    if g in local_cells:
                        cell_inc += 1
                    elif g in q0_global:
                        q0_inc += 1
            second_incidences += cell_inc + q0_inc
            entry.update({
                "E": E,
                "E_bound": sp.E_bound,
                "deg_g": sp.g.total_degree(),
                "g": format_poly(sp.g) if sp.g.total_degree() <= 24 else None,
                "fixups": sp.fixups,
                "target_t": sp.target_t,
                "realized_parts": sp.realized_parts,
                "rounds": [
                    {"index": r.index, "sets": r.sets,
                     "basis_degree": r.basis_degree, "mode": r.mode,
                     "slack": _fr(r.slack), "fixups": r.fixups}
                    for r in sp.rounds
                ],
                "max_cell": sp.max_cell(),
                "zero_set_size": len(sp.zero_set_points),
                "cell_incidences": cell_inc,
                "q0_incidences": q0_inc,
            })
            report["second_partitions"].append(entry)
            seconds.append((sp, Q, q_global))

    pipeline_total = first_cell_incidences + second_incidences
    oracle = brute_force_unit_distances(rotated)
    report["oracle_unit_distances"] = oracle
    report["pipeline_incidences"] = pipeline_total
    if pipeline_total != 2 * oracle or pipeline_total != total_incidences:
        raise PipelineError(
            "accounting",
            f"pipeline count {pipeline_total} != 2*oracle {2 * oracle} "
            f"(direct incidences {total_incidences})")

    if checks == "full":
        all_checks.extend(check_first_partition(
            level, rotated, spheres, inc_lists,
            sphere_sample=cfg.sphere_sample, seed=cfg.seed))
        for sp, Q, q_global in seconds:
            local_lists = []
            pos_of = {g: i for i, g in enumerate(q_global)}
            for hits in inc_lists:
                local_lists.append([pos_of[g] for g in hits if g in pos_of])
            all_checks.extend(check_second_partition(
                sp, Q, spheres, inc_lists_q=local_lists, seed=cfg.seed))
        if split is not None:
            all_checks.append(check_holder_aggregate(split, n, seconds))
        report["checks"] = [list(c.row()) for c in all_checks]
        failed = [c for c in all_checks if not c.passed]
        report["checks_failed"] = len(failed)
    return report
