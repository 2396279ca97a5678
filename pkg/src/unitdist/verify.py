"""Empirical checks of every bound the incidence argument relies on.

Concrete bounds (cell sizes, the 6(2D)^2 component bound, Harnack's
1 + C(D-1, 2), Bezout's D*E, the Holder inequality) are asserted; the
unnamed constants hiding in O(.) statements are measured and reported,
never asserted.

Fractional powers are compared through integer-root bracketing at a fixed
decimal precision, so no assertion ever depends on rounding direction.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt

from . import rng as rngmod
from .incidence import (
    UnitSphere,
    bezout_common_zeros,
    brute_force_unit_distances,
    count_curve_components,
    count_plane_complement_components,
    incidence_lists,
    pullback_sphere,
    sphere_cells_crossed,
    stereographic_map,
)
from .partition import FactorSplit, PartitionLevel, SecondPartition, make_point
from .poly import Poly, PolynomialError, divides, has_common_factor, normalize

F = Fraction


@dataclass
class BoundCheck:
    name: str
    theoretical: object
    observed: object
    passed: bool
    context: str = ""

    def row(self):
        return (self.name, str(self.theoretical), str(self.observed),
                "pass" if self.passed else "FAIL", self.context)


@dataclass
class ScalingRow:
    n: int
    unit_distances: int
    ratio_3_2: Fraction
    ratio_4_3: Fraction
    wall_time_ms: int


# ---------------------------------------------------------------------------
# integer-root bracketing of fractional powers
# ---------------------------------------------------------------------------


def iroot(n: int, k: int) -> int:
    """floor(n^(1/k)) for nonnegative n."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    if k == 1:
        return n
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def pow_brackets(x, num: int, den: int, digits: int = 20):
    """(lo, hi) rational brackets of x^(num/den) with hi - lo <= 10^-digits."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative base")
    if x == 0:
        return (F(0), F(0))
    y = x**num
    scale = 10**digits
    t = (y.numerator * scale**den) // y.denominator
    r = iroot(t, den)
    return (F(r, scale), F(r + 1, scale))


def ratio_to_power(count: int, n: int, num: int, den: int,
                   digits: int = 20) -> Fraction:
    """count / n^(num/den) truncated to the given decimal precision."""
    scale = 10**digits
    root = iroot(n**num * scale**den, den)
    if root == 0:
        return F(0)
    return F(count * scale * scale // root, scale)


# ---------------------------------------------------------------------------
# first-partition checks
# ---------------------------------------------------------------------------


def check_first_partition(level: PartitionLevel, points, spheres,
                          inc_lists=None, sphere_sample: int = 48,
                          max_depth: int = 6, seed: int = 0):
    """Cell sizes, per-sphere crossing bounds, total crossings, and the
    triple-incidence pair bound."""
    checks = []
    pts = [make_point(*p) for p in points]
    n = len(pts)
    if inc_lists is None:
        inc_lists = incidence_lists(pts, spheres)

    bound = level.cell_bound()
    checks.append(BoundCheck(
        "first.max_cell", bound, level.max_cell(),
        F(level.max_cell()) <= bound, f"n={n} k={level.k}"))

    cell_of = {}
    for sig, idx in level.cells.items():
        for i in idx:
            cell_of[i] = sig

    # per-sphere crossing estimates on a deterministic sample
    rng = rngmod.stream(seed, "verify-sample")
    order = list(range(len(spheres)))
    rng.shuffle(order)
    sample = sorted(order[:sphere_sample])
    worst_ratio = F(0)
    total_geo = 0
    crossings_ok = True
    for si in sample:
        eff, geo = sphere_cells_crossed(spheres[si], level, pts,
                                        incident=inc_lists[si])
        total_geo += geo
        if eff > geo:
            crossings_ok = False
        dstar = 0
        contained = False
        for b in level.bisectors:
            pb = pullback_sphere(spheres[si], b)
            if pb.is_contained:
                contained = True
                break
            dstar += pb.f_star.total_degree()
        if contained:
            continue
        warren = 6 * (2 * max(dstar, 1)) ** 2
        if geo > warren:
            crossings_ok = False
        if warren:
            worst_ratio = max(worst_ratio, F(geo, warren))
    checks.append(BoundCheck(
        "first.sphere_crossings_vs_warren", 1, worst_ratio, crossings_ok,
        f"sampled {len(sample)} spheres; effective<=estimate<=6(2 deg f*)^2"))

    deg_f = level.product_degree()
    denom = n * max(deg_f, 1) ** 2
    checks.append(BoundCheck(
        "first.total_crossings_constant", f"c * n * deg(f)^2 = c*{denom}",
        total_geo, True,
        f"measured c={F(total_geo, denom) if denom else 0} on the sample"))

    # triple-point bound: spheres through a point with >= 3 points in a cell
    rich = {}
    for si, hits in enumerate(inc_lists):
        by_cell = {}
        for i in hits:
            sig = cell_of.get(i)
            if sig is not None:
                by_cell.setdefault(sig, []).append(i)
        for sig, members in by_cell.items():
            if len(members) >= 3:
                for i in members:
                    rich[(sig, i)] = rich.get((sig, i), 0) + 1
    triple_ok = True
    worst = F(0)
    for (sig, i), cnt in rich.items():
        size = len(level.cells[sig])
        cap = 2 * comb(size - 1, 2)
        if cnt > cap:
            triple_ok = False
        if cap:
            worst = max(worst, F(cnt, cap))
    checks.append(BoundCheck(
        "first.triple_incidence_pairs", 1, worst, triple_ok,
        "spheres through p with >=3 cell points <= 2 C(|cell|-1, 2)"))
    return checks


# ---------------------------------------------------------------------------
# second-partition checks
# ---------------------------------------------------------------------------


def _sphere_on_surface_quadratic(sphere: UnitSphere) -> Poly:
    c = sphere.center
    x = Poly.variable(3, 0)
    y = Poly.variable(3, 1)
    z = Poly.variable(3, 2)
    return (x - c.x) ** 2 + (y - c.y) ** 2 + (z - c.z) ** 2 - 1


def check_second_partition(sp: SecondPartition, Q, spheres,
                           inc_lists_q=None, bezout_cap: int = 120,
                           sphere_sample: int = 24, seed: int = 0):
    """Co-primality contract, degree bound, part count, effective crossing
    and incidence aggregates, contained spheres, and (degree-capped) curve
    component checks against Harnack and Bezout."""
    checks = []
    pts = [make_point(*p) for p in Q]
    m = len(pts)
    D = sp.base_factor.total_degree()
    if inc_lists_q is None:
        inc_lists_q = incidence_lists(pts, spheres)

    in_cells = sorted(i for v in sp.cells.values() for i in v)
    covered = sorted(in_cells + list(sp.zero_set_points))
    checks.append(BoundCheck(
        "second.partition_of_set", m, len(covered),
        covered == list(range(m)), f"D={D} E={sp.E_request}"))

    checks.append(BoundCheck(
        "second.g_coprime_with_base", "division fails", sp.fixups,
        sp.g.is_constant() or not divides(sp.base_factor, sp.g),
        f"fixups={sp.fixups}"))
    checks.append(BoundCheck(
        "second.deg_g_le_bound", sp.E_bound, sp.g.total_degree(),
        sp.g.total_degree() <= sp.E_bound,
        f"requested E={sp.E_request}"))
    in_range = sp.target_t <= sp.realized_parts < 4 * sp.target_t
    checks.append(BoundCheck(
        "second.part_count_within_factor4", f"[{sp.target_t}, {4 * sp.target_t})",
        sp.realized_parts, in_range, "realized structural parts 2^k"))

    cell_of = {}
    for sig, idx in sp.cells.items():
        for i in idx:
            cell_of[i] = sig
    q0 = set(sp.zero_set_points)

    max_eff = 0
    total_eff = 0
    cell_incidences = 0
    q0_incidences = 0
    for hits in inc_lists_q:
        sigs = {cell_of[i] for i in hits if i in cell_of}
        max_eff = max(max_eff, len(sigs))
        total_eff += len(sigs)
        cell_incidences += sum(1 for i in hits if i in cell_of)
        q0_incidences += sum(1 for i in hits if i in q0)

    n_s = len(spheres)
    de = max(D * sp.E_bound, 1)
    checks.append(BoundCheck(
        "second.effective_crossings_constant", f"c * D*E = c*{de}", max_eff,
        True, f"measured c={F(max_eff, de)}"))
    t = max(sp.realized_parts, 1)
    eq1 = F(m, 1) ** 3 / t**2 + total_eff
    checks.append(BoundCheck(
        "second.eq1_incidence_aggregate", f"c * (m^3/t^2 + sum n_j) = c*{eq1}",
        cell_incidences, True,
        f"measured c={F(cell_incidences) / eq1 if eq1 else 0}"))
    hstar_budget = n_s * D * D + m * D * sp.E_bound
    checks.append(BoundCheck(
        "second.q0_incidences_constant", f"c * (nD^2 + mDE) = c*{hstar_budget}",
        q0_incidences, True,
        f"measured c={F(q0_incidences, max(hstar_budget, 1))}"))

    # spheres fully inside Z(g): their quadratic must divide g
    contained = 0
    if sp.g.total_degree() >= 2:
        probe_pts = []
        rng = rngmod.stream(seed, "second-contained")
        for si, sphere in enumerate(spheres):
            psi = stereographic_map(sphere.center)
            on_sphere = False
            for _ in range(2):
                u = F(rng.randint(-9, 9), 7)
                v = F(rng.randint(-9, 9), 5)
                qd = u * u + v * v + 1
                pt = tuple(nm.evaluate((u, v)) / qd for nm in psi.numerators)
                if sp.g.evaluate(pt) != 0:
                    on_sphere = True  # g nonzero somewhere on the sphere
                    break
            if not on_sphere and divides(_sphere_on_surface_quadratic(sphere), sp.g):
                contained += 1
    cap = sp.g.total_degree() // 2
    checks.append(BoundCheck(
        "second.contained_spheres_le_degg_half", cap, contained,
        contained <= cap, "spheres with g* identically zero"))

    # curve-level checks on a sampled sphere set, degree-capped
    rng = rngmod.stream(seed, "second-curves")
    order = list(range(n_s))
    rng.shuffle(order)
    harnack_ok = True
    bezout_ok = True
    bezout_done = 0
    for si in order[:sphere_sample]:
        pf = pullback_sphere(spheres[si], sp.base_factor)
        if pf.is_contained:
            continue
        fstar = pf.f_star
        if fstar.is_constant():
            continue
        dstar = normalize(fstar).total_degree()
        cc = count_curve_components(fstar, max_depth=max(4, 6 - dstar // 6))
        harnack = 1 + comb(max(dstar - 1, 0), 2)
        if cc.certified_lower > harnack:
            harnack_ok = False
        if sp.g.is_constant():
            continue
        pg = pullback_sphere(spheres[si], sp.g)
        if pg.is_contained or pg.f_star.is_constant():
            continue
        gstar = pg.f_star
        if fstar.total_degree() * gstar.total_degree() > bezout_cap:
            continue
        for eps_num in (1, -1):
            shifted = gstar + F(eps_num, 65537)
            if has_common_factor(fstar, shifted):
                continue
            try:
                cnt = bezout_common_zeros(fstar, shifted)
            except PolynomialError:
                continue
            bezout_done += 1
            if cnt > fstar.total_degree() * shifted.total_degree():
                bezout_ok = False
    checks.append(BoundCheck(
        "second.harnack_on_pullbacks", "1 + C(deg-1, 2)", "certified lower",
        harnack_ok, f"sampled {min(sphere_sample, n_s)} spheres"))
    checks.append(BoundCheck(
        "second.bezout_on_perturbed_pullbacks", "deg f* * deg g*",
        bezout_done, bezout_ok, f"checks run: {bezout_done} (cap {bezout_cap})"))
    return checks


# ---------------------------------------------------------------------------
# Holder aggregation
# ---------------------------------------------------------------------------


def holder_inequality_brackets(ms, Ds, digits: int = 20):
    """Brackets of both sides of sum(m^(3/5) D^(2/5)) <= (sum m)^(3/5) (sum D)^(2/5)."""
    lhs_lo, lhs_hi = F(0), F(0)
    for mi, di in zip(ms, Ds):
        alo, ahi = pow_brackets(mi, 3, 5, digits)
        blo, bhi = pow_brackets(di, 2, 5, digits)
        lhs_lo += alo * blo
        lhs_hi += ahi * bhi
    slo, shi = pow_brackets(sum(ms), 3, 5, digits)
    tlo, thi = pow_brackets(sum(Ds), 2, 5, digits)
    return (lhs_lo, lhs_hi), (slo * tlo, shi * thi)


def check_holder_aggregate(split: FactorSplit, n: int, second_results=None,
                           digits: int = 20) -> BoundCheck:
    """The Holder step of the final aggregation: a mathematical identity
    that must hold on every input, checked at bracketing precision."""
    ms = [len(idx) for _, idx in split.assignments]
    Ds = [f.total_degree() for f in split.factors]
    (lhs_lo, lhs_hi), (rhs_lo, rhs_hi) = holder_inequality_brackets(ms, Ds, digits)
    violated = lhs_lo > rhs_hi
    n32_lo, _ = pow_brackets(n, 3, 2, digits)
    measured_c = (lhs_hi / n32_lo) if n32_lo else F(0)
    deg_sum = sum(Ds)
    quad_ok = True
    if second_results is not None:
        d_total = max(deg_sum, 1)
        lhs_quad = sum(n * d * d for d in Ds)
        quad_ok = lhs_quad <= n * d_total * deg_sum <= n * d_total * d_total
    return BoundCheck(
        "holder.aggregate",
        f"sum m^(3/5) D^(2/5) <= (sum m)^(3/5) (sum D)^(2/5)",
        f"lhs in [{float(lhs_lo):.6g}, {float(lhs_hi):.6g}], "
        f"rhs in [{float(rhs_lo):.6g}, {float(rhs_hi):.6g}]",
        (not violated) and quad_ok,
        f"measured C vs n^(3/2): {float(measured_c):.4g}; r={len(ms)}")


# ---------------------------------------------------------------------------
# scaling experiment
# ---------------------------------------------------------------------------


def scaling_experiment(generator_name: str, sizes, t_rule=None, config=None):
    """Pipeline counts vs the brute-force oracle across sizes; a mismatch is
    a correctness bug, not a finding."""
    from .generators import generate
    from .pipeline import Config, run_pipeline

    cfg = config or Config()
    rows = []
    for n in sizes:
        start = time.monotonic()
        pts, _meta = generate(generator_name, n, cfg.seed)
        report = run_pipeline(pts, cfg, checks="counts")
        wall = int((time.monotonic() - start) * 1000)
        count = report["oracle_unit_distances"]
        assert report["pipeline_incidences"] == 2 * count, \
            f"pipeline/oracle mismatch at n={n}"
        rows.append(ScalingRow(
            n=n, unit_distances=count,
            ratio_3_2=ratio_to_power(count, n, 3, 2),
            ratio_4_3=ratio_to_power(count, n, 4, 3),
            wall_time_ms=wall))
    return rows
