"""Unit spheres, exact incidence counting, and plane-curve machinery.

Incidence means |p - center|^2 == 1 exactly.  The brute-force pair count is
the oracle every pipeline count is checked against; it runs on integers
(cross-multiplied coordinates) with an x-window prune and no floating point.

Sphere-side analysis pulls surfaces back through the inverse stereographic
parametrization of each sphere, turning sphere/surface intersections into
plane curves.  Connected-component counts of those curves and their
complements come from an adaptive quadtree with exact rational interval
arithmetic: certified lower bounds and optimistic upper estimates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .partition import Point3, PartitionLevel, make_point
from .poly import (
    Poly,
    PolynomialError,
    RationalMap3,
    cauchy_root_bound,
    compose_rational,
    exact_div,
    gcd_bivariate,
    has_common_factor,
    parse_poly,
    resultant_elim,
    square_free,
    sturm_count,
)

F = Fraction
_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass(frozen=True)
class UnitSphere:
    center: Point3

    @classmethod
    def at(cls, x, y, z):
        return cls(make_point(x, y, z))


# ---------------------------------------------------------------------------
# exact incidence counting
# ---------------------------------------------------------------------------


def _int_coords(points):
    """Per-point integer coordinates with a scalar denominator."""
    out = []
    for p in points:
        p = make_point(*p)
        d = lcm(p.x.denominator, p.y.denominator, p.z.denominator)
        out.append((int(p.x * d), int(p.y * d), int(p.z * d), d))
    return out

def brute_force_unit_distances(points) -> int:
    """Oracle: exact count of unordered pairs at distance exactly 1.

    Direct double loop over integer cross-multiplied coordinates; pairs with
    x-difference above 1 are skipped via a sorted window (provably not at
    unit distance), everything else is checked exactly.
    """
    coords = _int_coords(points)
    order = sorted(range(len(coords)), key=lambda i: F(coords[i][0], coords[i][3]))
    count = 0
    for a in range(len(order)):
        xa, ya, za, da = coords[order[a]]
        for b in range(a + 1, len(order)):
            xb, yb, zb, db = coords[order[b]]
            dx = xb * da - xa * db
            if dx > da * db:  # x-gap exceeds 1: all later b too
                break
            dy = yb * da - ya * db
            dz = zb * da - za * db
            dd = da * db
            if dx * dx + dy * dy + dz * dz == dd * dd:
                count += 1
    return count


def _incident_pair(p_coords, c_coords) -> bool:
    xa, ya, za, da = p_coords
    xb, yb, zb, db = c_coords
    dx = xa * db - xb * da
    dy = ya * db - yb * da
    dz = za * db - zb * da
    dd = da * db
    return dx * dx + dy * dy + dz * dz == dd * dd


def incidence_lists(points, spheres):
    """Per sphere, the indices of points exactly on it.

    A vectorized float prefilter proposes candidates with a conservative
    error band; each candidate is confirmed with exact integers, so counts
    are exact.
    """
    pts = [make_point(*p) for p in points]
    if not pts or not spheres:
        return [[] for _ in spheres]
    pc = _int_coords(pts)
    cc = _int_coords([s.center for s in spheres])
    P = np.array([[float(p.x), float(p.y), float(p.z)] for p in pts])
    C = np.array([[float(s.center.x), float(s.center.y), float(s.center.z)]
                  for s in spheres])
    bound = max(float(np.max(np.abs(P))) if P.size else 0.0,
                float(np.max(np.abs(C))) if C.size else 0.0)
    band = 1e-9 * (1.0 + 16.0 * bound * bound)
    out = []
    block = max(1, int(4_000_000 // max(len(pts), 1)))
    for start in range(0, len(spheres), block):
        chunk = C[start:start + block]
        d2 = ((P[None, :, :] - chunk[:, None, :]) ** 2).sum(axis=2)
        cand = np.abs(d2 - 1.0) < band
        for row in range(chunk.shape[0]):
            si = start + row
            hits = [int(i) for i in np.nonzero(cand[row])[0]
                    if _incident_pair(pc[i], cc[si])]
            out.append(hits)
    return out


def incidences(points, spheres) -> int:
    """Exact number of (point, sphere) incident pairs."""
    return sum(len(hits) for hits in incidence_lists(points, spheres))


# ---------------------------------------------------------------------------
# stereographic pullbacks
# ---------------------------------------------------------------------------


def stereographic_map(center) -> RationalMap3:
    """Inverse stereographic parametrization of the unit sphere at center
    (punctured at its north pole); denominator u^2 + v^2 + 1 is positive
    everywhere, so signs of pullback numerators match signs on the sphere."""
    c = make_point(*center)
    q = parse_poly("1 u^2 + 1 v^2 + 1")
    u = Poly.variable(2, 0)
    v = Poly.variable(2, 1)
    nx = q * c.x + 2 * u
    ny = q * c.y + 2 * v
    nz = q * c.z + (q - 2)
    return RationalMap3(numerators=(nx, ny, nz), shared_denominator=q)


@dataclass(frozen=True)
class SpherePullback:
    sphere: UnitSphere
    map: RationalMap3
    f_star: Poly
    is_contained: bool


def pullback_sphere(sigma: UnitSphere, f: Poly) -> SpherePullback:
    """Numerator of f composed with the sphere's parametrization; a zero
    numerator signals that the whole sphere lies inside Z(f)."""
    if f.is_zero():
        raise PolynomialError("pullback of the zero polynomial")
    psi = stereographic_map(sigma.center)
    f_star = compose_rational(f, psi)
    return SpherePullback(sigma, psi, f_star, f_star.is_zero())


def stereographic_preimage(sigma: UnitSphere, point) -> tuple | None:
    """(u, v) with psi(u, v) == point, or None at the north pole."""
    p = make_point(*point)
    c = sigma.center
    denom = 1 - (p.z - c.z)
    if denom == 0:
        return None
    return ((p.x - c.x) / denom, (p.y - c.y) / denom)


# ---------------------------------------------------------------------------
# exact interval arithmetic for bivariate evaluation
# ---------------------------------------------------------------------------


def _imul(a, b):
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(p), max(p))


def _ipow(x, k):
    if k == 0:
        return (_F1, _F1)
    lo, hi = x
    if lo >= 0:
        return (lo**k, hi**k)
    if hi <= 0:
        v1, v2 = lo**k, hi**k
        return (min(v1, v2), max(v1, v2))
    if k % 2 == 1:
        return (lo**k, hi**k)
    return (_F0, max(lo**k, hi**k))


class _HornerForm:
    """Bivariate polynomial prepared for interval Horner evaluation in v
    with inner Horner in u."""

    def __init__(self, poly: Poly):
        if poly.nvars != 2:
            raise PolynomialError("expected a bivariate polynomial")
        self.poly = poly
        self.degree = poly.total_degree()
        by_v = {}
        for (eu, ev), c in poly.terms.items():
            by_v.setdefault(ev, {})[eu] = c
        self.v_degs = sorted(by_v, reverse=True)
        self.u_coeffs = {ev: [cs.get(d, _F0) for d in range(max(cs) + 1)]
                         for ev, cs in by_v.items()}

    def interval(self, ubox, vbox):
        total = (_F0, _F0)
        prev_deg = None
        for ev in self.v_degs:
            if prev_deg is not None:
                step = prev_deg - ev
                total = _imul(total, _ipow(vbox, step))
            cs = self.u_coeffs[ev]
            inner = (cs[-1], cs[-1])
            for c in reversed(cs[:-1]):
                inner = _imul(inner, ubox)
                inner = (inner[0] + c, inner[1] + c)
            total = (total[0] + inner[0], total[1] + inner[1])
            prev_deg = ev
        if prev_deg:
            total = _imul(total, _ipow(vbox, prev_deg))
        return total

    def sign_at(self, u, v) -> int:
        val = self.poly.evaluate((u, v))
        return (val > 0) - (val < 0)


class BivariateSet:
    """One or more bivariate polynomials treated as a product (keeping large
    partition polynomials factored keeps interval evaluation cheap)."""

    def __init__(self, polys):
        polys = [polys] if isinstance(polys, Poly) else list(polys)
        polys = [p for p in polys if not p.is_zero()]
        if not polys:
            raise PolynomialError("empty polynomial set")
        self.forms = [_HornerForm(p) for p in polys]
        self.degree = sum(f.degree for f in self.forms)

    @property
    def polys(self):
        return [f.poly for f in self.forms]

    def interval(self, ubox, vbox):
        total = (_F1, _F1)
        for f in self.forms:
            total = _imul(total, f.interval(ubox, vbox))
        return total

    def sign_at(self, u, v) -> int:
        sign = 1
        for f in self.forms:
            s = f.sign_at(u, v)
            if s == 0:
                return 0
            sign *= s
        return sign


def _axis_root_bound(poly: Poly) -> Fraction:
    """Cauchy bound of the u- and v-axis restrictions (0 when a restriction
    vanishes identically)."""
    best = _F0
    for var in (0, 1):
        terms = {}
        for e, c in poly.terms.items():
            if e[1 - var] == 0:
                terms[(e[var],)] = c
        restr = Poly(1, terms)
        if not restr.is_zero() and not restr.is_constant():
            b = cauchy_root_bound(restr)
            if b > best:
                best = b
    return best


def _circle_samples(radius: Fraction, count: int):
    """Rational points near the circle of the given radius (tangent-half
    parametrization, exact)."""
    pts = []
    for i in range(count):
        t = F(2 * i + 1, count) - 1  # spread t in (-1, 1)
        q = 1 + t * t
        pts.append((radius * (1 - t * t) / q, radius * 2 * t / q))
        pts.append((-radius * (1 - t * t) / q, -radius * 2 * t / q))
    return pts


def choose_box_radius(curve: BivariateSet, max_doublings: int = 3) -> Fraction:
    """1 + axis root bounds, doubled until the sampled ray signs stabilize
    between radius R and 2R."""
    r = _F1
    for f in curve.forms:
        b = _axis_root_bound(f.poly)
        if b > r - 1:
            r = 1 + b
    samples = max(8 * curve.degree, 8)
    for _ in range(max_doublings):
        stable = True
        for (u, v) in _circle_samples(r, samples):
            s1 = curve.sign_at(u, v)
            s2 = curve.sign_at(2 * u, 2 * v)
            if s1 == 0 or s2 == 0 or s1 != s2:
                stable = False
                break
        if stable:
            break
        r *= 2
    return r


# ---------------------------------------------------------------------------
# quadtree component counting
# ---------------------------------------------------------------------------


@dataclass
class ComponentCount:
    certified_lower: int
    heuristic_upper: int
    subdivision_depth: int
    box_radius: Fraction
    conclusive: bool = True


class _Leaf:
    __slots__ = ("ix", "iy", "span", "sign")

    def __init__(self, ix, iy, span, sign):
        self.ix = ix      # finest-grid coordinates of the lower corner
        self.iy = iy
        self.span = span  # side length in finest-grid units
        self.sign = sign  # +1 / -1 certified, 0 unresolved


def _subdivide(curve: BivariateSet, radius: Fraction, max_depth: int):
    """Adaptive quadtree over [-R, R]^2; leaves certified sign-definite by
    interval evaluation, or unresolved at max depth."""
    side = 2 * radius
    finest = 1 << max_depth
    leaves = []
    stack = [(0, 0, 0)]  # (ix, iy, depth) with grid 2^depth
    while stack:
        ix, iy, depth = stack.pop()
        cells = 1 << depth
        w = side / cells
        ubox = (-radius + ix * w, -radius + (ix + 1) * w)
        vbox = (-radius + iy * w, -radius + (iy + 1) * w)
        lo, hi = curve.interval(ubox, vbox)
        span = finest >> depth
        if lo > 0:
            leaves.append(_Leaf(ix * span, iy * span, span, 1))
        elif hi < 0:
            leaves.append(_Leaf(ix * span, iy * span, span, -1))
        elif depth >= max_depth:
            leaves.append(_Leaf(ix * span, iy * span, span, 0))
        else:
            for dx in (0, 1):
                for dy in (0, 1):
                    stack.append((2 * ix + dx, 2 * iy + dy, depth + 1))
    return leaves


def _touching(a: _Leaf, b: _Leaf) -> bool:
    # closed boxes share at least a point (edge or corner)
    ax0, ax1 = a.ix, a.ix + a.span
    ay0, ay1 = a.iy, a.iy + a.span
    bx0, bx1 = b.ix, b.ix + b.span
    by0, by1 = b.iy, b.iy + b.span
    return ax0 <= bx1 and bx0 <= ax1 and ay0 <= by1 and by0 <= ay1


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _neighbor_pairs(leaves):
    """Pairs of touching leaves via a sweep over the x-extent."""
    order = sorted(range(len(leaves)), key=lambda i: leaves[i].ix)
    pairs = []
    active = []
    for i in order:
        li = leaves[i]
        active = [j for j in active if leaves[j].ix + leaves[j].span >= li.ix]
        for j in active:
            if _touching(li, leaves[j]):
                pairs.append((i, j))
        active.append(i)
    return pairs


def count_plane_complement_components(f_star, box_radius=None,
                                      max_depth: int = 7) -> ComponentCount:
    """Components of the plane minus the zero set: union-find over
    sign-certified leaves (touching leaves of equal sign are connected even
    through corners), with one virtual outside node per sign so regions
    meeting the boundary merge with their unbounded continuation."""
    curve = f_star if isinstance(f_star, BivariateSet) else BivariateSet(f_star)
    radius = Fraction(box_radius) if box_radius is not None else choose_box_radius(curve)
    leaves = _subdivide(curve, radius, max_depth)
    certified = [i for i, l in enumerate(leaves) if l.sign != 0]
    if not certified:
        return ComponentCount(0, 0, max_depth, radius, conclusive=False)

    finest = 1 << max_depth
    uf = _UnionFind(len(leaves) + 2)  # two extra: outside(+), outside(-)
    out_pos, out_neg = len(leaves), len(leaves) + 1
    for i, j in _neighbor_pairs(leaves):
        if leaves[i].sign != 0 and leaves[i].sign == leaves[j].sign:
            uf.union(i, j)
    for i in certified:
        l = leaves[i]
        if l.ix == 0 or l.iy == 0 or l.ix + l.span == finest or l.iy + l.span == finest:
            uf.union(i, out_pos if l.sign > 0 else out_neg)
    classes = {uf.find(i) for i in certified}
    lower = len(classes)

    unresolved = [i for i, l in enumerate(leaves) if l.sign == 0]
    uf2 = _UnionFind(len(leaves))
    for i, j in _neighbor_pairs([leaves[i] for i in unresolved]):
        uf2.union(unresolved[i], unresolved[j])
    extra = len({uf2.find(i) for i in unresolved})
    return ComponentCount(lower, lower + extra, max_depth, radius)


def count_curve_components(f_star, box_radius=None,
                           max_depth: int = 7) -> ComponentCount:
    """Components of the zero set: clusters of unresolved leaves cover the
    curve; a cluster counts toward the certified lower bound only when an
    exact sign change proves it contains a zero, and all boundary-touching
    clusters merge into one (sound when arcs rejoin outside the box)."""
    if isinstance(f_star, BivariateSet):
        curve = BivariateSet([square_free(p) for p in f_star.polys])
    else:
        if f_star.is_zero():
            raise PolynomialError("zero polynomial has no curve")
        if f_star.is_constant():
            return ComponentCount(0, 0, 0, _F1)
        curve = BivariateSet(square_free(f_star))
    radius = Fraction(box_radius) if box_radius is not None else choose_box_radius(curve)
    leaves = _subdivide(curve, radius, max_depth)
    unresolved = [i for i, l in enumerate(leaves) if l.sign == 0]
    if not unresolved:
        return ComponentCount(0, 0, max_depth, radius)

    finest = 1 << max_depth
    side = 2 * radius
    sub = [leaves[i] for i in unresolved]
    uf = _UnionFind(len(sub) + 1)
    boundary_node = len(sub)
    for i, j in _neighbor_pairs(sub):
        uf.union(i, j)
    for i, l in enumerate(sub):
        if l.ix == 0 or l.iy == 0 or l.ix + l.span == finest or l.iy + l.span == finest:
            uf.union(i, boundary_node)

    def corner(ik):
        return -radius + side * ik / finest

    certified_roots = set()
    cluster_roots = set()
    for i, l in enumerate(sub):
        root = uf.find(i)
        cluster_roots.add(root)
        if root in certified_roots:
            continue
        signs = [curve.sign_at(corner(l.ix + dx * l.span), corner(l.iy + dy * l.span))
                 for dx in (0, 1) for dy in (0, 1)]
        nonzero = [s for s in signs if s]
        if 0 in signs or (1 in nonzero and -1 in nonzero):
            certified_roots.add(root)
    lower = len(certified_roots)
    upper = max(len(cluster_roots), lower)
    return ComponentCount(lower, upper, max_depth, radius)


# ---------------------------------------------------------------------------
# sphere-cell crossings
# ---------------------------------------------------------------------------


def sphere_cells_crossed(sigma: UnitSphere, level: PartitionLevel, points,
                         incident=None, grid: int = 33):
    """(effective, geometric_estimate): cells holding a point incident to
    the sphere (exact), and certified-realized sign vectors of the bisector
    pullbacks on the sphere (every vector exact-verified, so the estimate is
    a true lower bound on the crossing count and always >= effective)."""
    pts = [make_point(*p) for p in points]
    if incident is None:
        incident = incidence_lists(pts, [sigma])[0]
    cell_of = {}
    for sig, idx in level.cells.items():
        for i in idx:
            cell_of[i] = sig

    effective_sigs = {cell_of[i] for i in incident if i in cell_of}
    effective = len(effective_sigs)

    pullbacks = []
    contained = False
    for b in level.bisectors:
        pb = compose_rational(b, stereographic_map(sigma.center))
        if pb.is_zero():
            contained = True
            break
        pullbacks.append(pb)
    if contained or not pullbacks:
        return effective, max(effective, 1 if not contained else 0)

    forms = [_HornerForm(p) for p in pullbacks]
    radius = choose_box_radius(BivariateSet(pullbacks))

    # float sampling proposes candidate sign vectors
    coef_mats = []
    for p in pullbacks:
        du = p.degree_in(0)
        dv = p.degree_in(1)
        m = np.zeros((du + 1, dv + 1))
        for (eu, ev), c in p.terms.items():
            m[eu, ev] = float(c)
        coef_mats.append(m)
    rf = float(radius)
    us = np.linspace(-rf, rf, grid)
    vs = np.linspace(-rf, rf, grid)
    reps = {}
    vals = []
    for m in coef_mats:
        pu = np.vander(us, m.shape[0], increasing=True)
        pv = np.vander(vs, m.shape[1], increasing=True)
        vals.append(pu @ m @ pv.T)
    scale = [max(float(np.max(np.abs(v))), 1e-30) for v in vals]
    for i in range(grid):
        for j in range(grid):
            vec = []
            ok = True
            for v, sc in zip(vals, scale):
                x = v[i, j]
                if abs(x) < 1e-9 * sc:
                    ok = False
                    break
                vec.append(1 if x > 0 else -1)
            if ok:
                key = tuple(vec)
                if key not in reps:
                    # exact rational grid coordinates
                    u = -radius + 2 * radius * F(i, grid - 1)
                    v = -radius + 2 * radius * F(j, grid - 1)
                    reps[key] = (u, v)

    realized = set()
    for key, (u, v) in reps.items():
        exact_vec = tuple(f.sign_at(u, v) for f in forms)
        if 0 not in exact_vec:
            realized.add(exact_vec)

    # incident points contribute their own (exact) sign vectors
    for i in incident:
        if i not in cell_of:
            continue
        uv = stereographic_preimage(sigma, pts[i])
        if uv is None:
            continue
        exact_vec = tuple(f.sign_at(uv[0], uv[1]) for f in forms)
        if 0 not in exact_vec:
            realized.add(exact_vec)

    return effective, max(len(realized), effective)


# ---------------------------------------------------------------------------
# certified common-zero counting
# ---------------------------------------------------------------------------


def _univariate_in(poly: Poly, var: int) -> Poly:
    terms = {}
    for e, c in poly.terms.items():
        if e[1 - var] != 0:
            raise PolynomialError("not univariate in the requested variable")
        terms[(e[var],)] = c
    return Poly(1, terms)


def _isolated_root_intervals(p1: Poly, cap: int = 400):
    """Disjoint rational intervals each holding exactly one real root of the
    square-free univariate polynomial."""
    bound = cauchy_root_bound(p1) + 1
    total = sturm_count(p1, -bound, bound)
    out = []
    stack = [(-bound, bound, total)]
    guard = 0
    while stack:
        lo, hi, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            out.append((lo, hi))
            continue
        guard += 1
        if guard > cap:
            raise PolynomialError("root isolation did not converge")
        mid = (lo + hi) / 2
        while p1.evaluate((mid,)) == 0:
            mid += (hi - lo) / 64
        left = sturm_count(p1, lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, cnt - left))
    return out


def _refine_interval(p1: Poly, lo, hi):
    """Halve an isolating interval (keeping the sign change)."""
    flo = p1.evaluate((lo,))
    mid = (lo + hi) / 2
    fmid = p1.evaluate((mid,))
    if fmid == 0:
        quarter = (hi - lo) / 4
        return mid - quarter, mid + quarter
    if flo * fmid < 0:
        return lo, mid
    return mid, hi


def _interval_newton_status(f: _HornerForm, g: _HornerForm, dfs, box):
    """Interval Newton test on the 2x2 system: 'contains' when the Newton
    image lands strictly inside the box (unique zero certified), 'excluded'
    when either function is sign-definite or the image misses the box."""
    ubox, vbox = box
    fi = f.interval(ubox, vbox)
    gi = g.interval(ubox, vbox)
    if fi[0] > 0 or fi[1] < 0 or gi[0] > 0 or gi[1] < 0:
        return "excluded"
    (fu, fv), (gu, gv) = dfs
    j11 = fu.interval(ubox, vbox)
    j12 = fv.interval(ubox, vbox)
    j21 = gu.interval(ubox, vbox)
    j22 = gv.interval(ubox, vbox)
    det = (
        min(j11[0] * j22[0], j11[0] * j22[1], j11[1] * j22[0], j11[1] * j22[1])
        - max(j12[0] * j21[0], j12[0] * j21[1], j12[1] * j21[0], j12[1] * j21[1]),
        max(j11[0] * j22[0], j11[0] * j22[1], j11[1] * j22[0], j11[1] * j22[1])
        - min(j12[0] * j21[0], j12[0] * j21[1], j12[1] * j21[0], j12[1] * j21[1]),
    )
    if det[0] <= 0 <= det[1]:
        return "unknown"
    mu = (ubox[0] + ubox[1]) / 2
    mv = (vbox[0] + vbox[1]) / 2
    fm = f.poly.evaluate((mu, mv))
    gm = g.poly.evaluate((mu, mv))
    # N = m - J^{-1} F(m), all in interval arithmetic
    inv_det = (min(_F1 / det[0], _F1 / det[1]), max(_F1 / det[0], _F1 / det[1]))
    sol_u = _imul(inv_det, (
        min(j22[0] * fm, j22[1] * fm) - max(j12[0] * gm, j12[1] * gm),
        max(j22[0] * fm, j22[1] * fm) - min(j12[0] * gm, j12[1] * gm)))
    sol_v = _imul(inv_det, (
        min(j11[0] * gm, j11[1] * gm) - max(j21[0] * fm, j21[1] * fm),
        max(j11[0] * gm, j11[1] * gm) - min(j21[0] * fm, j21[1] * fm)))
    nu = (mu - sol_u[1], mu - sol_u[0])
    nv = (mv - sol_v[1], mv - sol_v[0])
    if nu[1] < ubox[0] or nu[0] > ubox[1] or nv[1] < vbox[0] or nv[0] > vbox[1]:
        return "excluded"
    if ubox[0] < nu[0] and nu[1] < ubox[1] and vbox[0] < nv[0] and nv[1] < vbox[1]:
        return "contains"
    return "unknown"


def bezout_common_zeros(f_star: Poly, g_star: Poly, max_refine: int = 60) -> int:
    """Exact count of distinct real common zeros of two co-prime bivariate
    polynomials.

    Elimination both ways isolates candidate boxes (u from the v-resultant,
    v from the u-resultant), then interval Newton certifies or excludes each
    box, refining the isolating intervals as needed.
    """
    if f_star.is_zero() or g_star.is_zero():
        raise PolynomialError("common zeros of a zero polynomial")
    if has_common_factor(f_star, g_star):
        raise PolynomialError("polynomials share a factor; split it off first")

    def resultant_roots(var):
        r = resultant_elim(f_star, g_star, var)
        if r.is_zero():
            raise PolynomialError("unexpected zero resultant for co-prime inputs")
        if r.is_constant():
            return [], None
        r1 = _univariate_in(square_free(r), 1 - var)
        return _isolated_root_intervals(r1), r1

    u_ivs, ru = resultant_roots(1)  # eliminate v -> roots in u
    v_ivs, rv = resultant_roots(0)  # eliminate u -> roots in v
    if not u_ivs or not v_ivs:
        return 0

    f_form = _HornerForm(f_star)
    g_form = _HornerForm(g_star)
    dfs = ((_HornerForm(f_star.partial(0)), _HornerForm(f_star.partial(1))),
           (_HornerForm(g_star.partial(0)), _HornerForm(g_star.partial(1))))

    count = 0
    for iu in range(len(u_ivs)):
        for iv in range(len(v_ivs)):
            ubox = u_ivs[iu]
            vbox = v_ivs[iv]
            status = "unknown"
            for _ in range(max_refine):
                status = _interval_newton_status(f_form, g_form, dfs, (ubox, vbox))
                if status != "unknown":
                    break
                ubox = _refine_interval(ru, *ubox)
                vbox = _refine_interval(rv, *vbox)
            if status == "contains":
                count += 1
            elif status == "unknown":
                raise PolynomialError(
                    "interval Newton failed to decide a candidate box "
                    "(tangential intersection?)")
    assert count <= f_star.total_degree() * g_star.total_degree()
    return count


# ---------------------------------------------------------------------------
# gcd split of pullbacks
# ---------------------------------------------------------------------------


def h_star_split(sigma: UnitSphere, f: Poly, g: Poly):
    """gcd of the two pullback numerators and its cofactors; a vanishing
    pullback signals that the sphere lies inside the corresponding surface
    and must be handled by the caller."""
    pf = pullback_sphere(sigma, f)
    pg = pullback_sphere(sigma, g)
    if pf.is_contained or pg.is_contained:
        raise PolynomialError("sphere contained in a zero set; no gcd split")
    h = gcd_bivariate(pf.f_star, pg.f_star)
    f1 = exact_div(pf.f_star, h)
    g1 = exact_div(pg.f_star, h)
    assert f1 is not None and g1 is not None
    return h, f1, g1
