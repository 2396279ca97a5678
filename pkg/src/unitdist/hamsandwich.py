"""Bisecting polynomials via lifted point sets and simultaneous halving.

A monomial basis lifts point sets from R^3 into a higher-dimensional space
where a single hyperplane sign-splits every set at once; composing the
hyperplane with the lift gives a low-degree bisecting polynomial.

A hyperplane "bisects" a set in the ceiling convention: at most ceil(|U|/2)
points strictly on each side (points on the hyperplane count for neither).
Certificates always come from exact rational sign evaluation; the search for
a good hyperplane runs in floating point, but nothing is accepted without an
exact certificate.

Two strategies:

  exact      first-found enumeration of hyperplanes through one point per
             set (axis-completed when there are fewer sets than dimensions),
             budget-gated; beyond the budget a certified search runs and
             only a slack-0 certificate is accepted.
  heuristic  certified search accepting any certificate with slack <= eps.

The certified search minimizes the "window gap": for a fixed normal, each
set constrains the admissible threshold to lie between two order statistics
of the projected values; a common threshold exists iff those intervals
intersect.  Polyak-stepped subgradient descent with a cap-relaxation
homotopy does the bulk of the work; a pivot-assignment linear program
(one point per set pinned near the plane, the rest split with margin)
finishes the hard, nearly-degenerate instances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

try:
    from scipy.optimize import linprog as _linprog
except Exception:  # pragma: no cover
    _linprog = None

from . import rng as rngmod
from ._linalg import nullspace_vector
from .poly import Poly, divides

_F0 = Fraction(0)


class BisectionError(RuntimeError):
    """Raised when no acceptable hyperplane was found; carries best slack."""

    def __init__(self, message, achieved_slack=None):
        super().__init__(message)
        self.achieved_slack = achieved_slack


# ---------------------------------------------------------------------------
# monomial bases
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialBasis:
    """Ordered nonconstant trivariate monomials, lowest degree first."""

    monomials: tuple
    max_degree: int

    def __len__(self):
        return len(self.monomials)


def _basis_key(e):
    return (sum(e), tuple(-x for x in e))  # degree ascending, lex-descending


def full_basis(degree: int) -> MonomialBasis:
    """All nonconstant trivariate monomials of total degree <= degree."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    mons = [
        (i, j, k)
        for i in range(degree + 1)
        for j in range(degree + 1)
        for k in range(degree + 1)
        if 0 < i + j + k <= degree
    ]
    mons.sort(key=_basis_key)
    assert len(mons) == comb(degree + 3, 3) - 1
    return MonomialBasis(tuple(mons), degree)


def restricted_basis(leading, s: int, D: int) -> MonomialBasis:
    """Monomials spanning only polynomials not divisible by a polynomial
    with the given graded-lex leading exponent and total degree D.

    Small targets use the cube {i,j,k <= ceil(s^(1/3))}; otherwise all
    monomials with i'<i or j'<j or k'<k capped at the minimal box bound
    that yields at least s members.
    """
    if s < 1:
        raise ValueError("need s >= 1")
    i, j, k = leading
    if i + j + k == 0:
        raise ValueError("leading exponent must have positive degree")
    if D != i + j + k:
        raise ValueError("leading exponent degree does not match D")
    if 27 * s <= D**3:
        c = 1
        while c**3 < s:
            c += 1
        mons = [
            (a, b, d)
            for a in range(c + 1)
            for b in range(c + 1)
            for d in range(c + 1)
            if a + b + d > 0
        ]
        mons.sort(key=_basis_key)
        return MonomialBasis(tuple(mons), 3 * c)
    cap = 1
    while True:
        mons = [
            (a, b, d)
            for a in range(cap + 1)
            for b in range(cap + 1)
            for d in range(cap + 1)
            if (a < i or b < j or d < k) and a + b + d > 0
        ]
        if len(mons) >= s:
            break
        cap += 1
    mons.sort(key=_basis_key)
    return MonomialBasis(tuple(mons), 3 * cap)


# ---------------------------------------------------------------------------
# hyperplanes and certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hyperplane:
    """Affine functional h(p) = sum(c_i p_i) + c_last."""

    coefficients: tuple

    @property
    def dim(self):
        return len(self.coefficients) - 1

    def value(self, point) -> Fraction:
        cs = self.coefficients
        total = Fraction(cs[-1])
        for c, x in zip(cs, point):
            if c:
                total += c * x
        return total


@dataclass(frozen=True)
class SetBalance:
    pos: int
    neg: int
    on: int


@dataclass(frozen=True)
class BisectionCertificate:
    balances: tuple
    slack: Fraction

    @property
    def max_side(self):
        return max((max(b.pos, b.neg) for b in self.balances), default=0)


def _ceil_half(m: int) -> int:
    return (m + 1) // 2


def certificate_from_values(values_per_set) -> BisectionCertificate:
    """Exact certificate from per-point hyperplane values, grouped by set."""
    balances = []
    slack = _F0
    for values in values_per_set:
        pos = sum(1 for v in values if v > 0)
        neg = sum(1 for v in values if v < 0)
        on = len(values) - pos - neg
        balances.append(SetBalance(pos, neg, on))
        m = len(values)
        if m:
            c = _ceil_half(m)
            s = Fraction(max(pos, neg), c) - 1
            if s > slack:
                slack = s
    return BisectionCertificate(tuple(balances), max(slack, _F0))


def certify(hyperplane: Hyperplane, lifted_sets) -> BisectionCertificate:
    """Recompute a certificate by exact sign evaluation."""
    values = [[hyperplane.value(p) for p in s] for s in lifted_sets]
    return certificate_from_values(values)


# ---------------------------------------------------------------------------
# lifted views: eager float matrix, lazy exact columns
# ---------------------------------------------------------------------------


def lift_points(points, monomials):
    """Evaluate each monomial at each point (the Veronese-style lift)."""
    maxe = [0] * (len(points[0]) if points else 3)
    for e in monomials:
        for i, d in enumerate(e):
            if d > maxe[i]:
                maxe[i] = d
    out = []
    for point in points:
        pows = []
        for c, top in zip(point, maxe):
            c = Fraction(c)
            row = [Fraction(1)]
            for _ in range(top):
                row.append(row[-1] * c)
            pows.append(row)
        out.append(tuple(pows[0][e[0]] * pows[1][e[1]] * pows[2][e[2]]
                         for e in monomials))
    return out


class _LiftedView:
    """Per-set lifted coordinates: float rows eagerly, exact rows on demand."""

    def __init__(self, sets_exact_rows=None, sets_3d=None, monomials=None):
        if sets_exact_rows is not None:
            self._direct = [[tuple(Fraction(x) for x in p) for p in s]
                            for s in sets_exact_rows]
            self.dims = len(self._direct[0][0]) if any(self._direct) else 1
            for s in self._direct:
                for p in s:
                    if len(p) != self.dims:
                        raise ValueError("lifted points have mixed dimensions")
            self.sets_3d = None
            self.monomials = None
        else:
            self._direct = None
            self.sets_3d = [[tuple(Fraction(x) for x in p) for p in s]
                            for s in sets_3d]
            self.monomials = tuple(monomials)
            self.dims = len(self.monomials)
        self._exact_upto = 0
        self._exact = [[] for _ in range(self.n_sets)]

    @property
    def n_sets(self):
        return len(self._direct if self._direct is not None else self.sets_3d)

    def sizes(self):
        src = self._direct if self._direct is not None else self.sets_3d
        return [len(s) for s in src]

    def float_matrix(self):
        """(total_points, dims) float array, rows grouped by set."""
        if self._direct is not None:
            rows = [[float(x) for x in p] for s in self._direct for p in s]
            return np.array(rows, dtype=float) if rows else np.zeros((0, self.dims))
        rows = []
        for s in self.sets_3d:
            if not s:
                continue
            coords = np.array([[float(x) for x in p] for p in s], dtype=float)
            maxd = [max((e[i] for e in self.monomials), default=0) for i in range(3)]
            pows = [np.vander(coords[:, i], maxd[i] + 1, increasing=True)
                    for i in range(3)]
            cols = [pows[0][:, e[0]] * pows[1][:, e[1]] * pows[2][:, e[2]]
                    for e in self.monomials]
            rows.append(np.stack(cols, axis=1))
        if not rows:
            return np.zeros((0, self.dims))
        return np.vstack(rows)

    def exact_rows(self, upto: int):
        """Exact lifted coordinates restricted to the first `upto` columns."""
        if self._direct is not None:
            return [[p[:upto] for p in s] for s in self._direct]
        if upto > self._exact_upto:
            fresh = self.monomials[self._exact_upto:upto]
            for si, s in enumerate(self.sets_3d):
                if not s:
                    continue
                more = lift_points(s, fresh)
                if self._exact_upto == 0:
                    self._exact[si] = [tuple(r) for r in more]
                else:
                    self._exact[si] = [old + tuple(r) for old, r
                                       in zip(self._exact[si], more)]
            self._exact_upto = upto
        return [[p[:upto] for p in s] for s in self._exact]


# ---------------------------------------------------------------------------
# float search machinery
# ---------------------------------------------------------------------------


class _SearchSpace:
    """Float mirror with power-of-two column scaling (exactly invertible).

    Sets of equal size are bucketed so that per-iteration order statistics
    run as a handful of vectorized sorts instead of a Python loop."""

    def __init__(self, view: _LiftedView):
        arr = view.float_matrix()
        self.dims = view.dims
        scale_exp = []
        for j in range(arr.shape[1] if arr.size else self.dims):
            m = float(np.max(np.abs(arr[:, j]))) if len(arr) else 0.0
            scale_exp.append(int(np.floor(np.log2(m))) if m > 0 else 0)
        while len(scale_exp) < self.dims:
            scale_exp.append(0)
        self.scale_exp = scale_exp
        self.scaled = arr / np.exp2(scale_exp[: arr.shape[1]]) if arr.size else arr
        self.offsets = []
        start = 0
        for size in view.sizes():
            self.offsets.append((start, start + size))
            start += size
        groups = {}
        for si, (a, b) in enumerate(self.offsets):
            if b > a:
                groups.setdefault(b - a, []).append(si)
        self.buckets = []
        for m, sis in sorted(groups.items()):
            rowidx = np.array([np.arange(self.offsets[si][0], self.offsets[si][1])
                               for si in sis])
            self.buckets.append((m, np.array(sis), rowidx))

    def unscale_prefix(self, n_scaled_rational, use):
        return [c / (Fraction(2) ** e)
                for c, e in zip(n_scaled_rational, self.scale_exp[:use])]


def _float_gap(space, caps, n, use):
    """Window gap for a float normal over the first `use` columns; negative
    means a common threshold exists with margin.  Returns (gap, grad)."""
    vals = space.scaled[:, :use] @ n
    lo_best, hi_best = -np.inf, np.inf
    lo_row = hi_row = None
    for m, sis, rowidx in space.buckets:
        V = vals[rowidx]                       # (sets_in_bucket, m)
        order = np.argsort(V, axis=1, kind="stable")
        caps_arr = np.array([caps[si] for si in sis])
        rows = np.arange(len(sis))
        li = m - caps_arr - 1
        mask = li >= 0
        if mask.any():
            cols = order[rows[mask], li[mask]]
            lo_vals = V[rows[mask], cols]
            i = int(np.argmax(lo_vals))
            if lo_vals[i] > lo_best:
                lo_best = lo_vals[i]
                lo_row = rowidx[rows[mask][i], cols[i]]
        mask = caps_arr < m
        if mask.any():
            cols = order[rows[mask], caps_arr[mask]]
            hi_vals = V[rows[mask], cols]
            i = int(np.argmin(hi_vals))
            if hi_vals[i] < hi_best:
                hi_best = hi_vals[i]
                hi_row = rowidx[rows[mask][i], cols[i]]
    if lo_row is None or hi_row is None:
        return -np.inf, None
    gap = lo_best - hi_best
    grad = space.scaled[lo_row, :use] - space.scaled[hi_row, :use]
    return gap, grad


def _polyak_descend(space, caps, n0, scale, iters, use):
    """Drive the window gap below a margin with Polyak-stepped subgradient
    descent; the margin decays when progress stalls."""
    n = n0.copy()
    delta = 1e-3 * scale
    floor = 1e-10 * scale
    best_gap = np.inf
    best_n = n.copy()
    stall = 0
    for _t in range(iters):
        gap, grad = _float_gap(space, caps, n, use)
        if gap < best_gap - 1e-15 * scale:
            best_gap, best_n, stall = gap, n.copy(), 0
        else:
            stall += 1
        if gap <= -delta:
            return n, gap
        if grad is None:
            return n, -np.inf
        g2 = float(grad @ grad)
        if g2 < 1e-24:
            break
        n = n - ((gap + delta) / g2) * grad
        norm = np.linalg.norm(n)
        if norm < 1e-12:
            break
        n /= norm
        if stall > 150:
            delta /= 6
            stall = 0
            if delta < floor:
                break
    return best_n, best_gap


def _pivot_lp(space, caps, n_warm, use, rng, iters=6):
    """Pivot-assignment LP endgame: pin one point per set near the plane,
    split the rest with maximal margin; alternate assignment and solve.
    Returns a float normal with positive margin, or None."""
    if _linprog is None:
        return None
    sub = space.scaled[:, :use]
    scale = float(np.median(np.abs(sub).sum(axis=1))) if len(sub) else 1.0
    scale = scale or 1.0
    nv = n_warm.copy()
    ref = n_warm / max(np.linalg.norm(n_warm), 1e-12)
    for _it in range(iters):
        rows_below, rows_above, pivots = [], [], []
        for (a, b) in space.offsets:
            m = b - a
            if m == 0:
                continue
            v = sub[a:b] @ nv
            order = np.argsort(v, kind="stable")
            if m == 1:
                continue
            piv = order[(m - 1) // 2]
            pivots.append(a + piv)
            others = [x for x in order if x != piv]
            half = (m - 1) // 2
            rows_below.extend((a + np.asarray(others[:half], dtype=int)).tolist())
            rows_above.extend((a + np.asarray(others[half:], dtype=int)).tolist())
        nb, na = len(rows_below), len(rows_above)
        total = nb + na
        if total == 0:
            return nv
        A = np.zeros((total, use + 2))
        if nb:
            A[:nb, :use] = sub[rows_below]
            A[:nb, use] = -1.0
        if na:
            A[nb:, :use] = -sub[rows_above]
            A[nb:, use] = 1.0
        A[:, use + 1] = 1.0
        bub = np.zeros(total)
        A_eq = np.zeros((len(pivots) + 1, use + 2))
        if pivots:
            A_eq[: len(pivots), :use] = sub[pivots]
            A_eq[: len(pivots), use] = -1.0
        A_eq[len(pivots), :use] = ref
        b_eq = np.zeros(len(pivots) + 1)
        b_eq[-1] = 1.0
        cvec = np.zeros(use + 2)
        cvec[use + 1] = -1.0
        B = 64.0 * use
        bounds = [(-B, B)] * use + [(-B * B, B * B), (0, None)]
        res = _linprog(cvec, A_ub=A, b_ub=bub, A_eq=A_eq, b_eq=b_eq,
                       bounds=bounds, method="highs")
        if res.success:
            margin = res.x[use + 1]
            cand = res.x[:use]
            norm = max(np.linalg.norm(cand), 1e-12)
            if margin > 1e-7 * scale * norm:
                return cand / norm
            nv = cand + 0.01 * norm * rng.standard_normal(use)
        else:
            nv = nv + 0.05 * max(np.linalg.norm(nv), 1e-9) * rng.standard_normal(use)
    return None


def _search_hyperplane(space, caps, seed, restarts=4, iters=2200):
    """Yield (use, normal, rel_gap) float candidates whose per-set windows
    (nearly) intersect.  Homotopy over relaxed caps, Polyak descent, then a
    pivot-LP endgame on stall."""
    k = len(caps)
    dims = space.dims
    base_use = min(dims, max(k, 1))
    rng = np.random.default_rng(rngmod.stream_seed(seed, "hamsandwich-search"))
    use_sched = [base_use] + [dims] * max(restarts - 1, 1)
    for restart in range(restarts):
        use = use_sched[min(restart, len(use_sched) - 1)]
        sub = space.scaled[:, :use]
        scale = float(np.median(np.abs(sub).sum(axis=1))) if len(sub) else 1.0
        scale = scale or 1.0
        if restart == 0:
            n = np.zeros(use)
            n[0] = 1.0
        else:
            n = rng.standard_normal(use)
            n /= max(np.linalg.norm(n), 1e-12)
        gap = np.inf
        for extra in (1, 0):
            relaxed = [c + extra for c in caps]
            n, gap = _polyak_descend(space, relaxed, n, scale, iters, use)
        if gap == -np.inf or gap <= -1e-10 * scale:
            yield use, list(n), (gap / scale if gap != -np.inf else -1.0)
            continue
        if gap < 0.02 * scale:
            cand = _pivot_lp(space, caps, n, use, rng)
            if cand is not None:
                lp_gap, _ = _float_gap(space, caps, np.asarray(cand), use)
                yield use, list(cand), lp_gap / scale
                continue
        if gap < 0.05 * scale:
            yield use, list(n), gap / scale  # near-miss for relaxed callers


# ---------------------------------------------------------------------------
# exact threshold selection and strategy driver
# ---------------------------------------------------------------------------


def _exact_values(normal, sets_rows):
    out = []
    for s in sets_rows:
        vals = []
        for p in s:
            t = _F0
            for c, x in zip(normal, p):
                if c:
                    t += c * x
            vals.append(t)
        out.append(vals)
    return out


def _window(sorted_vals, cap):
    m = len(sorted_vals)
    lo = sorted_vals[m - cap - 1] if m - cap - 1 >= 0 else None
    hi = sorted_vals[cap] if cap < m else None
    return lo, hi


def _threshold_from_windows(values_per_set, caps):
    """Intersect per-set admissible threshold intervals; rational threshold
    or None when the intervals are disjoint."""
    lo_best, hi_best = None, None
    for vals, cap in zip(values_per_set, caps):
        if not vals:
            continue
        sv = sorted(vals)
        lo, hi = _window(sv, cap)
        if lo is not None and (lo_best is None or lo > lo_best):
            lo_best = lo
        if hi is not None and (hi_best is None or hi < hi_best):
            hi_best = hi
    if lo_best is None and hi_best is None:
        return _F0
    if lo_best is None:
        return hi_best - 1
    if hi_best is None:
        return lo_best + 1
    if lo_best > hi_best:
        return None
    return (lo_best + hi_best) / 2


def _enumerate_pivot_planes(view: _LiftedView, budget):
    """Lazily yield exact hyperplanes through one point per set, normal
    supported on the first k coordinates (k = number of sets)."""
    k = view.n_sets
    rows = view.exact_rows(min(k, view.dims))
    distinct = []
    for s in rows:
        seen = {}
        for p in s:
            seen.setdefault(tuple(p), None)
        distinct.append(list(seen))
    total = 1
    for d in distinct:
        total *= max(len(d), 1)
        if total > budget:
            return
    for combo in itertools.product(*[d or [None] for d in distinct]):
        pts = [p for p in combo if p is not None]
        if not pts:
            continue
        sys_rows = [[Fraction(x) for x in p] + [Fraction(1)] for p in pts]
        v = nullspace_vector(sys_rows)
        if v is None or all(x == 0 for x in v):
            continue
        yield v  # normal over first min(k, dims) coords, offset last


def _rationalize(vec, max_den):
    return [Fraction(float(x)).limit_denominator(max_den) for x in vec]


def _locate_plane(view: _LiftedView, strategy, epsilon, budget, seed):
    sizes = view.sizes()
    caps_exact = [_ceil_half(m) for m in sizes]
    dims = view.dims

    def full_plane(normal_prefix, offset):
        coeffs = (list(normal_prefix)
                  + [_F0] * (dims - len(normal_prefix)) + [Fraction(offset)])
        return Hyperplane(tuple(coeffs))

    if strategy not in ("exact", "heuristic"):
        raise ValueError(f"unknown strategy {strategy!r}")

    # --- enumeration over one-point-per-set pivot planes ------------------
    if strategy == "exact":
        kdim = min(view.n_sets, dims)
        rows_prefix = view.exact_rows(kdim)
        for v in _enumerate_pivot_planes(view, budget):
            normal, offset = v[:-1], v[-1]
            values = _exact_values(normal, rows_prefix)
            values = [[x + offset for x in vals] for vals in values]
            cert = certificate_from_values(values)
            if cert.slack == 0:
                return full_plane(normal, offset), cert, values, "enumeration"

    # --- certified float search with exact thresholding -------------------
    caps_relaxed = [max(c, int(c * (1 + epsilon))) for c in caps_exact]
    space = _SearchSpace(view)

    best_cert = None
    best_result = None
    exact_passes = 0
    for use, n_float, rel_gap in _search_hyperplane(space, caps_exact, seed):
        if exact_passes >= 16:
            break
        if strategy == "exact" and rel_gap >= 0:
            continue
        exact_passes += 1
        rows = view.exact_rows(use)
        for max_den in (1 << 24, 1 << 40, 1 << 56):
            n_rat_scaled = _rationalize(n_float, max_den)
            if all(c == 0 for c in n_rat_scaled):
                continue
            normal = space.unscale_prefix(n_rat_scaled, use)
            values = _exact_values(normal, rows)
            tau = _threshold_from_windows(values, caps_exact)
            if tau is not None:
                shifted = [[v - tau for v in vals] for vals in values]
                cert = certificate_from_values(shifted)
                assert cert.slack == 0
                return full_plane(normal, -tau), cert, shifted, "search"
            if strategy == "heuristic":
                tau = _threshold_from_windows(values, caps_relaxed)
                if tau is not None:
                    shifted = [[v - tau for v in vals] for vals in values]
                    cert = certificate_from_values(shifted)
                    if cert.slack <= epsilon:
                        result = (full_plane(normal, -tau), cert, shifted, "search")
                        if best_cert is None or cert.slack < best_cert.slack:
                            best_cert, best_result = cert, result
                        if cert.slack == 0:
                            return result
                    break  # sub-eps reached; finer denominators rarely help
    if best_result is not None:
        return best_result

    achieved = best_cert.slack if best_cert else None
    if strategy == "exact":
        raise BisectionError("exact bisection not found within budget", achieved)
    raise BisectionError(f"heuristic bisection above slack {epsilon}", achieved)


def find_bisecting_hyperplane(lifted_sets, strategy="exact",
                              epsilon=Fraction(1, 10), *,
                              budget=100_000, seed=0):
    """Hyperplane simultaneously bisecting the lifted sets.

    Returns (Hyperplane, BisectionCertificate).  Exact strategy demands
    certificate slack 0; heuristic accepts slack <= epsilon and reports the
    achieved slack on failure.
    """
    view = _LiftedView(sets_exact_rows=lifted_sets)
    if view.n_sets > view.dims and any(view.sizes()):
        raise ValueError(f"{view.n_sets} sets exceed lifted dimension {view.dims}")
    hp, cert, _values, _mode = _locate_plane(view, strategy, epsilon, budget, seed)
    return hp, cert


# ---------------------------------------------------------------------------
# polynomial bisection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BisectionOutcome:
    poly: Poly
    certificate: BisectionCertificate
    hyperplane: Hyperplane
    values_per_set: tuple
    mode: str
    monomials_used: tuple


def compose_from_basis(monomials, coefficients, offset) -> Poly:
    terms = {}
    for e, c in zip(monomials, coefficients):
        if c:
            terms[tuple(e)] = Fraction(c)
    off = Fraction(offset)
    if off:
        terms[(0, 0, 0)] = terms.get((0, 0, 0), _F0) + off
    return Poly(3, terms)


def bisect_sets(sets_3d, basis: MonomialBasis, strategy="exact",
                epsilon=Fraction(1, 10), *, budget=100_000, seed=0) -> BisectionOutcome:
    """Find one polynomial over the basis that bisects every 3D point set."""
    k = len(sets_3d)
    if k > len(basis.monomials):
        raise ValueError(f"{k} sets exceed basis size {len(basis.monomials)}")
    view = _LiftedView(sets_3d=sets_3d, monomials=basis.monomials)
    hp, cert, values, mode = _locate_plane(view, strategy, epsilon, budget, seed)
    coeffs = hp.coefficients[:-1]
    poly = compose_from_basis(basis.monomials, coeffs, hp.coefficients[-1])
    if poly.is_zero():
        raise BisectionError("degenerate zero polynomial")
    return BisectionOutcome(poly, cert, hp, tuple(tuple(v) for v in values),
                            mode, tuple(basis.monomials))


def bisect_with_polynomial(sets_3d, basis: MonomialBasis, strategy="exact",
                           epsilon=Fraction(1, 10), *, budget=100_000, seed=0):
    """Public wrapper: (Poly, BisectionCertificate)."""
    out = bisect_sets(sets_3d, basis, strategy, epsilon, budget=budget, seed=seed)
    return out.poly, out.certificate


def basis_blocks_divisibility(basis: MonomialBasis, f: Poly, combo: Poly) -> bool:
    """True when the combination (over basis monomials plus a constant) is
    not divisible by f; used by property tests."""
    if combo.is_zero():
        return True
    return not divides(f, combo)
