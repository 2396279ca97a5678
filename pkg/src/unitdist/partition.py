"""Two-level sign partitions of rational point sets in R^3.

First level: repeated simultaneous halving of all current parts, one
bisecting polynomial per round, cell = full sign vector over the rounds.
Points where any bisector vanishes drop into the zero-set remainder.

Second level: the same construction restricted to a surface Z(f_i), using
monomial bases that block divisibility by f_i so the round polynomials (and
their product g) stay co-prime with f_i.

Cells are sign-vector classes, not connected components; a sign class is a
union of components, which preserves every cell-size bound and can only
undercount crossings, keeping upper-bound checks sound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple

from . import rng as rngmod
from ._linalg import nullspace_vector
from .hamsandwich import (
    BisectionCertificate,
    BisectionError,
    bisect_sets,
    certificate_from_values,
    full_basis,
    lift_points,
    restricted_basis,
)
from .poly import (
    Poly,
    divides,
    exact_div,
    format_poly,
    has_common_factor,
    lex_leading_term,
    normalize,
    poly_gcd,
    square_free_part,
)

F = Fraction


class Point3(NamedTuple):
    x: Fraction
    y: Fraction
    z: Fraction


def make_point(x, y, z) -> Point3:
    return Point3(Fraction(x), Fraction(y), Fraction(z))


class PartitionError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# generic rotation
# ---------------------------------------------------------------------------


def _quaternion_matrix(a, b, c, d):
    n = a * a + b * b + c * c + d * d
    rows = [
        [a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)],
        [2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)],
        [2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d],
    ]
    return [[F(v, n) for v in row] for row in rows]


def generic_rotation(points, seed=0, max_attempts=64):
    """Rotate by an exactly rational rotation until all x-coordinates are
    distinct (hence no two points are co-vertical and no point can sit at
    another's sphere's north pole).

    Returns (rotated_points, matrix, meta) with meta recording the
    quaternion and the number of redraws.
    """
    rng = rngmod.stream(seed, "rotation")
    pts = [make_point(*p) for p in points]
    for attempt in range(max_attempts):
        # small entries keep downstream denominators small; widen on failure
        bound = 9 << min(attempt, 12)
        q = tuple(rng.randint(-bound, bound) for _ in range(4))
        if all(v == 0 for v in q):
            continue
        m = _quaternion_matrix(*q)
        rotated = [
            Point3(
                m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
                m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
                m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z,
            )
            for p in pts
        ]
        xs = [p.x for p in rotated]
        if len(set(xs)) == len(xs):
            meta = {"quaternion": q, "redraws": attempt}
            return rotated, m, meta
    raise PartitionError("no generic rotation found (duplicate points?)")


# ---------------------------------------------------------------------------
# first-level partition
# ---------------------------------------------------------------------------


@dataclass
class RoundRecord:
    index: int
    sets: int
    basis_degree: int
    mode: str
    slack: Fraction
    certificate: BisectionCertificate
    fixups: int = 0


class PartitionLevel:
    """First-level partition: bisectors, sign-vector cells, zero-set rest.

    The partition polynomial (square-free product of the co-prime factors)
    is built lazily: sign and membership queries go through the factors, so
    large runs never need the expanded product.
    """

    def __init__(self, bisectors, cells, zero_set_points, target_t, n_points,
                 rounds=None, factors=None, product=None):
        self.bisectors = bisectors
        self.cells = cells
        self.zero_set_points = zero_set_points
        self.target_t = target_t
        self.n_points = n_points
        self.rounds = rounds if rounds is not None else []
        self.factors = factors if factors is not None else []
        self._product = product

    @property
    def product(self) -> Poly:
        if self._product is None:
            prod = Poly.const(3, 1)
            for f in self.factors:
                prod = prod * f
            self._product = normalize(prod) if not prod.is_constant() else Poly.const(3, 1)
        return self._product

    @product.setter
    def product(self, value):
        self._product = value

    def product_degree(self) -> int:
        return sum(f.total_degree() for f in self.factors)

    @property
    def k(self):
        return len(self.bisectors)

    def max_cell(self) -> int:
        return max((len(v) for v in self.cells.values()), default=0)

    def cell_bound(self) -> Fraction:
        bound = F(-(-self.n_points // (1 << self.k)))
        for r in self.rounds:
            bound *= 1 + r.slack
        return bound


def _min_full_degree(nsets: int) -> int:
    d = 1
    while comb(d + 3, 3) - 1 < nsets:
        d += 1
    return d


def _vanishing_polynomial(points, n):
    """Lowest-degree polynomial vanishing at all points, by kernel solve over
    all monomials of degree <= D with C(D+3,3) > n."""
    d = 1
    while comb(d + 3, 3) <= n:
        d += 1
    basis = full_basis(d)
    monomials = basis.monomials
    rows = []
    for p in points:
        lifted = lift_points([p], monomials)[0]
        rows.append(list(lifted) + [F(1)])
    v = nullspace_vector(rows)
    if v is None:
        raise PartitionError("vanishing polynomial solve failed")
    terms = {e: c for e, c in zip(monomials, v[:-1]) if c}
    if v[-1]:
        terms[(0, 0, 0)] = v[-1]
    poly = Poly(3, terms)
    assert not poly.is_zero()
    return poly


def coprime_squarefree_factors(polys):
    """Pool the square-free factors of the inputs, dedupe constant multiples,
    and refine to pairwise co-primality by gcd splitting."""
    items = []
    seen = set()
    for b in polys:
        if b.is_constant():
            continue
        for f in square_free_part(b):
            key = frozenset(f.terms.items())
            if key not in seen:
                seen.add(key)
                items.append(f)
    stable = False
    while not stable:
        stable = True
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                if not has_common_factor(items[i], items[j]):
                    continue
                h = poly_gcd(items[i], items[j])
                if h.is_constant():
                    continue
                fi = exact_div(items[i], h)
                fj = exact_div(items[j], h)
                pieces = [h] + [normalize(x) for x in (fi, fj) if not x.is_constant()]
                rest = [it for idx, it in enumerate(items) if idx not in (i, j)]
                merged = rest
                keys = {frozenset(it.terms.items()) for it in rest}
                for piece in pieces:
                    key = frozenset(piece.terms.items())
                    if key not in keys:
                        keys.add(key)
                        merged.append(piece)
                items = merged
                stable = False
                break
            if not stable:
                break
    items.sort(key=lambda f: (f.total_degree(), format_poly(f)))
    return items


def build_first_partition(points, t, strategy="exact", epsilon=F(1, 10), *,
                          seed=0, budget=100_000) -> PartitionLevel:
    """Partition points into sign-vector cells plus a zero-set remainder,
    using ceil(log2 t) simultaneous-halving rounds."""
    pts = [make_point(*p) for p in points]
    n = len(pts)
    if t < 1:
        raise PartitionError("need t >= 1")

    if t > n:
        poly = _vanishing_polynomial(pts, n)
        level = PartitionLevel(
            bisectors=[], cells={},
            zero_set_points=list(range(n)), target_t=t, n_points=n)
        for i, p in enumerate(pts):
            assert poly.evaluate(p) == 0
        level.factors = coprime_squarefree_factors([poly])
        return level

    k = 0
    while (1 << k) < t:
        k += 1

    level = PartitionLevel(
        bisectors=[], cells={(): list(range(n))},
        zero_set_points=[], target_t=t, n_points=n)

    active = {(): list(range(n))}
    bump_hint = 0
    for round_idx in range(1, k + 1):
        parts = sorted(active.items())
        set_indices = [idx for _, idx in parts]
        sets_points = [[pts[i] for i in idx] for idx in set_indices]
        base_degree = _min_full_degree(max(len(parts), 1))
        outcome = None
        last_err = None
        # a strict simultaneous bisector can need more coefficient freedom
        # than the minimal basis offers; escalate the degree on failure,
        # starting from the previous round's escalation level
        for bump in range(bump_hint, bump_hint + 4):
            degree = base_degree + bump
            try:
                outcome = bisect_sets(
                    sets_points, full_basis(degree), strategy, epsilon,
                    budget=budget,
                    seed=rngmod.stream_seed(seed, "first", round_idx, bump))
                bump_hint = bump
                break
            except BisectionError as err:
                last_err = err
        if outcome is None:
            raise last_err
        level.bisectors.append(outcome.poly)
        level.rounds.append(RoundRecord(
            index=round_idx, sets=len(parts), basis_degree=degree,
            mode=outcome.mode, slack=outcome.certificate.slack,
            certificate=outcome.certificate))
        new_active = {}
        for (sig, idx), values in zip(parts, outcome.values_per_set):
            for i, v in zip(idx, values):
                if v == 0:
                    level.zero_set_points.append(i)
                else:
                    key = sig + (1 if v > 0 else -1,)
                    new_active.setdefault(key, []).append(i)
        active = new_active

    level.cells = active
    level.zero_set_points.sort()
    level.factors = coprime_squarefree_factors(level.bisectors)
    return level


# ---------------------------------------------------------------------------
# factor split of the zero-set remainder
# ---------------------------------------------------------------------------


@dataclass
class FactorSplit:
    factors: list
    assignments: list  # (factor index, list of point indices)
    certified: list    # per factor: irreducibility certified by trial factorization

    def degree_sum(self):
        return sum(f.total_degree() for f in self.factors)


def _trial_factorize(f: Poly):
    """Refine a pseudo-factor of total degree <= 4 into irreducible pieces
    (multivariate factorization over Q); returns (pieces, certified)."""
    if f.total_degree() > 4:
        return [f], False
    try:
        import sympy
    except ImportError:  # pragma: no cover
        return [f], False
    syms = sympy.symbols("x y z")
    expr = 0
    for e, c in f.terms.items():
        expr += sympy.Rational(c.numerator, c.denominator) * syms[0]**e[0] * syms[1]**e[1] * syms[2]**e[2]
    _, fl = sympy.factor_list(expr, *syms)
    pieces = []
    for fac, _mult in fl:
        d = sympy.Poly(fac, *syms).as_dict()
        terms = {}
        for e, c in d.items():
            cr = sympy.Rational(c)
            terms[tuple(int(x) for x in e)] = F(int(cr.p), int(cr.q))
        piece = Poly(3, terms)
        if not piece.is_constant():
            pieces.append(normalize(piece))
    return (pieces or [normalize(f)]), True


def pseudo_factorize(level: PartitionLevel, points) -> FactorSplit:
    """Split the zero-set remainder by the co-prime square-free factors of
    the partition polynomial, first-factor-wins in sorted factor order."""
    base = level.factors or coprime_squarefree_factors(level.bisectors)
    if not base:
        raise PartitionError("partition product is constant; nothing to factor")
    factors = []
    certified = []
    for f in base:
        pieces, cert = _trial_factorize(f)
        for piece in pieces:
            factors.append(piece)
            certified.append(cert)
    order = sorted(range(len(factors)),
                   key=lambda i: (factors[i].total_degree(), format_poly(factors[i])))
    factors = [factors[i] for i in order]
    certified = [certified[i] for i in order]

    pts = [make_point(*p) for p in points]
    buckets = [[] for _ in factors]
    for idx in level.zero_set_points:
        p = pts[idx]
        for fi, f in enumerate(factors):
            if f.evaluate(p) == 0:
                buckets[fi].append(idx)
                break
        else:
            raise PartitionError(f"zero-set point {idx} vanishes on no factor")
    assignments = [(fi, bucket) for fi, bucket in enumerate(buckets)]
    split = FactorSplit(factors=factors, assignments=assignments, certified=certified)
    assert split.degree_sum() <= level.product_degree()
    return split


# ---------------------------------------------------------------------------
# degree choice for the second level
# ---------------------------------------------------------------------------


def choose_E(m: int, n: int, D: int) -> int:
    """ceil(max(m^(3/5) / (n^(1/5) D^(3/5)), D)) with exact integer root
    comparisons: the first term's ceiling is the least E with
    E^5 n D^3 >= m^3."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    if D < 1:
        raise ValueError("need D >= 1")
    target = m**3
    hi = 1
    while hi**5 * n * D**3 < target:
        hi *= 2
    lo = max(hi // 2, 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**5 * n * D**3 >= target:
            hi = mid
        else:
            lo = mid + 1
    return max(lo, D)


# ---------------------------------------------------------------------------
# second-level partition inside Z(f_i)
# ---------------------------------------------------------------------------


@dataclass
class SecondPartition:
    base_factor: Poly
    g: Poly
    E_request: int
    E_bound: int
    cells: dict
    zero_set_points: list
    n_points: int
    target_t: int
    realized_parts: int
    rounds: list = field(default_factory=list)
    bisectors: list = field(default_factory=list)
    fixups: int = 0

    @property
    def k(self):
        return len(self.rounds)

    def max_cell(self) -> int:
        return max((len(v) for v in self.cells.values()), default=0)


def build_second_partition(Q, f_i: Poly, E: int, strategy="exact",
                           epsilon=F(1, 10), *, seed=0,
                           budget=100_000) -> SecondPartition:
    """Partition Q inside Z(f_i) with round polynomials drawn from bases
    that block divisibility by f_i; their product g is checked (and if
    necessary fixed) to be co-prime with f_i, with fix-ups recorded."""
    pts = [make_point(*p) for p in Q]
    D = f_i.total_degree()
    if D < 1:
        raise PartitionError("base factor must be nonconstant")
    if E < D:
        raise PartitionError(f"need E >= deg(f_i) = {D}")
    for i, p in enumerate(pts):
        if f_i.evaluate(p) != 0:
            raise PartitionError(f"point {i} does not lie on Z(f_i)")

    leading = lex_leading_term(f_i)
    t_target = max(D * E * E, 1)
    k = 0
    while (1 << k) < t_target:
        k += 1

    sp = SecondPartition(
        base_factor=f_i, g=Poly.const(3, 1), E_request=E, E_bound=0,
        cells={(): list(range(len(pts)))}, zero_set_points=[],
        n_points=len(pts), target_t=t_target, realized_parts=1 << k)

    bisectors = []
    active = {(): list(range(len(pts)))}
    e_bound = 0
    for round_idx in range(1, k + 1):
        s = 1 << (round_idx - 1)
        parts = sorted(active.items())
        sets_points = [[pts[i] for i in idx] for _, idx in parts]
        outcome = None
        basis = None
        fixups = 0
        last_err = None
        for attempt in range(4):
            # escalate the basis size when the search cannot certify
            basis = restricted_basis(leading, s << min(attempt, 2), D)
            fixups = 0
            try:
                outcome = bisect_sets(
                    sets_points, basis, strategy, epsilon, budget=budget,
                    seed=rngmod.stream_seed(seed, "second", round_idx, attempt))
            except BisectionError as err:
                last_err = err
                continue
            g_j = outcome.poly
            # block any residual common factor with the base (possible when
            # the base is a reducible pseudo-factor)
            while not g_j.is_constant() and has_common_factor(g_j, f_i):
                h = poly_gcd(g_j, f_i)
                if h.is_constant():
                    break
                g_j = exact_div(g_j, h)
                fixups += 1
            if not g_j.is_zero() and not divides(f_i, g_j):
                break
            outcome = None
        if outcome is None:
            raise last_err if last_err else PartitionError(
                f"round {round_idx}: no co-prime bisector found")
        e_bound += basis.max_degree

        if fixups:
            values = [[g_j.evaluate(p) for p in s_pts] for s_pts in sets_points]
            cert = certificate_from_values(values)
        else:
            values = outcome.values_per_set
            cert = outcome.certificate

        bisectors.append(g_j)
        sp.fixups += fixups
        sp.rounds.append(RoundRecord(
            index=round_idx, sets=len(parts), basis_degree=basis.max_degree,
            mode=outcome.mode, slack=cert.slack, certificate=cert,
            fixups=fixups))
        new_active = {}
        for (sig, idx), vals in zip(parts, values):
            for i, v in zip(idx, vals):
                if v == 0:
                    sp.zero_set_points.append(i)
                else:
                    key = sig + (1 if v > 0 else -1,)
                    new_active.setdefault(key, []).append(i)
        active = new_active

    sp.cells = active
    sp.zero_set_points.sort()
    g = Poly.const(3, 1)
    for b in bisectors:
        g = g * b
    sp.g = g
    sp.E_bound = max(e_bound, E)
    assert g.total_degree() <= sp.E_bound
    if not g.is_constant():
        assert not divides(f_i, g), "g must not be divisible by the base factor"
    sp.bisectors = bisectors
    return sp
