"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a map from exponent vectors to nonzero Fraction coefficients:

    x^2*y - 3/2  (3 vars)  ->  Poly(3, {(2,1,0): Fraction(1), (0,0,0): Fraction(-3,2)})

The zero polynomial has an empty term map.  Values are immutable after
construction and safe to share across threads; no operation mutates its
inputs.  There is no floating point anywhere in this module: "equal",
"divides" and "vanishes" always mean exactly that.

The heavy algorithms (gcd, resultants, square-free decomposition, Sturm
counts) run internally on integer-coefficient term dicts obtained by
clearing denominators, which keeps the inner loops on plain ints.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd, lcm as _int_lcm
from typing import Iterable, Sequence

ExpVec = tuple  # tuple[int, ...], one exponent per variable

_VAR_NAMES = {1: ("t",), 2: ("u", "v"), 3: ("x", "y", "z")}


class PolynomialError(ValueError):
    pass


def _grlex_key(exps: ExpVec):
    # graded order: total degree first, lexicographic tie-break
    return (sum(exps), exps)


class Poly:
    """Sparse exact polynomial in `nvars` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        if nvars < 1:
            raise PolynomialError(f"nvars must be >= 1, got {nvars}")
        clean = {}
        if terms:
            for exps, coef in terms.items():
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise PolynomialError(f"bad exponent vector {exps!r} for nvars={nvars}")
                c = coef if isinstance(coef, Fraction) else Fraction(coef)
                if c != 0:
                    clean[tuple(exps)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, value) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        if not 0 <= index < nvars:
            raise PolynomialError(f"variable index {index} out of range")
        e = [0] * nvars
        e[index] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coef=1) -> "Poly":
        return cls(len(exps), {tuple(exps): Fraction(coef)})

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: int) -> int:
        if not self.terms:
            return 0
        return max(e[var] for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def variables_used(self) -> tuple:
        used = [False] * self.nvars
        for e in self.terms:
            for i, d in enumerate(e):
                if d:
                    used[i] = True
        return tuple(i for i, u in enumerate(used) if u)

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise PolynomialError("mixed variable counts")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            if c == 0:
                return Poly.zero(self.nvars)
            return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.nvars)
        if len(self.terms) * len(other.terms) > 256:
            # integer arithmetic avoids per-term Fraction reductions
            a, da = _int_form(self)
            b, db = _int_form(other)
            return _from_idict(self.nvars, _dmul(a, b)) * Fraction(1, da * db)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolynomialError("negative power")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({self.nvars}, {format_poly(self)!r})"

    # -- evaluation ----------------------------------------------------

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact value at a rational point."""
        if len(point) != self.nvars:
            raise PolynomialError(f"point has {len(point)} coords, poly has {self.nvars} vars")
        pt = [Fraction(x) for x in point]
        # cache powers per variable
        maxd = [0] * self.nvars
        for e in self.terms:
            for i, d in enumerate(e):
                if d > maxd[i]:
                    maxd[i] = d
        pows = []
        for i in range(self.nvars):
            row = [Fraction(1)]
            for _ in range(maxd[i]):
                row.append(row[-1] * pt[i])
            pows.append(row)
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, d in enumerate(e):
                if d:
                    v *= pows[i][d]
            total += v
        return total

    def partial(self, var: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            d = e[var]
            if d:
                e2 = list(e)
                e2[var] = d - 1
                e2 = tuple(e2)
                s = out.get(e2, Fraction(0)) + c * d
                if s:
                    out[e2] = s
                else:
                    out.pop(e2, None)
        return Poly(self.nvars, out)


def evaluate(p: Poly, point: Sequence) -> Fraction:
    return p.evaluate(point)


def lex_leading_term(p: Poly) -> ExpVec:
    """Exponent vector of maximal total degree, ties broken lex-largest."""
    if p.is_zero():
        raise PolynomialError("zero polynomial has no leading term")
    return max(p.terms, key=_grlex_key)


# ---------------------------------------------------------------------------
# integer-coefficient internals
#
# An "idict" is dict[ExpVec, int] with no zero values, representing an
# integer-coefficient polynomial.  All PRS / Bareiss machinery lives here.
# ---------------------------------------------------------------------------


def _int_form(p: Poly):
    """Return (idict, den) with p == idict / den and den a positive int."""
    if not p.terms:
        return {}, 1
    den = 1
    for c in p.terms.values():
        den = _int_lcm(den, c.denominator)
    return {e: int(c * den) for e, c in p.terms.items()}, den


def _from_idict(nvars: int, d: dict, den: int = 1) -> Poly:
    return Poly(nvars, {e: Fraction(c, den) for e, c in d.items()})


def _dneg(a):
    return {e: -c for e, c in a.items()}


def _dadd(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _dsub(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _dmul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _dscale(a, c: int):
    if c == 0:
        return {}
    return {e: v * c for e, v in a.items()}


def _dconst(nvars: int, c: int):
    return {(0,) * nvars: c} if c else {}


def _dis_const(a) -> bool:
    return all(sum(e) == 0 for e in a)


def _ddeg_in(a, var: int) -> int:
    return max((e[var] for e in a), default=0)


def _dlead(a):
    return max(a, key=_grlex_key)


def _dint_content(a) -> int:
    g = 0
    for c in a.values():
        g = _int_gcd(g, abs(c))
        if g == 1:
            return 1
    return g or 1


def _dprimitive(a):
    """Divide out the integer content; sign is preserved."""
    g = _dint_content(a)
    if g > 1:
        return {e: c // g for e, c in a.items()}
    return dict(a)


def _dnormal(a):
    """Primitive with positive coefficient at the graded-lex leading term."""
    if not a:
        return {}
    a = _dprimitive(a)
    if a[_dlead(a)] < 0:
        a = _dneg(a)
    return a


def _dexact_div(a, b):
    """Quotient of a by b if division is exact, else None."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    lb = _dlead(b)
    cb = b[lb]
    rem = dict(a)
    quot = {}
    while rem:
        lr = _dlead(rem)
        if any(x < y for x, y in zip(lr, lb)):
            return None
        cr = rem[lr]
        if cr % cb:
            # coefficient not integrally divisible; retry over Q by scaling
            return _dexact_div_q(a, b)
        qe = tuple(x - y for x, y in zip(lr, lb))
        qc = cr // cb
        quot[qe] = quot.get(qe, 0) + qc
        rem = _dsub(rem, _dmul({qe: qc}, b))
    return {e: c for e, c in quot.items() if c}


def _dexact_div_q(a, b):
    """Exact division allowing rational quotient coefficients; returns an
    idict only when the quotient is integral, else None if not divisible."""
    lb = _dlead(b)
    cb = Fraction(b[lb])
    rem = {e: Fraction(c) for e, c in a.items()}
    quot = {}
    while rem:
        lr = max(rem, key=_grlex_key)
        if any(x < y for x, y in zip(lr, lb)):
            return None
        qe = tuple(x - y for x, y in zip(lr, lb))
        qc = rem[lr] / cb
        quot[qe] = quot.get(qe, Fraction(0)) + qc
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(qe, e2))
            s = rem.get(e, Fraction(0)) - qc * c2
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    if any(c.denominator != 1 for c in quot.values()):
        return None
    return {e: int(c) for e, c in quot.items() if c}


def _dcoeffs_in(a, var: int):
    """Map v-degree -> idict of the coefficient (with var's exponent zeroed)."""
    out = {}
    for e, c in a.items():
        d = e[var]
        e2 = list(e)
        e2[var] = 0
        e2 = tuple(e2)
        out.setdefault(d, {})[e2] = c
    return out


def _dshift(a, var: int, k: int):
    out = {}
    for e, c in a.items():
        e2 = list(e)
        e2[var] += k
        out[tuple(e2)] = c
    return out


def _dprem(a, b, var: int):
    """Pseudo-remainder of a by b with respect to var (up to a power of
    lc_var(b); callers strip contents afterwards, so the exact power is
    irrelevant)."""
    db = _ddeg_in(b, var)
    lb = _dcoeffs_in(b, var)[db]
    r = dict(a)
    dr = _ddeg_in(r, var)
    while r and dr >= db:
        lr = _dcoeffs_in(r, var)[dr]
        r = _dsub(_dmul(lb, r), _dmul(_dshift(lr, var, dr - db), b))
        dr = _ddeg_in(r, var) if r else -1
    return r


def _dcontent_in(a, var: int):
    """Content of a as a polynomial in var: gcd of its var-coefficients."""
    coeffs = list(_dcoeffs_in(a, var).values())
    g = {}
    for c in coeffs:
        g = _dgcd(g, c)
        if _dis_const(g):
            break
    return g


def _dgcd(a, b):
    """gcd of integer-coefficient polynomials, primitive with positive lead.

    Recursive primitive PRS: pick a main variable, strip contents, run the
    pseudo-remainder sequence taking primitive parts each step.
    """
    if not a:
        return _dnormal(b)
    if not b:
        return _dnormal(a)
    if _dis_const(a) or _dis_const(b):
        # gcd over Z with a constant is the gcd of the integer contents
        nv = len(next(iter(a)))
        return _dconst(nv, _int_gcd(_dint_content(a), _dint_content(b)))

    nv = len(next(iter(a)))
    var = -1
    for v in range(nv - 1, -1, -1):
        if _ddeg_in(a, v) > 0 or _ddeg_in(b, v) > 0:
            var = v
            break
    da, db = _ddeg_in(a, var), _ddeg_in(b, var)
    if da == 0:
        return _dgcd(a, _dcontent_in(b, var))
    if db == 0:
        return _dgcd(_dcontent_in(a, var), b)

    ca = _dcontent_in(a, var)
    cb = _dcontent_in(b, var)
    aa = _dexact_div(a, ca)
    bb = _dexact_div(b, cb)
    c = _dgcd(ca, cb)
    if _ddeg_in(aa, var) < _ddeg_in(bb, var):
        aa, bb = bb, aa
    while True:
        r = _dprem(aa, bb, var)
        if not r:
            g = bb
            break
        if _ddeg_in(r, var) == 0:
            g = _dconst(nv, 1)
            break
        aa, bb = bb, _dexact_div(r, _dcontent_in(r, var))
    g = _dexact_div(g, _dcontent_in(g, var)) if not _dis_const(g) else g
    return _dnormal(_dmul(c, g))


# ---------------------------------------------------------------------------
# public algebra
# ---------------------------------------------------------------------------


def normalize(p: Poly) -> Poly:
    """Primitive (integer content 1) with positive lex-leading coefficient."""
    if p.is_zero():
        return p
    d, _ = _int_form(p)
    return _from_idict(p.nvars, _dnormal(d))


def exact_div(p: Poly, d: Poly):
    """Return p / d when the division is exact over Q, else None."""
    if d.is_zero():
        raise PolynomialError("division by zero polynomial")
    if p.is_zero():
        return Poly.zero(p.nvars)
    p._check(d)
    # by Gauss's lemma divisibility over Q reduces to primitive parts over Z
    pi, pden = _int_form(p)
    di, dden = _int_form(d)
    cp, cd = _dint_content(pi), _dint_content(di)
    pp = {e: c // cp for e, c in pi.items()} if cp > 1 else pi
    dd = {e: c // cd for e, c in di.items()} if cd > 1 else di
    q = _dexact_div(pp, dd)
    if q is None:
        return None
    return _from_idict(p.nvars, q) * Fraction(cp * dden, cd * pden)


def divides(d: Poly, p: Poly) -> bool:
    return exact_div(p, d) is not None


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """gcd up to a rational constant, normalized primitive with positive lead."""
    if p.is_zero() and q.is_zero():
        raise PolynomialError("gcd of two zero polynomials")
    p._check(q)
    a, _ = _int_form(p)
    b, _ = _int_form(q)
    if not a:
        return _from_idict(q.nvars, _dnormal(b))
    if not b:
        return _from_idict(p.nvars, _dnormal(a))
    if _dis_const(a) or _dis_const(b):
        return Poly.const(p.nvars, 1)
    return _from_idict(p.nvars, _dgcd(a, b))


def gcd_bivariate(p: Poly, q: Poly) -> Poly:
    """gcd of two bivariate polynomials (contract alias of poly_gcd)."""
    if p.nvars != 2 or q.nvars != 2:
        raise PolynomialError("gcd_bivariate expects bivariate inputs")
    return poly_gcd(p, q)


def resultant_elim(p: Poly, q: Poly, var: int) -> Poly:
    """Determinant of the Sylvester matrix of p, q as univariate in `var`.

    Identically zero iff p and q share a factor of positive degree in var.
    When exactly one input is constant in var, that input raised to the
    other's var-degree is returned (standard convention).
    """
    if p.is_zero() or q.is_zero():
        raise PolynomialError("resultant of zero polynomial")
    p._check(q)
    dp, dq = p.degree_in(var), q.degree_in(var)
    if dp == 0 and dq == 0:
        raise PolynomialError("both polynomials constant in the eliminated variable")
    if dp == 0:
        return p ** dq
    if dq == 0:
        return q ** dp

    pi, pden = _int_form(p)
    qi, qden = _int_form(q)
    cp = _dcoeffs_in(pi, var)
    cq = _dcoeffs_in(qi, var)
    n = dp + dq
    zero = {}
    rows = []
    for i in range(dq):
        row = [zero] * n
        for d, c in cp.items():
            row[i + (dp - d)] = c
        rows.append(row)
    for i in range(dp):
        row = [zero] * n
        for d, c in cq.items():
            row[i + (dq - d)] = c
        rows.append(row)
    det = _bareiss_det(rows)
    scale = Fraction(1, pden**dq * qden**dp)
    return _from_idict(p.nvars, det) * scale


def _bareiss_det(m):
    """Fraction-free determinant of a matrix of idicts."""
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    nv = None
    for row in m:
        for e in row:
            if e:
                nv = len(next(iter(e)))
                break
        if nv is not None:
            break
    if nv is None:
        return {}
    prev = _dconst(nv, 1)
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return {}
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _dsub(_dmul(m[k][k], m[i][j]), _dmul(m[i][k], m[k][j]))
                if num:
                    q = _dexact_div(num, prev)
                    assert q is not None, "Bareiss division must be exact"
                    m[i][j] = q
                else:
                    m[i][j] = {}
            m[i][k] = {}
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else _dneg(det)


# ---------------------------------------------------------------------------
# common-factor test
# ---------------------------------------------------------------------------


_LINE_SEEDS = [(3, 1, 7, 2, 5, 11), (1, 4, 2, 9, 3, 5), (5, 2, 11, 3, 7, 1),
               (2, 7, 3, 1, 13, 4), (9, 5, 1, 6, 2, 3)]

# large primes for modular probe certificates (degree can only drop mod p,
# so a constant modular gcd certifies a constant rational gcd)
_PROBE_PRIMES = (2305843009213693951, 1000000000000000009, 2147483647)


def restrict_to_line(p: Poly, base: Sequence, direction: Sequence) -> Poly:
    """Univariate restriction t -> p(base + t * direction)."""
    reps = [Poly(1, {(0,): Fraction(b), (1,): Fraction(d)})
            for b, d in zip(base, direction)]
    return substitute(p, reps)


def substitute(p: Poly, reps: Sequence[Poly]) -> Poly:
    """Compose p with the given replacement polynomials, one per variable."""
    if len(reps) != p.nvars:
        raise PolynomialError("need one replacement per variable")
    nv = reps[0].nvars
    maxd = [0] * p.nvars
    for e in p.terms:
        for i, d in enumerate(e):
            maxd[i] = max(maxd[i], d)
    rep_int = [_int_form(r) for r in reps]
    pi, pden = _int_form(p)
    pows = []
    shared_den = 1
    for i in range(p.nvars):
        d, den = rep_int[i]
        row = [_dconst(nv, 1)]
        for _ in range(maxd[i]):
            row.append(_dmul(row[-1], d))
        pows.append(row)
        shared_den *= den**maxd[i]
    acc = {}
    for e, c in pi.items():
        term = _dconst(nv, 1)
        mult = c
        for i, d in enumerate(e):
            if d:
                term = _dmul(term, pows[i][d])
            mult *= rep_int[i][1] ** (maxd[i] - d)
        acc = _dadd(acc, _dscale(term, mult))
    return _from_idict(nv, acc) * Fraction(1, pden * shared_den)


def _mod_conv(a, b, prime):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % prime
    return out


def _mod_line_coeffs(p: Poly, seed_idx: int, prime: int):
    """Coefficient list (mod prime) of p restricted to a probe line, or None
    when the restriction degree drops (degenerate line or bad prime)."""
    s = _LINE_SEEDS[seed_idx % len(_LINE_SEEDS)]
    nv = p.nvars
    inv17 = pow(17, -1, prime)
    inv13 = pow(13, -1, prime)
    base = [s[i] * inv17 % prime for i in range(nv)]
    direction = [(s[nv + i] + seed_idx) * inv13 % prime for i in range(nv)]
    pi, _ = _int_form(p)
    maxd = [0] * nv
    for e in pi:
        for i, d in enumerate(e):
            if d > maxd[i]:
                maxd[i] = d
    pows = []
    for i in range(nv):
        lin = [base[i], direction[i]]
        row = [[1]]
        for _ in range(maxd[i]):
            row.append(_mod_conv(row[-1], lin, prime))
        pows.append(row)
    deg = p.total_degree()
    acc = [0] * (deg + 1)
    for e, c in pi.items():
        cl = [c % prime]
        for i, d in enumerate(e):
            if d:
                cl = _mod_conv(cl, pows[i][d], prime)
        for j, v in enumerate(cl):
            acc[j] = (acc[j] + v) % prime
    while acc and acc[-1] == 0:
        acc.pop()
    if len(acc) - 1 != deg:
        return None
    return acc


def _mod_gcd_is_constant(a, b, prime) -> bool:
    a = [x % prime for x in a]
    b = [x % prime for x in b]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not a or not b:
        return False
    while len(b) > 1:
        inv = pow(b[-1], -1, prime)
        bb = [x * inv % prime for x in b]
        r = list(a)
        while len(r) >= len(b):
            if r[-1]:
                shift = len(r) - len(bb)
                lead = r[-1]
                for i, x in enumerate(bb):
                    r[shift + i] = (r[shift + i] - lead * x) % prime
            while r and r[-1] == 0:
                r.pop()
            if not r:
                break
        a, b = b, r
        if not b:
            return len(a) == 1
    return bool(b)


def _mod_deriv(cs, prime):
    return [i * c % prime for i, c in enumerate(cs)][1:]


def _coprime_on_line(p: Poly, q: Poly, seed_idx: int) -> bool:
    """Certify coprimality on a probe line modulo a large prime.  Sound in
    one direction: a shared factor keeps positive degree on any line where
    the restrictions keep full degree, and degrees only drop mod p."""
    prime = _PROBE_PRIMES[seed_idx % len(_PROBE_PRIMES)]
    rp = _mod_line_coeffs(p, seed_idx, prime)
    rq = _mod_line_coeffs(q, seed_idx, prime)
    if rp is None or rq is None:
        return False  # degenerate probe, caller retries
    return _mod_gcd_is_constant(rp, rq, prime)


def has_common_factor(p: Poly, q: Poly) -> bool:
    """True iff gcd(p, q) has positive total degree.

    Fast path: restriction to a generic rational line; constant restricted
    gcd certifies coprimality.  Otherwise the gcd witness decides, with the
    per-variable resultant test as the final arbiter for the (never yet
    observed) case where the witness is constant but a probe disagreed.
    """
    if p.is_zero() or q.is_zero():
        raise PolynomialError("has_common_factor expects nonzero inputs")
    if p.is_constant() or q.is_constant():
        return False
    for i in range(3):
        if _coprime_on_line(p, q, i):
            return False
    g = poly_gcd(p, q)
    if not g.is_constant():
        return True
    for var in range(p.nvars):
        if p.degree_in(var) > 0 and q.degree_in(var) > 0:
            if resultant_elim(p, q, var).is_zero():
                return True
    return divides(p, q) or divides(q, p)


# ---------------------------------------------------------------------------
# square-free decomposition
# ---------------------------------------------------------------------------


def _probably_square_free(p: Poly) -> bool:
    """Sound positive certificate: a square-free line restriction modulo a
    large prime implies p is square-free (a repeated factor restricts to a
    repeated factor on any full-degree line, and degrees only drop mod p)."""
    for i in range(3):
        prime = _PROBE_PRIMES[i % len(_PROBE_PRIMES)]
        r = _mod_line_coeffs(p, i, prime)
        if r is None or len(r) < 2:
            continue
        if _mod_gcd_is_constant(r, _mod_deriv(r, prime), prime):
            return True
    return False


def square_free_part(p: Poly) -> list:
    """Pairwise co-prime factors whose product is the square-free part of p.

    Factors are grouped by multiplicity in p (iterated gcd with all partial
    derivatives); each is normalized primitive with positive leading
    coefficient.  Degree-0 pieces are dropped.
    """
    if p.is_zero():
        raise PolynomialError("square_free_part of zero polynomial")
    if p.is_constant():
        raise PolynomialError("square_free_part of constant polynomial")
    if _probably_square_free(p):
        return [normalize(p)]

    def derivative_gcd(q: Poly) -> Poly:
        g = q
        for v in range(q.nvars):
            g = poly_gcd(g, q.partial(v))
            if g.is_constant():
                break
        return g

    # c_k = prod f_i^(max(e_i - k, 0)); w_k = c_{k-1}/c_k = prod_{e_i >= k} f_i
    cs = [normalize(p)]
    while not cs[-1].is_constant():
        cs.append(normalize(derivative_gcd(cs[-1])))
    ws = []
    for k in range(1, len(cs)):
        w = exact_div(cs[k - 1], cs[k])
        assert w is not None
        ws.append(normalize(w))
    ws.append(Poly.const(p.nvars, 1))
    out = []
    for k in range(len(ws) - 1):
        a = exact_div(ws[k], ws[k + 1])
        assert a is not None
        a = normalize(a)
        if not a.is_constant():
            out.append(a)
    return out


def square_free(p: Poly) -> Poly:
    """The square-free part itself (product of square_free_part factors)."""
    out = Poly.const(p.nvars, 1)
    for f in square_free_part(p):
        out = out * f
    return normalize(out)


# ---------------------------------------------------------------------------
# univariate helpers and Sturm counting
# ---------------------------------------------------------------------------


def univariate_coeffs(p: Poly) -> list:
    """Fraction coefficient list (ascending) of a univariate polynomial."""
    if p.nvars != 1:
        raise PolynomialError("expected a univariate polynomial")
    out = [Fraction(0)] * (p.total_degree() + 1)
    for e, c in p.terms.items():
        out[e[0]] = c
    return out


def as_univariate(p: Poly, var: int) -> Poly:
    """Reinterpret a polynomial using only `var` as univariate."""
    out = {}
    for e, c in p.terms.items():
        if any(d and i != var for i, d in enumerate(e)):
            raise PolynomialError("polynomial uses more than one variable")
        out[(e[var],)] = c
    return Poly(1, out)


def cauchy_root_bound(p: Poly) -> Fraction:
    """1 + max |a_i / a_lead| for a nonzero univariate polynomial."""
    cs = univariate_coeffs(p)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise PolynomialError("zero polynomial has no root bound")
    lead = abs(cs[-1])
    m = max((abs(c) for c in cs[:-1]), default=Fraction(0))
    return 1 + m / lead


def _int_coeff_list(p: Poly) -> list:
    cs = univariate_coeffs(p)
    den = 1
    for c in cs:
        den = _int_lcm(den, c.denominator)
    out = [int(c * den) for c in cs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _ucontent(cs: list) -> int:
    g = 0
    for c in cs:
        g = _int_gcd(g, abs(c))
        if g == 1:
            break
    return g or 1


def _uprimitive(cs: list) -> list:
    g = _ucontent(cs)
    return [c // g for c in cs] if g > 1 else list(cs)


def _upseudo_rem(a: list, b: list):
    """Remainder of a by b over Z, scaled by lc(b)^k for the k reduction
    steps actually taken; also returns the sign of that scale factor."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    mult_sign = 1
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        if a[-1] == 0:
            a.pop()
            continue
        la = a[-1]
        a = [c * lb for c in a]
        mult_sign *= 1 if lb > 0 else -1
        shift = da - db
        for i, c in enumerate(b):
            a[shift + i] -= la * c
        while a and a[-1] == 0:
            a.pop()
    return a, mult_sign


def _sturm_chain(cs: list) -> list:
    """Sturm chain of a square-free integer polynomial, with each element
    rescaled by a positive constant (variation counts are unaffected)."""
    chain = [_uprimitive(cs)]
    deriv = [i * c for i, c in enumerate(cs)][1:]
    if deriv:
        chain.append(_uprimitive(deriv))
    while len(chain[-1]) > 1:
        r, msign = _upseudo_rem(chain[-2], chain[-1])
        if not r:
            break
        r = [-msign * c for c in r]
        chain.append(_uprimitive(r))
    return chain


def _sign_at(cs: list, t: Fraction) -> int:
    # sign(p(t)) via the integer value p(t) * den^deg
    num, den = t.numerator, t.denominator
    d = len(cs) - 1
    total = 0
    for i, c in enumerate(cs):
        if c:
            total += c * num**i * den ** (d - i)
    return (total > 0) - (total < 0)


def _variations(chain: list, t: Fraction) -> int:
    signs = [s for s in (_sign_at(cs, t) for cs in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def sturm_count(p: Poly, a, b) -> int:
    """Number of distinct real roots of p in the open interval (a, b)."""
    a, b = Fraction(a), Fraction(b)
    if p.nvars != 1:
        raise PolynomialError("sturm_count expects a univariate polynomial")
    if p.is_zero():
        raise PolynomialError("sturm_count of zero polynomial")
    if not a < b:
        raise PolynomialError("need a < b")
    if p.evaluate((a,)) == 0 or p.evaluate((b,)) == 0:
        raise PolynomialError("root at interval endpoint; perturb the endpoint")
    if p.is_constant():
        return 0
    cs = _int_coeff_list(p)
    # square-free part: distinct roots only
    g = _dgcd({(i,): c for i, c in enumerate(cs) if c},
              {(i - 1,): i * c for i, c in enumerate(cs) if i and c})
    if not _dis_const(g):
        gl = [0] * (max(e[0] for e in g) + 1)
        for e, c in g.items():
            gl[e[0]] = c
        q = _unidiv_exact(cs, gl)
        cs = q
    chain = _sturm_chain(cs)
    return _variations(chain, a) - _variations(chain, b)


def _unidiv_exact(a: list, b: list) -> list:
    """Exact univariate division over Q, returned as an integer list."""
    aq = [Fraction(c) for c in a]
    db = len(b) - 1
    lb = Fraction(b[-1])
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    while len(aq) - 1 >= db and any(aq):
        while aq and aq[-1] == 0:
            aq.pop()
        if len(aq) - 1 < db:
            break
        shift = len(aq) - 1 - db
        c = aq[-1] / lb
        q[shift] = c
        for i, bc in enumerate(b):
            aq[shift + i] -= c * bc
    den = 1
    for c in q:
        den = _int_lcm(den, c.denominator)
    out = [int(c * den) for c in q]
    return _uprimitive(out)


def count_real_roots(p: Poly) -> int:
    """Distinct real roots of a univariate polynomial over the whole line."""
    if p.is_constant():
        return 0
    bound = cauchy_root_bound(p) + 1
    lo, hi = -bound, bound
    while p.evaluate((lo,)) == 0:
        lo -= 1
    while p.evaluate((hi,)) == 0:
        hi += 1
    return sturm_count(p, lo, hi)


# ---------------------------------------------------------------------------
# rational maps and pullbacks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalMap3:
    """A map R^2 -> R^3 given by three numerators over a shared denominator."""

    numerators: tuple
    shared_denominator: Poly

    def __post_init__(self):
        if len(self.numerators) != 3:
            raise PolynomialError("need exactly three numerator polynomials")
        for nmr in self.numerators:
            if nmr.nvars != 2:
                raise PolynomialError("numerators must be bivariate")
        if self.shared_denominator.is_zero():
            raise PolynomialError("zero denominator")


def compose_rational(p: Poly, m: RationalMap3) -> Poly:
    """Numerator of p(m) after clearing the denominator to the power deg(p).

    The positive integer content is removed; the sign is preserved so that
    sign(result at (u,v)) == sign(p at m(u,v)) whenever the denominator is
    positive there.
    """
    if p.is_zero():
        raise PolynomialError("compose_rational of zero polynomial")
    if p.nvars != 3:
        raise PolynomialError("compose_rational expects a trivariate polynomial")
    if p.is_constant():
        return Poly.const(2, p.constant_value())
    D = p.total_degree()
    nx, nxd = _int_form(m.numerators[0])
    ny, nyd = _int_form(m.numerators[1])
    nz, nzd = _int_form(m.numerators[2])
    q, qd = _int_form(m.shared_denominator)
    if not (nxd == nyd == nzd == qd == 1):
        # clear map denominators jointly; a positive common scale is dropped anyway
        scale = _int_lcm(_int_lcm(nxd, nyd), _int_lcm(nzd, qd))
        nx = _dscale(nx, scale // nxd)
        ny = _dscale(ny, scale // nyd)
        nz = _dscale(nz, scale // nzd)
        q = _dscale(q, scale // qd)

    maxe = [0, 0, 0]
    for e in p.terms:
        for i in range(3):
            maxe[i] = max(maxe[i], e[i])
    powx = _dpowers(nx, maxe[0], 2)
    powy = _dpowers(ny, maxe[1], 2)
    powz = _dpowers(nz, maxe[2], 2)
    powq = _dpowers(q, D, 2)

    pi, pden = _int_form(p)
    acc = {}
    for e, c in pi.items():
        term = _dmul(_dmul(powx[e[0]], powy[e[1]]), powz[e[2]])
        term = _dmul(term, powq[D - e[0] - e[1] - e[2]])
        acc = _dadd(acc, _dscale(term, c))
    if not acc:
        return Poly.zero(2)
    return _from_idict(2, _dprimitive(acc))


def _dpowers(d, upto: int, nvars: int):
    out = [_dconst(nvars, 1)]
    for _ in range(upto):
        out.append(_dmul(out[-1], d))
    return out


# ---------------------------------------------------------------------------
# textual format
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(
    r"^\s*(?P<coef>\d+(?:/\d+)?)?\s*(?P<mono>(?:[a-z]\s*(?:\^\s*\d+)?\s*)*)\s*$"
)
_FACTOR_RE = re.compile(r"([a-z])\s*(?:\^\s*(\d+))?")


def format_poly(p: Poly) -> str:
    """Deterministic textual form: graded-lex descending, explicit coefficients."""
    if p.is_zero():
        return "0"
    names = _VAR_NAMES.get(p.nvars)
    if names is None:
        raise PolynomialError(f"no variable names for nvars={p.nvars}")
    parts = []
    for e in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[e]
        mono = " ".join(
            n if d == 1 else f"{n}^{d}" for n, d in zip(names, e) if d
        )
        coef = str(abs(c))
        body = f"{coef} {mono}".strip()
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def parse_poly(text: str, nvars: int | None = None) -> Poly:
    """Parse the textual polynomial format (whitespace-insensitive)."""
    s = text.strip()
    if not s:
        raise PolynomialError("empty polynomial text")
    letters = set(re.findall(r"[a-z]", s))
    if nvars is None:
        if letters <= {"u", "v"} and letters:
            nvars = 2
        elif letters <= {"x", "y", "z"} and letters:
            nvars = 3
        elif letters <= {"t"} and letters:
            nvars = 1
        elif not letters:
            nvars = 3
        else:
            raise PolynomialError(f"cannot infer variables from {sorted(letters)}")
    names = _VAR_NAMES[nvars]
    bad = letters - set(names)
    if bad:
        raise PolynomialError(f"unknown variables {sorted(bad)} for nvars={nvars}")

    # split into sign tokens and term bodies
    chunks = re.findall(r"[+-]|[^+-]+", s)
    terms = {}
    sign = 1
    for chunk in chunks:
        if chunk == "+":
            continue
        if chunk == "-":
            sign = -sign
            continue
        if not chunk.strip():
            continue
        m = _TERM_RE.match(chunk)
        if not m:
            raise PolynomialError(f"bad term {chunk!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        exps = [0] * nvars
        mono = m.group("mono") or ""
        for name, d in _FACTOR_RE.findall(mono):
            exps[names.index(name)] += int(d) if d else 1
        e = tuple(exps)
        val = terms.get(e, Fraction(0)) + sign * coef
        if val:
            terms[e] = val
        else:
            terms.pop(e, None)
        sign = 1
    return Poly(nvars, terms)
