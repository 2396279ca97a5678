from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from unitdist.poly import (
    Poly,
    PolynomialError,
    RationalMap3,
    compose_rational,
    count_real_roots,
    divides,
    exact_div,
    format_poly,
    gcd_bivariate,
    has_common_factor,
    lex_leading_term,
    normalize,
    parse_poly,
    poly_gcd,
    resultant_elim,
    square_free,
    square_free_part,
    sturm_count,
    substitute,
)

P = parse_poly
F = Fraction


# ---------------------------------------------------------------- evaluate


def test_evaluate_simple():
    p = P("1 x^2 + 1 y")
    assert p.evaluate((2, 3, 0)) == 7


def test_evaluate_zero_poly():
    assert Poly.zero(3).evaluate((5, 6, 7)) == 0


def test_evaluate_symmetric_cancellation():
    p = P("1 x - 1 y")
    assert p.evaluate((F(1, 3), F(1, 3), 0)) == 0


def test_evaluate_dimension_mismatch():
    with pytest.raises(PolynomialError):
        P("1 x").evaluate((1, 2))


# ---------------------------------------------------------------- leading term


def test_lex_leading_among_top_degree():
    p = P("1 x^2 y + 1 x y^2 + 1 y^3")
    assert lex_leading_term(p) == (2, 1, 0)


def test_lex_leading_unique_top():
    assert lex_leading_term(P("1 x^3 + 1 x")) == (3, 0, 0)


def test_lex_leading_constant():
    assert lex_leading_term(P("5")) == (0, 0, 0)


def test_lex_leading_zero_errors():
    with pytest.raises(PolynomialError):
        lex_leading_term(Poly.zero(3))


# ---------------------------------------------------------------- resultants


def test_resultant_2x2():
    # Res_y(y - x, y + x) = 2x
    r = resultant_elim(P("1 y - 1 x"), P("1 y + 1 x"), 1)
    assert r == P("2 x")


def test_resultant_common_factor_vanishes():
    p = P("1 y^2 - 1 x")
    assert resultant_elim(p, p, 1).is_zero()


def test_resultant_two_circles():
    # Res_v of the unit circles at (0,0) and (1,0) is (1 - 2u)^2,
    # expanded by hand from the 4x4 Sylvester determinant.
    p = P("1 u^2 + 1 v^2 - 1")
    q = P("1 u^2 - 2 u + 1 v^2")
    r = resultant_elim(p, q, 1)
    assert r == P("4 u^2 - 4 u + 1")
    u_only = r  # roots in u: 1/2, double
    t = substitute(u_only, [Poly.variable(1, 0), Poly.zero(1)])
    assert count_real_roots(t) == 1


def test_resultant_constant_convention():
    # one input constant in the eliminated variable: that input to the
    # other's degree
    p = P("1 x")  # constant in y
    q = P("1 y^2 + 1 x")
    assert resultant_elim(p, q, 1) == P("1 x^2")
    with pytest.raises(PolynomialError):
        resultant_elim(P("1 x"), P("2 x"), 1)


def test_resultant_univariate_value():
    # Res(t^2 - 1, t - 2) = p(2) for monic p: 3
    p = Poly(1, {(2,): 1, (0,): -1})
    q = Poly(1, {(1,): 1, (0,): -2})
    r = resultant_elim(p, q, 0)
    assert r == Poly.const(1, 3)


# ---------------------------------------------------------------- gcd


def test_gcd_planted_circle():
    circle = P("1 u^2 + 1 v^2 - 1")
    p = circle * P("1 u - 1 v")
    q = circle * P("1 u + 1 v")
    assert gcd_bivariate(p, q) == normalize(circle)


def test_gcd_coprime_is_one():
    assert gcd_bivariate(P("1 u"), P("1 v")) == Poly.const(2, 1)


def test_gcd_identical():
    p = P("2 u^2 - 4 v")
    g = gcd_bivariate(p, p)
    assert g == normalize(p)
    assert exact_div(p, g) is not None


def test_gcd_trivariate():
    shared = P("1 x^2 - 1 y")
    p = shared * P("1 z + 1")
    q = shared * P("1 x - 2 z")
    assert poly_gcd(p, q) == normalize(shared)


# ---------------------------------------------------------------- common factor


def test_planted_common_factor():
    a = P("1 x + 1 y") * P("1 x - 1")
    b = P("1 x + 1 y") * P("1 y - 2")
    assert has_common_factor(a, b)


def test_no_common_factor():
    assert not has_common_factor(P("1 x"), P("1 y"))


def test_common_factor_multiple():
    p = P("1 x^2 - 1 y^2")
    assert has_common_factor(p, P("1 x + 1 y"))


# ---------------------------------------------------------------- division


def test_exact_div_hit_and_miss():
    p = P("1 x^2 - 1 y^2")
    assert exact_div(p, P("1 x - 1 y")) == P("1 x + 1 y")
    assert exact_div(p, P("1 x - 2 y")) is None
    assert divides(P("1 x + 1 y"), p)


def test_exact_div_rational_scale():
    p = P("3 x^2")
    q = exact_div(p, P("2 x"))
    assert q == Poly(3, {(1, 0, 0): F(3, 2)})


# ---------------------------------------------------------------- square-free


def test_square_free_planted_square():
    p = (P("1 x - 1 y") ** 2) * P("1 x + 1 z")
    factors = square_free_part(p)
    prod = Poly.const(3, 1)
    for f in factors:
        prod = prod * f
    assert normalize(prod) == normalize(P("1 x - 1 y") * P("1 x + 1 z"))
    # pairwise co-prime
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            assert poly_gcd(factors[i], factors[j]).is_constant()


def test_square_free_already():
    p = P("1 x y + 1 z^2 + 3")
    assert square_free(p) == normalize(p)


def test_square_free_pure_power():
    assert square_free(P("1 x^3")) == P("1 x")


def test_square_free_constant_errors():
    with pytest.raises(PolynomialError):
        square_free_part(P("7"))


# ---------------------------------------------------------------- sturm


def test_sturm_sqrt2():
    p = Poly(1, {(2,): 1, (0,): -2})
    assert sturm_count(p, 0, 2) == 1


def test_sturm_no_real_roots():
    p = Poly(1, {(2,): 1, (0,): 1})
    assert sturm_count(p, -10, 10) == 0


def test_sturm_multiple_root_counts_distinct():
    # (t-1)^2 (t-3) has distinct roots {1, 3}
    t = Poly.variable(1, 0)
    p = (t - 1) ** 2 * (t - 3)
    assert sturm_count(p, 0, 4) == 2


def test_sturm_endpoint_root_errors():
    t = Poly.variable(1, 0)
    with pytest.raises(PolynomialError):
        sturm_count(t - 1, 1, 2)


def _interval_eval(cs, lo, hi):
    """Exact interval Horner for an ascending coefficient list."""
    a = b = F(cs[-1])
    for c in reversed(cs[:-1]):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


def _oracle_root_count(q, lo, hi):
    """Distinct real roots of a square-free integer univariate polynomial in
    (lo, hi), by interval-pruned exact bisection down to a width below any
    possible root separation.  Independent of the Sturm implementation."""
    cs = [0] * (q.total_degree() + 1)
    for e, c in q.terms.items():
        cs[e[0]] = int(c)
    d = max(len(cs) - 1, 2)
    height = max(max(abs(c) for c in cs), 2)
    sep = F(1, (d * (height + 2)) ** (3 * d))

    def val(t):
        return q.evaluate((t,))

    def rec(a, b):
        ilo, ihi = _interval_eval(cs, a, b)
        if ilo > 0 or ihi < 0:
            return 0
        if b - a < sep:
            return 1 if val(a) * val(b) < 0 else 0
        mid = (a + b) / 2
        if val(mid) == 0:
            step = min((b - a) / 8, sep / 2)
            return rec(a, mid - step) + 1 + rec(mid + step, b)
        return rec(a, mid) + rec(mid, b)

    return rec(lo, hi)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=-9, max_value=9), min_size=2, max_size=9),
       st.integers(min_value=-8, max_value=8))
def test_sturm_matches_bisection_oracle(coeffs, shift):
    if not any(coeffs[1:]):
        return
    p = Poly(1, {(i,): c for i, c in enumerate(coeffs) if c})
    if p.is_constant():
        return
    # compare on the square-free part: both sides count distinct roots
    g = poly_gcd(p, p.partial(0))
    sq = normalize(exact_div(p, g))
    if sq.is_constant():
        return
    a, b = F(-12) + F(shift, 7), F(12) + F(shift, 11)
    if sq.evaluate((a,)) == 0 or sq.evaluate((b,)) == 0:
        return
    assert sturm_count(sq, a, b) == _oracle_root_count(sq, a, b)


# ---------------------------------------------------------------- compose


def _origin_map():
    q = P("1 u^2 + 1 v^2 + 1")
    return RationalMap3(
        numerators=(P("2 u"), P("2 v"), P("1 u^2 + 1 v^2 - 1")),
        shared_denominator=q,
    )


def test_compose_height_function():
    f = P("1 z")
    got = compose_rational(f, _origin_map())
    assert got == P("1 u^2 + 1 v^2 - 1")


def test_compose_own_sphere_vanishes():
    f = P("1 x^2 + 1 y^2 + 1 z^2 - 1")
    assert compose_rational(f, _origin_map()).is_zero()


def test_compose_constant():
    f = P("5")
    assert compose_rational(f, _origin_map()) == Poly.const(2, 5)


def test_compose_plane_through_north_pole():
    # z - 1 pulls back to a nonzero constant (empty zero set)
    f = P("1 z - 1")
    got = compose_rational(f, _origin_map())
    assert got.is_constant() and not got.is_zero()


def test_compose_degree_bound():
    f = P("1 x^2 y + 1 z^3 - 2 x + 1")
    got = compose_rational(f, _origin_map())
    assert got.total_degree() <= 2 * f.total_degree()


def test_compose_multiplicative_up_to_constant():
    m = _origin_map()
    p = P("1 x + 1 y - 1")
    q = P("1 z^2 - 1 x")
    lhs = compose_rational(p * q, m)
    rhs = compose_rational(p, m) * compose_rational(q, m)
    # equal up to a rational constant
    quot = exact_div(rhs, lhs)
    assert quot is not None and quot.is_constant()


# ---------------------------------------------------------------- ring laws


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_ring_distributivity_at_random_points(data):
    def rand_poly():
        n_terms = data.draw(st.integers(1, 4))
        terms = {}
        for _ in range(n_terms):
            e = tuple(data.draw(st.integers(0, 2)) for _ in range(3))
            c = F(data.draw(st.integers(-5, 5)), data.draw(st.integers(1, 4)))
            if c:
                terms[e] = terms.get(e, F(0)) + c
        return Poly(3, terms)

    p, q, r = rand_poly(), rand_poly(), rand_poly()
    for _ in range(10):
        pt = tuple(F(data.draw(st.integers(-6, 6)), data.draw(st.integers(1, 5)))
                   for _ in range(3))
        lhs = ((p + q) * r).evaluate(pt)
        rhs = (p * r).evaluate(pt) + (q * r).evaluate(pt)
        assert lhs == rhs


# ---------------------------------------------------------------- text format


def test_format_matches_documented_example():
    p = Poly(3, {(2, 1, 0): F(3, 2), (0, 0, 3): F(-1), (0, 0, 0): F(7)})
    assert format_poly(p) == "3/2 x^2 y - 1 z^3 + 7"


def test_parse_whitespace_insensitive():
    assert P("3/2x^2y-1z^3+7") == P("3/2 x^2 y - 1 z^3 + 7")


def test_roundtrip_identity():
    for text in ["0", "1 u^2 + 1 v^2 - 1", "3/2 x^2 y - 1 z^3 + 7", "2 t - 1"]:
        p = parse_poly(text)
        assert parse_poly(format_poly(p), p.nvars) == p


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_roundtrip_random(data):
    nvars = data.draw(st.sampled_from([1, 2, 3]))
    n_terms = data.draw(st.integers(0, 5))
    terms = {}
    for _ in range(n_terms):
        e = tuple(data.draw(st.integers(0, 4)) for _ in range(nvars))
        c = F(data.draw(st.integers(-9, 9)), data.draw(st.integers(1, 7)))
        if c:
            terms[e] = c
    p = Poly(nvars, terms)
    assert parse_poly(format_poly(p), nvars) == p
