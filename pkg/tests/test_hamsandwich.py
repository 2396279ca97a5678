from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from unitdist.hamsandwich import (
    BisectionError,
    MonomialBasis,
    bisect_sets,
    bisect_with_polynomial,
    certificate_from_values,
    certify,
    compose_from_basis,
    find_bisecting_hyperplane,
    full_basis,
    lift_points,
    restricted_basis,
)
from unitdist import rng as rngmod
from unitdist.poly import Poly, divides, parse_poly

F = Fraction


# ---------------------------------------------------------------- bases


def test_full_basis_degree1():
    b = full_basis(1)
    assert b.monomials == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_full_basis_counts():
    assert len(full_basis(2)) == 9
    assert len(full_basis(3)) == 19
    for d in range(1, 11):
        assert len(full_basis(d)) == comb(d + 3, 3) - 1


def test_full_basis_rejects_zero_degree():
    with pytest.raises(ValueError):
        full_basis(0)


def test_restricted_basis_cube_boundary():
    # s = 8 = (6/3)^3 stays in the cube regime: exponents <= 2, 26 monomials
    b = restricted_basis((2, 2, 2), 8, 6)
    assert len(b) == 26
    assert all(max(e) <= 2 for e in b.monomials)
    assert (0, 0, 0) not in b.monomials
    assert b.max_degree == 6


def test_restricted_basis_large_s():
    b = restricted_basis((2, 2, 2), 100, 6)
    assert len(b) >= 100
    # every member breaks the leading pattern
    assert all(e[0] < 2 or e[1] < 2 or e[2] < 2 for e in b.monomials)
    # box cap: minimal box bound, so the one-smaller box must be short of 100
    cap = b.max_degree // 3
    smaller = [
        (a, bb, d)
        for a in range(cap)
        for bb in range(cap)
        for d in range(cap)
        if (a < 2 or bb < 2 or d < 2) and a + bb + d > 0
    ]
    assert len(smaller) < 100


def test_restricted_basis_plane_blocks_x():
    b = restricted_basis((1, 0, 0), 10, 1)
    assert all(e[0] == 0 for e in b.monomials)


def test_restricted_basis_errors():
    with pytest.raises(ValueError):
        restricted_basis((1, 0, 0), 0, 1)
    with pytest.raises(ValueError):
        restricted_basis((0, 0, 0), 5, 0)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_restricted_basis_blocks_divisibility(data):
    # a random combination over the restricted basis is never divisible by
    # a polynomial with the generating leading term
    lead = data.draw(st.sampled_from([(1, 0, 0), (1, 1, 0), (2, 0, 1), (0, 2, 0)]))
    D = sum(lead)
    s = data.draw(st.integers(1, 40))
    basis = restricted_basis(lead, s, D)
    # f: leading term plus a tail of smaller monomials
    f_terms = {lead: F(1)}
    for _ in range(data.draw(st.integers(0, 3))):
        e = tuple(data.draw(st.integers(0, max(D - 1, 0))) for _ in range(3))
        if sum(e) < D or (sum(e) == D and e < lead):
            c = data.draw(st.integers(-3, 3))
            if c:
                f_terms[e] = f_terms.get(e, F(0)) + c
    f = Poly(3, f_terms)
    combo_terms = {}
    for e in basis.monomials[: data.draw(st.integers(1, min(8, len(basis))))]:
        c = data.draw(st.integers(-4, 4))
        if c:
            combo_terms[e] = F(c)
    combo_terms[(0, 0, 0)] = F(data.draw(st.integers(-3, 3)))
    combo = Poly(3, combo_terms)
    if combo.is_zero():
        return
    assert not divides(f, combo)


# ---------------------------------------------------------------- hyperplanes


def test_two_singletons_line_through_both():
    sets = [[(0, 0)], [(1, 1)]]
    hp, cert = find_bisecting_hyperplane(sets, strategy="exact")
    assert cert.slack == 0
    assert hp.value((0, 0)) == 0
    assert hp.value((1, 1)) == 0


def test_median_of_collinear_points():
    sets = [[(0,), (1,), (2,), (3,)]]
    hp, cert = find_bisecting_hyperplane(sets, strategy="exact")
    assert cert.slack == 0
    b = cert.balances[0]
    assert max(b.pos, b.neg) <= 2


def test_three_sets_in_r3_exact():
    rng = rngmod.stream(7, "hs-test")
    sets = [[(F(rng.randint(-40, 40), 8), F(rng.randint(-40, 40), 8),
              F(rng.randint(-40, 40), 8)) for _ in range(9)] for _ in range(3)]
    hp, cert = find_bisecting_hyperplane(sets, strategy="exact")
    assert cert.slack == 0
    # exhaustive recheck of the returned plane
    recheck = certify(hp, sets)
    assert recheck == cert
    for b in recheck.balances:
        assert max(b.pos, b.neg) <= 5


def test_too_many_sets_rejected():
    with pytest.raises(ValueError):
        find_bisecting_hyperplane([[(0, 1)], [(1, 0)], [(2, 2)]])


def test_certificate_recomputable():
    rng = rngmod.stream(3, "hs-cert")
    sets = [[(F(rng.randint(-9, 9), 3), F(rng.randint(-9, 9), 3)) for _ in range(5)]
            for _ in range(2)]
    hp, cert = find_bisecting_hyperplane(sets, strategy="exact")
    assert certify(hp, sets) == cert


# ---------------------------------------------------------------- polynomials


def test_symmetric_set_bisected_by_degree_one():
    pts = [(1, 2, 1), (1, 2, -1), (-3, 0, 2), (-3, 0, -2), (0, 1, 5), (0, 1, -5)]
    poly, cert = bisect_with_polynomial([pts], full_basis(1), strategy="exact")
    assert cert.slack == 0
    balance = cert.balances[0]
    assert max(balance.pos, balance.neg) <= 3
    assert poly.total_degree() <= 1


def test_nine_small_sets_degree_two():
    rng = rngmod.stream(11, "hs-nine")
    sets = [[(F(rng.randint(-20, 20), 4), F(rng.randint(-20, 20), 4),
              F(rng.randint(-20, 20), 4)) for _ in range(2)] for _ in range(9)]
    poly, cert = bisect_with_polynomial(sets, full_basis(2), strategy="exact")
    assert cert.slack == 0
    assert poly.total_degree() <= 2
    # recompute certificate by exact sign evaluation of the polynomial
    for s, bal in zip(sets, cert.balances):
        pos = sum(1 for p in s if poly.evaluate(p) > 0)
        neg = sum(1 for p in s if poly.evaluate(p) < 0)
        on = len(s) - pos - neg
        assert (pos, neg, on) == (bal.pos, bal.neg, bal.on)


def test_blocked_basis_never_divisible_by_plane():
    # sets inside Z(x); basis excludes x entirely, so the returned
    # polynomial is never divisible by x
    rng = rngmod.stream(5, "hs-blocked")
    sets = [[(0, F(rng.randint(-9, 9), 2), F(rng.randint(-9, 9), 2))
             for _ in range(4)] for _ in range(2)]
    basis = restricted_basis((1, 0, 0), 8, 1)
    poly, cert = bisect_with_polynomial(sets, basis, strategy="exact")
    assert cert.slack == 0
    assert not divides(parse_poly("1 x"), poly)


def test_poly_degree_bounded_by_basis():
    rng = rngmod.stream(13, "hs-deg")
    sets = [[(F(rng.randint(-30, 30), 8), F(rng.randint(-30, 30), 8),
              F(rng.randint(-30, 30), 8)) for _ in range(6)] for _ in range(4)]
    basis = full_basis(2)
    poly, cert = bisect_with_polynomial(sets, basis, strategy="exact")
    assert poly.total_degree() <= basis.max_degree


def test_heuristic_meets_epsilon():
    rng = rngmod.stream(17, "hs-heur")
    sets = [[(F(rng.randint(-50, 50), 8), F(rng.randint(-50, 50), 8),
              F(rng.randint(-50, 50), 8)) for _ in range(16)] for _ in range(6)]
    poly, cert = bisect_with_polynomial(
        sets, full_basis(2), strategy="heuristic", epsilon=F(1, 10))
    assert cert.slack <= F(1, 10)


def test_exact_strategy_many_sets_via_search():
    # enumeration budget forces the certified search path
    rng = rngmod.stream(19, "hs-many")
    sets = [[(F(rng.randint(-99, 99), 16), F(rng.randint(-99, 99), 16),
              F(rng.randint(-99, 99), 16)) for _ in range(8)] for _ in range(12)]
    out = bisect_sets(sets, full_basis(3), strategy="exact", budget=10)
    assert out.certificate.slack == 0
    assert out.mode == "search"


def test_weighted_degenerate_lift():
    # all points of one set share (y, z): under a basis blocking x they lift
    # to one point, which must land on the hyperplane
    sets = [[(1, 2, 3), (5, 2, 3), (9, 2, 3)], [(0, 0, 1), (0, 4, 5)]]
    basis = restricted_basis((1, 0, 0), 8, 1)
    poly, cert = bisect_with_polynomial(sets, basis, strategy="exact")
    assert cert.slack == 0
    b0 = cert.balances[0]
    assert b0.pos == 0 and b0.neg == 0 and b0.on == 3
