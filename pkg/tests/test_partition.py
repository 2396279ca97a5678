from fractions import Fraction

import pytest

from unitdist import rng as rngmod
from unitdist.partition import (
    PartitionError,
    build_first_partition,
    build_second_partition,
    choose_E,
    coprime_squarefree_factors,
    generic_rotation,
    make_point,
    pseudo_factorize,
)
from unitdist.poly import (
    Poly,
    divides,
    exact_div,
    normalize,
    parse_poly,
    poly_gcd,
)

F = Fraction
P = parse_poly


def random_points(n, seed, den=8, spread=40):
    rng = rngmod.stream(seed, "test-points")
    pts = set()
    while len(pts) < n:
        pts.add((F(rng.randint(-spread, spread), den),
                 F(rng.randint(-spread, spread), den),
                 F(rng.randint(-spread, spread), den)))
    return [make_point(*p) for p in sorted(pts)]


# ---------------------------------------------------------------- rotation


def test_rotation_is_exact_isometry():
    pts = random_points(20, 1)
    rotated, m, meta = generic_rotation(pts, seed=4)
    for p, q in zip(pts, rotated):
        assert (p.x**2 + p.y**2 + p.z**2) == (q.x**2 + q.y**2 + q.z**2)
    xs = [q.x for q in rotated]
    assert len(set(xs)) == len(xs)


def test_rotation_separates_collinear_chain():
    pts = [make_point(i, 0, 0) for i in range(12)]
    rotated, _, _ = generic_rotation(pts, seed=0)
    xs = [q.x for q in rotated]
    assert len(set(xs)) == len(xs)


# ---------------------------------------------------------------- first level


def test_single_point_t1():
    level = build_first_partition([make_point(0, 0, 0)], 1)
    assert level.k == 0
    assert level.product == Poly.const(3, 1)
    assert level.zero_set_points == []
    assert sum(len(v) for v in level.cells.values()) == 1


def test_partition_of_set_property():
    pts = random_points(40, 7)
    level = build_first_partition(pts, 8, strategy="exact", seed=2)
    in_cells = [i for v in level.cells.values() for i in v]
    everything = sorted(in_cells + list(level.zero_set_points))
    assert everything == list(range(40))
    # zero-set membership is exactly "product vanishes"
    for i, p in enumerate(pts):
        on_zero = level.product.evaluate(p) == 0
        assert on_zero == (i in set(level.zero_set_points))


def test_cube_vertices_exact_split():
    pts = [make_point(*v) for v in
           [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1),
            (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]]
    rotated, _, _ = generic_rotation(pts, seed=3)
    level = build_first_partition(rotated, 8, strategy="exact", seed=3)
    assert level.k == 3
    assert level.max_cell() <= 1
    for r in level.rounds:
        assert r.slack == 0


def test_exact_cell_bound_256():
    pts = random_points(256, 11)
    rotated, _, _ = generic_rotation(pts, seed=11)
    t = 64
    level = build_first_partition(rotated, t, strategy="exact", seed=11)
    assert level.k == 6
    assert all(r.slack == 0 for r in level.rounds)
    assert level.max_cell() <= -(-256 // 2**6)  # == 4


def test_heuristic_cell_bound():
    pts = random_points(128, 13)
    rotated, _, _ = generic_rotation(pts, seed=13)
    level = build_first_partition(rotated, 32, strategy="heuristic",
                                  epsilon=F(1, 10), seed=13)
    assert level.max_cell() <= level.cell_bound()
    for r in level.rounds:
        assert r.slack <= F(1, 10)


def test_vanishing_fit_when_t_exceeds_n():
    pts = random_points(5, 17)
    level = build_first_partition(pts, 9, seed=17)
    assert level.k == 0
    assert sorted(level.zero_set_points) == list(range(5))
    assert not level.product.is_constant()
    for p in pts:
        assert level.product.evaluate(p) == 0


def test_product_degree_growth():
    pts = random_points(64, 19)
    rotated, _, _ = generic_rotation(pts, seed=19)
    level = build_first_partition(rotated, 16, strategy="exact", seed=19)
    # degree <= sum of round basis degrees; constant is measured, not asserted
    assert level.product.total_degree() <= sum(r.basis_degree for r in level.rounds)


# ---------------------------------------------------------------- factor split


def test_coprime_factors_dedup():
    a = P("1 x^2 - 1 y")
    b = P("1 x^2 - 1 y") * P("1 z")
    factors = coprime_squarefree_factors([a, b])
    prods = normalize(factors[0] * factors[1]) if len(factors) == 2 else None
    assert len(factors) == 2
    assert normalize(a) in factors
    assert P("1 z") in factors


def test_coprime_factors_squares_removed():
    f = (P("1 x - 1 y") ** 2) * P("1 z")
    factors = coprime_squarefree_factors([f])
    assert sorted(q.total_degree() for q in factors) == [1, 1]
    for q in factors:
        assert divides(q, f)


def test_pseudo_factorize_assignments():
    # synthetic level: product x*y via two "bisectors"
    pts = [make_point(0, 5, 1), make_point(3, 0, 2), make_point(0, 0, 3),
           make_point(1, 1, 1)]
    level = build_first_partition(pts, 1)
    level.bisectors = [P("1 x"), P("1 y")]
    level.factors = coprime_squarefree_factors(level.bisectors)
    prod = level.factors[0] * level.factors[1]
    level.product = normalize(prod)
    level.zero_set_points = [0, 1, 2]
    split = pseudo_factorize(level, pts)
    assert [f.total_degree() for f in split.factors] == [1, 1]
    covered = sorted(i for _, idx in split.assignments for i in idx)
    assert covered == [0, 1, 2]
    # first-factor-wins: point 2 = (0,0,3) vanishes on both, lands in the first
    first_bucket = split.assignments[0][1]
    assert 2 in first_bucket
    # disjoint
    buckets = [set(idx) for _, idx in split.assignments]
    for i in range(len(buckets)):
        for j in range(i + 1, len(buckets)):
            assert not (buckets[i] & buckets[j])
    assert split.degree_sum() <= level.product.total_degree()


def test_trial_factorization_splits_quadric():
    level = build_first_partition([make_point(0, 0, 0)], 1)
    level.bisectors = [P("1 x^2 - 1 y^2")]
    level.factors = coprime_squarefree_factors(level.bisectors)
    prod = Poly.const(3, 1)
    for f in level.factors:
        prod = prod * f
    level.product = normalize(prod)
    level.zero_set_points = [0]
    split = pseudo_factorize(level, [make_point(0, 0, 0)])
    assert len(split.factors) == 2
    assert all(split.certified)
    assert {f.total_degree() for f in split.factors} == {1}


# ---------------------------------------------------------------- choose_E


def test_choose_E_balanced():
    assert choose_E(2**10, 2**10, 1) == 16


def test_choose_E_degree_dominates():
    assert choose_E(16, 2**12, 3) == 3


def test_choose_E_tiny_m():
    for D in (1, 2, 5):
        assert choose_E(1, 100, D) == D


def test_choose_E_exactness_near_boundary():
    # minimal E with E^5 n D^3 >= m^3, no floating point
    m, n, D = 1000, 1000, 1
    E = choose_E(m, n, D)
    assert E**5 * n * D**3 >= m**3
    assert (E - 1) ** 5 * n * D**3 < m**3


def test_choose_E_rejects_bad_input():
    with pytest.raises(ValueError):
        choose_E(5, 4, 1)
    with pytest.raises(ValueError):
        choose_E(1, 1, 0)


# ---------------------------------------------------------------- second level


def plane_points(n, seed):
    rng = rngmod.stream(seed, "plane")
    pts = set()
    while len(pts) < n:
        pts.add((0, F(rng.randint(-40, 40), 4), F(rng.randint(-40, 40), 4)))
    return [make_point(*p) for p in sorted(pts)]


def test_second_partition_on_plane():
    Q = plane_points(5, 23)
    f_i = P("1 x")
    sp = build_second_partition(Q, f_i, 4, strategy="exact", seed=23)
    # g is not divisible by x
    assert not divides(f_i, sp.g)
    assert sp.g.total_degree() <= sp.E_bound
    # partition-of-set
    in_cells = [i for v in sp.cells.values() for i in v]
    assert sorted(in_cells + list(sp.zero_set_points)) == list(range(5))
    # zero-set membership: g vanishes exactly on Q0
    for i, p in enumerate(Q):
        assert (sp.g.evaluate(p) == 0) == (i in set(sp.zero_set_points))


def test_second_partition_single_point():
    Q = [make_point(0, 3, 4)]
    f_i = P("1 x")
    sp = build_second_partition(Q, f_i, 1, strategy="exact", seed=29)
    total = sum(len(v) for v in sp.cells.values()) + len(sp.zero_set_points)
    assert total == 1


def test_second_partition_part_count():
    Q = plane_points(24, 31)
    f_i = P("1 x")
    D, E = 1, 4
    sp = build_second_partition(Q, f_i, E, strategy="exact", seed=31)
    assert sp.target_t == D * E * E
    assert sp.realized_parts >= sp.target_t
    assert sp.realized_parts < 4 * sp.target_t
    assert sp.fixups == 0


def test_second_partition_on_sphere():
    # rational points on the unit sphere via the tangent parametrization
    pts = []
    rng = rngmod.stream(37, "sphere")
    seen = set()
    while len(pts) < 12:
        u = F(rng.randint(-20, 20), 7)
        v = F(rng.randint(-20, 20), 7)
        if (u, v) in seen:
            continue
        seen.add((u, v))
        q = u * u + v * v + 1
        pts.append(make_point(2 * u / q, 2 * v / q, (q - 2) / q))
    f_i = P("1 x^2 + 1 y^2 + 1 z^2 - 1")
    sp = build_second_partition(pts, f_i, 2, strategy="exact", seed=37)
    assert not divides(f_i, sp.g)
    in_cells = [i for v in sp.cells.values() for i in v]
    assert sorted(in_cells + list(sp.zero_set_points)) == list(range(12))


def test_second_partition_requires_membership():
    with pytest.raises(PartitionError):
        build_second_partition([make_point(1, 0, 0)], P("1 x"), 3)


def test_second_partition_requires_E_at_least_D():
    Q = plane_points(3, 41)
    with pytest.raises(PartitionError):
        build_second_partition(Q, P("1 x"), 0)
