"""Progression-free sets, cover forcing, and lattice projections."""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaplab.extremal_constructions import (ConstructionRangeError,
                                           ap_free_check, behrend_set,
                                           build_cover_forcing_set,
                                           exact_ap_free, greedy_ap_free,
                                           lattice_projection,
                                           max_ap_free_sizes)
from gaplab.gap_spectrum import CircularSet, CollisionError
from gaplab.generator_decomposition import verify_generation

MAX_SIZES_40 = (1, 2, 2, 3, 4, 4, 4, 4, 5, 5, 6, 6, 7, 8, 8, 8, 8, 8, 8, 9,
                9, 9, 9, 10, 10, 11, 11, 11, 11, 12, 12, 13, 13, 13, 13, 14,
                14, 14, 14, 15)


def brute_max_ap_free(n):
    best = 0
    for size in range(n, 0, -1):
        for cand in combinations(range(1, n + 1), size):
            if ap_free_check(cand):
                return size
    return best


def test_ap_free_check_basics():
    assert ap_free_check([1, 2, 4, 5])
    assert not ap_free_check([1, 2, 3])
    assert not ap_free_check([2, 5, 8])
    assert ap_free_check([])
    assert ap_free_check([7])


def test_max_sizes_against_brute_force():
    sizes = max_ap_free_sizes(12)
    assert sizes == tuple(brute_max_ap_free(n) for n in range(1, 13))


def test_max_sizes_frozen_table():
    assert max_ap_free_sizes(40) == MAX_SIZES_40


def test_max_sizes_grow_by_at_most_one():
    sizes = max_ap_free_sizes(40)
    assert all(0 <= b - a <= 1 for a, b in zip(sizes, sizes[1:]))


def test_exact_witnesses():
    for n in (10, 20, 40):
        w = exact_ap_free(n)
        assert ap_free_check(w)
        assert len(w) == MAX_SIZES_40[n - 1]
        assert all(1 <= v <= n for v in w)
    assert exact_ap_free(10) == (1, 2, 4, 8, 9)
    assert exact_ap_free(20) == (1, 2, 6, 7, 9, 14, 15, 18, 20)


def test_greedy_ap_free_is_ap_free():
    for n in (10, 64, 200):
        g = greedy_ap_free(n)
        assert ap_free_check(g)
        assert all(1 <= v <= n for v in g)


def test_digit_sphere_values():
    rep = behrend_set(125)
    assert rep.points == (5, 17, 20, 65, 68, 80)
    assert (rep.base, rep.digit_count, rep.radius_sq) == (4, 4, 2)
    assert ap_free_check(rep.points)
    for n, size in ((50, 3), (300, 6), (1000, 12)):
        r = behrend_set(n)
        assert r.size == size
        assert ap_free_check(r.points)
        assert all(1 <= v <= n for v in r.points)


@given(st.integers(10, 400))
@settings(deadline=None, max_examples=30)
def test_digit_sphere_always_ap_free(n):
    rep = behrend_set(n)
    assert ap_free_check(rep.points)
    assert all(1 <= v <= n for v in rep.points)


def test_cover_forcing_worked_example():
    rep = build_cover_forcing_set(4, (1, 2))
    assert rep.x == 16
    assert rep.points == (1, 2, 14, 15)
    assert rep.representation_counts == {14: 1, 12: 1}
    assert rep.sumset_size == 9
    assert rep.forced_block == (14, 15)
    assert rep.cover == (1, 2, 14, 15) and rep.cover_exact
    assert rep.passed


def test_cover_forcing_with_exact_seeds():
    for n in (10, 16):
        rep = build_cover_forcing_set(n, exact_ap_free(n))
        assert rep.passed
        assert rep.cover_exact
        assert len(rep.cover) >= len(rep.seed)
        assert set(rep.forced_block) <= set(rep.cover)


def test_cover_forcing_validation():
    with pytest.raises(ConstructionRangeError):
        build_cover_forcing_set(4, (1, 2, 3))  # 1,2,3 is a progression
    with pytest.raises(ConstructionRangeError):
        build_cover_forcing_set(4, (0, 1))  # outside [1, n]
    with pytest.raises(ConstructionRangeError):
        build_cover_forcing_set(4, (1, 2, 4))  # more than n/2 elements
    with pytest.raises(ConstructionRangeError):
        build_cover_forcing_set(4, (1, 1))  # duplicates


def test_lattice_projection_distinct_instance():
    rep = lattice_projection((Fraction(5, 101), Fraction(23, 101)), (4, 4))
    assert len(rep.points) == 16
    assert [c.value for c in rep.corners] == [Fraction(0), Fraction(15, 101),
                                              Fraction(69, 101), Fraction(84, 101)]
    assert rep.cover_equal
    assert rep.sumset_size == 49
    assert rep.sumset_size <= rep.doubling_bound == 64
    assert rep.passed


def test_lattice_projection_collision_detected():
    with pytest.raises(CollisionError):
        lattice_projection((Fraction(5, 64), Fraction(23, 64)), (4, 4))


def test_lattice_corners_feed_the_decomposer():
    rep = lattice_projection((Fraction(5, 101), Fraction(23, 101)), (4, 4))
    b = CircularSet.from_points(rep.points.points)
    c = CircularSet.from_points(rep.corners.points)
    gen = verify_generation(b, c)
    assert gen.passed
    assert gen.c_size <= rep.corner_bound
