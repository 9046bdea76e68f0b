"""Gap spectra of circular sets: orbits, progression unions, greedy subsets."""

import random
from fractions import Fraction
from math import gcd, isqrt

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gaplab.gap_spectrum import (APUnionSpec, CircularSet, CollisionError,
                                 InsufficientDenominatorError,
                                 SubsetViolationError, TooFewPointsError, Wrap,
                                 ap_union_gap_check, ap_union_points,
                                 arc_counting_diagnostic, fractional_orbit,
                                 gap_bound_check, greedy_max_distinct,
                                 sidon_subset, spectrum, three_gap_check)


def test_orbit_of_five_eighths():
    rep = three_gap_check(Fraction(5, 8), 4)
    assert rep.passed
    assert rep.distinct_gaps == (Fraction(1, 8), Fraction(1, 4), Fraction(3, 8))
    assert rep.reference_distances == rep.distinct_gaps
    assert (rep.first_label, rep.last_label) == (2, 3)


def test_orbit_labels_are_multipliers():
    b = fractional_orbit(Fraction(5, 8), 4)
    assert {(n * 5) % 8 for n in b.labels} == {p.value * 8 for p in b.points}


def test_single_point_orbit_has_closing_arc_only():
    rep = three_gap_check(Fraction(2, 5), 1)
    assert rep.passed
    assert rep.distinct_gaps == (Fraction(1),)


def test_colliding_multiples_rejected():
    with pytest.raises(InsufficientDenominatorError):
        fractional_orbit(Fraction(5, 8), 8)


def test_spectrum_needs_two_points():
    with pytest.raises(TooFewPointsError):
        spectrum(CircularSet.from_values([Fraction(1, 3)]))


@given(st.integers(2, 400), st.data())
@settings(deadline=None, max_examples=80)
def test_three_gap_bound_randomized(q, data):
    p = data.draw(st.integers(1, q - 1))
    # p/q may reduce; distinctness needs n below the reduced denominator
    den = Fraction(p, q).denominator
    assume(den > 1)
    n = data.draw(st.integers(1, den - 1))
    rep = three_gap_check(Fraction(p, q), n)
    assert rep.passed
    assert len(rep.distinct_gaps) <= 3
    assert set(rep.distinct_gaps) <= set(rep.reference_distances)


@given(st.lists(st.fractions(min_value=0, max_value=Fraction(99, 100),
                             max_denominator=300),
                min_size=2, max_size=30, unique=True))
@settings(deadline=None, max_examples=60)
def test_wrapped_gaps_sum_to_one(vals):
    a = CircularSet.from_values(vals)
    spec = spectrum(a)
    assert sum(spec.gaps, Fraction(0)) == 1
    assert all(g > 0 for g in spec.gaps)
    assert sum(spec.multiplicity.values()) == len(spec.gaps)


def test_unwrapped_spectrum_drops_closing_arc():
    a = CircularSet.from_values([Fraction(0), Fraction(1, 8), Fraction(1, 2)],
                                wrap=Wrap.EXCLUDE)
    spec = spectrum(a)
    assert spec.gaps == (Fraction(1, 8), Fraction(3, 8))


def test_ap_union_within_three_k():
    spec = APUnionSpec(Fraction(3, 97), ((Fraction(0), 5), (Fraction(1, 3), 7)))
    rep = ap_union_gap_check(spec)
    assert rep.passed
    assert rep.k == 2 and rep.total_points == 12
    assert len(rep.distinct_gaps) <= 6


def test_ap_union_collision_detected():
    spec = APUnionSpec(Fraction(1, 10), ((Fraction(0), 3), (Fraction(1, 10), 3)))
    with pytest.raises(CollisionError):
        ap_union_points(spec)


@given(st.integers(1, 4), st.data())
@settings(deadline=None, max_examples=40)
def test_ap_union_bound_randomized(k, data):
    q = data.draw(st.integers(300, 2000))
    p = data.draw(st.integers(1, q - 1))
    arms = []
    for i in range(k):
        beta = Fraction(data.draw(st.integers(0, q - 1)), q) + Fraction(i, 7 * q)
        arms.append((beta, data.draw(st.integers(1, 15))))
    try:
        rep = ap_union_gap_check(APUnionSpec(Fraction(p, q), tuple(arms)))
    except CollisionError:
        return
    assert rep.passed
    assert len(rep.distinct_gaps) <= 3 * k


def greedy_target(n):
    root = isqrt(2 * n)
    return root - 1 if root * root == 2 * n else root


def test_greedy_consecutive_differences_distinct():
    for q, n in ((233, 100), (1009, 500), (4999, 144)):
        b = fractional_orbit(Fraction(89 % q, q), n)
        a = greedy_max_distinct(b)
        diffs = [a.values()[i + 1] - a.values()[i] for i in range(len(a) - 1)]
        assert len(set(diffs)) == len(diffs)
        assert len(diffs) >= greedy_target(n) - 1
        assert a.issubset(b)


def test_greedy_needs_two_points():
    with pytest.raises(TooFewPointsError):
        greedy_max_distinct(CircularSet.from_values([Fraction(0)]))


def test_sidon_subset_has_distinct_differences():
    b = fractional_orbit(Fraction(89, 233), 60)
    s = sidon_subset(b)
    vals = s.values()
    diffs = [(vals[j] - vals[i]) % 1 for i in range(len(vals))
             for j in range(len(vals)) if i != j]
    assert len(set(diffs)) == len(diffs)


def test_gap_bound_for_random_subsets():
    rng = random.Random(2)
    for _ in range(15):
        q = rng.randrange(80, 3000)
        n = rng.randrange(4, min(q - 1, 120))
        p = rng.randrange(1, q)
        while gcd(p, q) != 1:
            p += 1
        b = fractional_orbit(Fraction(p % q, q), n)
        k = rng.randrange(2, n + 1)
        a = CircularSet.from_points(rng.sample(b.points, k))
        rep = gap_bound_check(a, b)
        assert rep.passed
        assert rep.lhs == (rep.distinct_gaps - 1) ** 2 * rep.b_size
        assert rep.rhs == 2 * rep.sumset_size ** 2


def test_gap_bound_rejects_non_subset():
    b = fractional_orbit(Fraction(5, 8), 4)
    a = CircularSet.from_values([Fraction(1, 3)])
    with pytest.raises(SubsetViolationError):
        gap_bound_check(a, b)


def test_arc_counting_pair_count_in_bounds():
    rng = random.Random(4)
    for _ in range(15):
        q = rng.randrange(60, 2000)
        nb = rng.randrange(4, 40)
        p = rng.randrange(1, q)
        while gcd(p, q) != 1:
            p += 1
        b = fractional_orbit(Fraction(p % q, q), nb)
        na = rng.randrange(3, nb + 1)
        a = CircularSet.from_points(rng.sample(b.points, na))
        k = rng.randrange(1, 8)
        rep = arc_counting_diagnostic(a, b, k)
        assert rep.passed
        assert rep.lower <= rep.pair_count <= rep.upper
        assert rep.upper <= rep.sum_cap


def test_arc_counting_needs_three_points():
    b = fractional_orbit(Fraction(5, 8), 4)
    a = CircularSet.from_points(b.points[:2])
    with pytest.raises(TooFewPointsError):
        arc_counting_diagnostic(a, b, 2)
