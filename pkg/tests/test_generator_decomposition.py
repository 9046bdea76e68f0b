"""Decomposition of differences over neighbour gaps, with the span oracle."""

import random
from fractions import Fraction

import pytest

from gaplab.gap_spectrum import CircularSet, SubsetViolationError, fractional_orbit
from gaplab.generator_decomposition import (NonMemberTargetError,
                                            OracleScaleError,
                                            PremiseViolationError, Side,
                                            SpanOracle, decompose,
                                            neighbour_gaps, verify_generation)
from gaplab.sumset_engine import minimal_difference_cover


def tenths(*nums):
    return CircularSet.from_values([Fraction(n, 10) for n in nums])


def test_neighbour_gaps_of_worked_pair():
    b = tenths(0, 1, 2, 3)
    c = tenths(0, 3)
    rep = neighbour_gaps(b, c)
    assert rep.r_minus == (Fraction(1, 10), Fraction(7, 10))
    assert rep.r_plus == (Fraction(1, 10), Fraction(7, 10))


def test_decompose_both_sides():
    b = tenths(0, 1, 2, 3)
    c = tenths(0, 3)
    for side in (Side.MINUS, Side.PLUS):
        cert = decompose(Fraction(9, 10), b, c, side)
        assert cert.parts == (Fraction(7, 10), Fraction(1, 10), Fraction(1, 10))
        assert cert.total() == Fraction(9, 10)


def test_certificate_tree_arcs_are_consistent():
    b = tenths(0, 1, 2, 3)
    c = tenths(0, 3)
    cert = decompose(Fraction(9, 10), b, c, Side.MINUS)

    def walk(node):
        arc = Fraction(node["arc"])
        if node.get("generator"):
            return arc
        pieces = [walk(child) for child in node["pieces"]]
        assert sum(pieces, Fraction(0)) == arc
        return arc

    assert walk(cert.tree) == Fraction(9, 10)


def test_zero_decomposes_empty():
    b = tenths(0, 1, 2, 3)
    c = tenths(0, 3)
    cert = decompose(Fraction(0), b, c, Side.MINUS)
    assert cert.parts == ()
    assert cert.total() == 0


def test_non_member_target_rejected():
    b = tenths(0, 1, 2, 3)
    c = tenths(0, 3)
    with pytest.raises(NonMemberTargetError):
        decompose(Fraction(1, 2), b, c, Side.MINUS)


def test_premise_violation_names_a_missing_difference():
    b = tenths(0, 1, 2, 3)
    c = tenths(0)
    with pytest.raises(PremiseViolationError):
        neighbour_gaps(b, c)


def test_cover_must_be_subset():
    b = tenths(0, 1, 2, 3)
    c = CircularSet.from_values([Fraction(1, 2)])
    with pytest.raises(SubsetViolationError):
        neighbour_gaps(b, c)


def test_span_oracle_membership():
    oracle = SpanOracle((Fraction(3, 10),))
    members = {Fraction(0), Fraction(3, 10), Fraction(3, 5), Fraction(9, 10)}
    for k in range(10):
        v = Fraction(k, 10)
        assert (v in oracle) == (v in members)


def test_span_oracle_reachable_scaled_matches_fractions():
    oracle = SpanOracle((Fraction(1, 6), Fraction(1, 4)))
    fr = oracle.as_fractions()
    scaled = oracle.reachable_scaled(12)
    assert fr == {Fraction(n, 12) for n in scaled}
    assert Fraction(1, 6) + Fraction(1, 4) in fr


def test_span_oracle_scale_cap():
    huge = Fraction(1, (1 << 25) + 1)
    with pytest.raises(OracleScaleError):
        SpanOracle((huge,), dp_limit=1 << 20, set_cap=1000)


def test_full_verification_of_worked_pair():
    b = tenths(0, 1, 2, 3)
    c = tenths(0, 3)
    rep = verify_generation(b, c)
    assert rep.passed
    assert rep.decomposed_minus == rep.universe_size
    assert rep.decomposed_plus == rep.universe_size
    assert rep.spans_agree
    assert rep.mismatches == ()


def test_identity_cover_always_works():
    b = fractional_orbit(Fraction(7, 41), 8)
    rep = verify_generation(b, b)
    assert rep.passed


def test_randomized_instances_with_minimal_covers():
    rng = random.Random(13)
    for _ in range(8):
        q = rng.randrange(12, 60)
        n = rng.randrange(4, min(12, q))
        vals = sorted(rng.sample(range(q), n))
        b = CircularSet.from_values([Fraction(v, q) for v in vals])
        cov = minimal_difference_cover(b.to_exact_set())
        c = CircularSet.from_values([p.value for p in cov.cover])
        rep = verify_generation(b, c)
        assert rep.passed, (q, vals)
        assert rep.cross_closure and rep.spans_agree


def test_plus_side_mirrors_minus_side_of_reflection():
    rng = random.Random(21)
    q = 37
    vals = sorted(rng.sample(range(q), 7))
    b = CircularSet.from_values([Fraction(v, q) for v in vals])
    cov = minimal_difference_cover(b.to_exact_set())
    c = CircularSet.from_values([p.value for p in cov.cover])
    rep = neighbour_gaps(b, c)
    refl_b = CircularSet.from_values([(-p.value) % 1 for p in b.points])
    refl_c = CircularSet.from_values([(-p.value) % 1 for p in c.points])
    mirror = neighbour_gaps(refl_b, refl_c)
    assert rep.r_plus == mirror.r_minus
    assert rep.r_minus == mirror.r_plus
