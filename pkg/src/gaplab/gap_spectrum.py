"""Gap spectra of finite circular sets, and what sumset growth says about them.

A CircularSet is a finite subset of R/Z held in anticlockwise order.  Its
spectrum is the list of consecutive arc lengths; the wrap policy decides
whether the closing arc (last point back to the first) is included.  On top
of the spectrum sit the classical verifications: the three-gap property of
orbits {n*alpha}, its union-of-progressions generalization, the sumset bound
on the number of distinct gaps of any subset, the arc-partition pair count
that proves it, a greedy subset maximizing distinct gaps, and greedy Sidon
extraction.  Everything is exact; verdicts are equalities and inequalities
between Fractions and integers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .exact_torus import (
    DuplicatePointError,
    RationalLike,
    TorusPoint,
    as_rational,
    embed_reals,
    reduce_mod1,
)
from .sumset_engine import FiniteExactSet, sumset


class TooFewPointsError(ValueError):
    """The operation needs more points than the set provides."""


class InsufficientDenominatorError(ValueError):
    """alpha = p/q with q <= N cannot produce N distinct multiples mod 1."""


class CollisionError(ValueError):
    """Two generated points coincide; the offending parameters are reported."""


class SubsetViolationError(ValueError):
    """A is required to be a subset of B but is not."""


class Wrap(str, Enum):
    INCLUDE = "include_wrap"
    EXCLUDE = "exclude_wrap"


@dataclass(frozen=True)
class CircularSet:
    """Finite subset of R/Z in strictly increasing representative order.

    labels, when present, tag each point with a distinct integer (orbits use
    the multiplier n of the point {n*alpha}).  The wrap policy travels with
    the set: torus-native sets include the closing arc, sets embedded from
    the reals exclude it.
    """

    points: tuple
    labels: Optional[tuple] = None
    wrap: Wrap = Wrap.INCLUDE

    def __post_init__(self) -> None:
        for a, b in zip(self.points, self.points[1:]):
            if not a < b:
                raise DuplicatePointError(f"points not strictly increasing at {a}")
        if self.labels is not None:
            if len(self.labels) != len(self.points):
                raise ValueError("labels must match points one to one")
            if len(set(self.labels)) != len(self.labels):
                raise ValueError("labels must be distinct")
        object.__setattr__(self, "wrap", Wrap(self.wrap))

    @classmethod
    def from_values(cls, values: Iterable[RationalLike], labels: Optional[Sequence[int]] = None,
                    wrap: Wrap = Wrap.INCLUDE) -> "CircularSet":
        pts = [reduce_mod1(v) for v in values]
        if labels is None:
            order = sorted(range(len(pts)), key=lambda i: pts[i])
            return cls(tuple(pts[i] for i in order), None, wrap)
        if len(labels) != len(pts):
            raise ValueError("labels must match points one to one")
        order = sorted(range(len(pts)), key=lambda i: pts[i])
        return cls(tuple(pts[i] for i in order), tuple(labels[i] for i in order), wrap)

    @classmethod
    def from_points(cls, points: Iterable[TorusPoint], wrap: Wrap = Wrap.INCLUDE) -> "CircularSet":
        return cls(tuple(sorted(points)), None, wrap)

    @classmethod
    def from_reals(cls, xs: Iterable[RationalLike]) -> "CircularSet":
        return cls(embed_reals(xs), None, Wrap.EXCLUDE)

    def values(self) -> tuple:
        return tuple(p.value for p in self.points)

    def point_set(self) -> frozenset:
        return frozenset(self.points)

    def to_exact_set(self) -> FiniteExactSet:
        return FiniteExactSet.torus(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return p in self.point_set()

    def issubset(self, other: "CircularSet") -> bool:
        return self.point_set() <= other.point_set()


@dataclass(frozen=True)
class GapSpectrum:
    """Consecutive arc lengths of a circular set, with their multiplicities."""

    gaps: tuple
    distinct: frozenset
    multiplicity: dict

    @property
    def size(self) -> int:
        return len(self.distinct)


def spectrum(a: CircularSet) -> GapSpectrum:
    """Anticlockwise consecutive differences of a, honouring its wrap policy."""
    if len(a) < 2:
        raise TooFewPointsError("a spectrum needs at least two points")
    vals = a.values()
    gaps = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    if a.wrap is Wrap.INCLUDE:
        gaps.append(vals[0] + 1 - vals[-1])
    mult = Counter(gaps)
    return GapSpectrum(tuple(gaps), frozenset(mult), dict(mult))


def fractional_orbit(alpha: RationalLike, n_points: int) -> CircularSet:
    """The orbit { {alpha}, {2 alpha}, ..., {N alpha} }, labeled by multiplier.

    alpha = p/q must have q > N so the N points are pairwise distinct; this
    is the exact-arithmetic model of an irrational rotation at finite scale.
    """
    alpha = as_rational(alpha) % 1
    if n_points < 1:
        raise ValueError("need at least one point")
    p, q = alpha.numerator, alpha.denominator
    if q <= n_points:
        raise InsufficientDenominatorError(
            f"alpha = {alpha} has denominator {q} <= N = {n_points}; multiples would collide")
    residues = sorted(((n * p) % q, n) for n in range(1, n_points + 1))
    return CircularSet(tuple(TorusPoint(Fraction(r, q)) for r, _ in residues),
                       tuple(n for _, n in residues), Wrap.INCLUDE)


@dataclass(frozen=True)
class ThreeGapReport:
    """Verdict that an orbit's gaps take at most three values, all reference distances."""

    alpha: Fraction
    n_points: int
    distinct_gaps: tuple
    reference_distances: tuple
    first_label: int
    last_label: int
    passed: bool


def three_gap_check(alpha: RationalLike, n_points: int) -> ThreeGapReport:
    """Check the gaps of the N-point orbit of alpha against the three distances.

    The references are the pairwise distances among the three real points
    {a_N alpha} - 1, 0 and {a_1 alpha}, where a_1 and a_N label the smallest
    and largest orbit point: 1 - b_N, b_1, and their sum.  Every gap,
    including the closing arc, must equal one of them.
    """
    orbit = fractional_orbit(alpha, n_points)
    b1 = orbit.points[0].value
    bn = orbit.points[-1].value
    refs = tuple(sorted({b1, 1 - bn, b1 + 1 - bn}))
    if n_points == 1:
        # A single point has just the closing arc of length 1 = b_1 + 1 - b_N.
        return ThreeGapReport(as_rational(alpha) % 1, 1, (Fraction(1),), refs,
                              orbit.labels[0], orbit.labels[-1], True)
    distinct = tuple(sorted(spectrum(orbit).distinct))
    passed = len(distinct) <= 3 and set(distinct) <= set(refs)
    return ThreeGapReport(as_rational(alpha) % 1, n_points, distinct, refs,
                          orbit.labels[0], orbit.labels[-1], passed)


@dataclass(frozen=True)
class APUnionSpec:
    """k arithmetic progressions beta_i + n_i*alpha, 1 <= n_i <= N_i, sharing one alpha."""

    alpha: Fraction
    arms: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", as_rational(self.alpha) % 1)
        arms = tuple((reduce_mod1(beta), int(length)) for beta, length in self.arms)
        if not arms:
            raise ValueError("need at least one progression")
        if any(length < 1 for _, length in arms):
            raise ValueError("every progression needs length >= 1")
        object.__setattr__(self, "arms", arms)

    @property
    def k(self) -> int:
        return len(self.arms)


def ap_union_points(spec: APUnionSpec) -> CircularSet:
    """The union of the k progressions as a circular set; collisions are errors."""
    seen: Dict[TorusPoint, tuple] = {}
    for i, (beta, length) in enumerate(spec.arms, start=1):
        step = spec.alpha
        val = beta.value
        for n in range(1, length + 1):
            val = (val + step) % 1
            pt = TorusPoint(val)
            if pt in seen:
                raise CollisionError(
                    f"point {pt} generated twice: arm {seen[pt]} and arm {(i, n)}")
            seen[pt] = (i, n)
    return CircularSet.from_points(seen, Wrap.INCLUDE)


@dataclass(frozen=True)
class APUnionGapReport:
    """Verdict that a union of k progressions has at most 3k distinct gaps."""

    k: int
    total_points: int
    distinct_gaps: tuple
    bound: int
    passed: bool


def ap_union_gap_check(spec: APUnionSpec) -> APUnionGapReport:
    points = ap_union_points(spec)
    bound = 3 * spec.k
    if len(points) == 1:
        return APUnionGapReport(spec.k, 1, (Fraction(1),), bound, 1 <= bound)
    distinct = tuple(sorted(spectrum(points).distinct))
    return APUnionGapReport(spec.k, len(points), distinct, bound, len(distinct) <= bound)


def _require_subset(a: CircularSet, b: CircularSet) -> None:
    if not a.issubset(b):
        missing = sorted(a.point_set() - b.point_set())[0]
        raise SubsetViolationError(f"A is not a subset of B: {missing} missing from B")


def _distinct_gap_count(a: CircularSet) -> int:
    # A single point contributes just the closing arc, one gap value.
    return 1 if len(a) == 1 else spectrum(a).size


@dataclass(frozen=True)
class GapBoundReport:
    """Exact check of |D(A)| <= sqrt(2|B|) |A+B|/|B| + 1 for A inside B.

    The comparison is done squared: (|D(A)|-1)^2 |B| <= 2 |A+B|^2, with the
    |D(A)| <= 1 case passing unconditionally.
    """

    a_size: int
    b_size: int
    distinct_gaps: int
    sumset_size: int
    lhs: int
    rhs: int
    passed: bool


def gap_bound_check(a: CircularSet, b: CircularSet) -> GapBoundReport:
    if len(b) < 2:
        raise TooFewPointsError("B needs at least two points")
    _require_subset(a, b)
    m = _distinct_gap_count(a)
    s = len(sumset(a.to_exact_set(), b.to_exact_set()))
    lhs = (m - 1) ** 2 * len(b)
    rhs = 2 * s * s
    return GapBoundReport(len(a), len(b), m, s, lhs, rhs, m <= 1 or lhs <= rhs)


@dataclass(frozen=True)
class ArcCountingReport:
    """The pair count P over a balanced k-arc partition of A+B, with its bounds.

    P counts pairs (i, b) with i indexing one chosen gap witness per distinct
    gap of A and b in B, such that a_i + b and a_{i+1} + b land in the same
    arc.  lower = |B| (|D(A)| - k) and upper = sum of C(|I_j|, 2) over the
    arcs; both bounds are exact, and upper <= |A+B|^2 / 2k.
    """

    k: int
    arc_size_floor: int
    arcs_oversized: int
    arc_boundaries: tuple
    witness_indices: tuple
    pair_count: int
    lower: int
    upper: int
    sum_cap: Fraction
    derived_gap_bound: Fraction
    distinct_gaps: int
    passed: bool


def arc_counting_diagnostic(a: CircularSet, b: CircularSet, k: int) -> ArcCountingReport:
    """Count same-arc pairs for one witness index per distinct gap of A.

    Needs |A| >= 3: with exactly two points the two circular gaps are
    complementary and the same unordered pair of sums is produced from both
    sides, which breaks the pair-to-gap uniqueness behind the upper bound.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if len(a) < 3:
        raise TooFewPointsError("the pair-counting bound needs at least three points in A")
    _require_subset(a, b)
    spec = spectrum(a)
    witness: Dict[Fraction, int] = {}
    for i, g in enumerate(spec.gaps):
        if g not in witness:
            witness[g] = i
    j_a = tuple(sorted(witness.values()))

    s = sumset(a.to_exact_set(), b.to_exact_set())
    pos = {p: t for t, p in enumerate(s.elements)}
    total = len(s)
    floor_size, oversized = divmod(total, k)

    def arc_of(t: int) -> int:
        head = oversized * (floor_size + 1)
        if t < head:
            return t // (floor_size + 1)
        return oversized + (t - head) // floor_size if floor_size else t

    pts = a.points
    m = len(pts)
    count = 0
    for i in j_a:
        u, v = pts[i], pts[(i + 1) % m]
        for q in b.points:
            if arc_of(pos[u + q]) == arc_of(pos[v + q]):
                count += 1

    sizes = [floor_size + 1] * oversized + [floor_size] * (k - oversized)
    upper = sum(sz * (sz - 1) // 2 for sz in sizes)
    lower = len(b) * (spec.size - k)
    bounds: list = []
    t = 0
    for sz in sizes:
        bounds.append((s.elements[t], s.elements[t + sz - 1]) if sz else None)
        t += sz
    sum_cap = Fraction(total * total, 2 * k)
    derived = k + Fraction(total * total, 2 * k * len(b))
    return ArcCountingReport(k, floor_size, oversized, tuple(bounds), j_a, count,
                             lower, upper, sum_cap, derived, spec.size,
                             lower <= count <= upper)


def greedy_max_distinct(b: CircularSet) -> CircularSet:
    """Greedy subset of B whose consecutive differences are pairwise distinct.

    Starts with the first two points; each further point is the earliest one
    whose difference from the last chosen point avoids all differences used
    so far.  Step j lands within the first C(j,2)+1 points of B, so the
    subset keeps at least ceil(sqrt(2|B|)) - 1 points.
    """
    if len(b) < 2:
        raise TooFewPointsError("the greedy construction needs at least two points")
    vals = b.values()
    chosen = [0, 1]
    used = {vals[1] - vals[0]}
    for idx in range(2, len(vals)):
        d = vals[idx] - vals[chosen[-1]]
        if d not in used:
            used.add(d)
            chosen.append(idx)
    labels = None if b.labels is None else tuple(b.labels[i] for i in chosen)
    return CircularSet(tuple(b.points[i] for i in chosen), labels, b.wrap)


def sidon_subset(b: CircularSet) -> CircularSet:
    """Greedy subset of B with all pairwise differences distinct mod 1.

    Consequently all consecutive differences of the output are distinct.
    Greedy, not maximum: scan B in anticlockwise order and keep any point
    that preserves the property.
    """
    if len(b) < 1:
        raise TooFewPointsError("need at least one point")
    chosen: list = []
    diffs: set = set()
    for p in b.points:
        new = set()
        ok = True
        for u in chosen:
            d1 = (p - u).value
            d2 = (u - p).value
            if d1 in diffs or d2 in diffs or d1 in new or d2 in new or d1 == d2:
                ok = False
                break
            new.add(d1)
            new.add(d2)
        if ok:
            chosen.append(p)
            diffs |= new
    labels = None
    if b.labels is not None:
        keep = {p: lab for p, lab in zip(b.points, b.labels)}
        labels = tuple(keep[p] for p in chosen)
    return CircularSet(tuple(chosen), labels, b.wrap)
