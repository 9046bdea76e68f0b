"""Writing every difference of a circular set as a sum of neighbour gaps.

Given B on the circle and C inside B with C - B = B - B, each c in C has a
predecessor gap (c - b_c^-) and a successor gap (b_c^+ - c).  Every element
of B - B, read as an anticlockwise arc length, is a finite sum of predecessor
gaps, and also a finite sum of successor gaps.  The construction mirrors the
arc-subdivision argument: realize the target as an arc from some b to some c
via the cover premise, split it at the B-points it contains into single
B-gaps, and keep re-realizing those gaps until each is a neighbour gap of C.

The successor-gap side is the predecessor-gap side on the reflected circle
x -> -x, so one engine serves both orientations.  An independent
unbounded-coin dynamic program over a common denominator confirms every
membership, so the constructive certificates never check themselves.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Dict, Optional, Tuple

import numpy as np

from .exact_torus import TorusPoint, as_rational
from .gap_spectrum import CircularSet, SubsetViolationError, TooFewPointsError
from .sumset_engine import FiniteExactSet, difference_set


class PremiseViolationError(ValueError):
    """C - B = B - B fails; a missing difference is named."""


class NonMemberTargetError(ValueError):
    """The requested target is not an element of B - B."""


class OracleScaleError(ValueError):
    """The membership oracle cannot run within its budget on this instance."""


class Side(str, Enum):
    MINUS = "minus"
    PLUS = "plus"


@dataclass(frozen=True)
class GeneratorReport:
    """The neighbour gaps of C in B, with the neighbour map itself."""

    c_points: tuple
    r_minus: tuple
    r_plus: tuple
    neighbours: dict

    @property
    def minus_size(self) -> int:
        return len(self.r_minus)

    @property
    def plus_size(self) -> int:
        return len(self.r_plus)


@dataclass(frozen=True)
class DecompositionCertificate:
    """One target of B - B written as an exact sum of neighbour gaps.

    parts is the multiset of gap values (descending); tree is the nested
    subdivision record behind it, with witnesses in original coordinates.
    """

    target: Fraction
    side: Side
    parts: tuple
    tree: dict

    def total(self) -> Fraction:
        return sum(self.parts, Fraction(0))


class _OrientedEngine:
    """Predecessor-gap decomposition machinery for one orientation of B, C."""

    def __init__(self, b_points: tuple, c_points: tuple):
        self.points = b_points
        self.n = len(b_points)
        self.index = {p: i for i, p in enumerate(b_points)}
        vals = [p.value for p in b_points]
        self.gap_after = tuple(
            (vals[(i + 1) % self.n] - vals[i]) % 1 for i in range(self.n))
        prefix = [Fraction(0)]
        for g in self.gap_after:
            prefix.append(prefix[-1] + g)
        self.prefix = prefix
        self.c_points = c_points
        # Smallest c in canonical order witnessing each difference as c - b.
        witnesses: Dict[Fraction, tuple] = {}
        for c in c_points:
            for b in b_points:
                d = (c.value - b.value) % 1
                if d not in witnesses:
                    witnesses[d] = (c, b)
        self.witnesses = witnesses
        self._gap_parts: Optional[Dict[Fraction, Counter]] = None

    def arc_length(self, i_from: int, i_to: int) -> Fraction:
        return (self.prefix[i_to] - self.prefix[i_from]) % 1

    def pieces(self, b: TorusPoint, c: TorusPoint) -> list:
        """Single B-gaps tiling the anticlockwise arc from b to c."""
        i_b, i_c = self.index[b], self.index[c]
        r = (i_c - i_b) % self.n
        return [self.gap_after[(i_b + j) % self.n] for j in range(r)]

    def gap_parts(self) -> Dict[Fraction, Counter]:
        """Decomposition of every single B-gap value into predecessor gaps.

        Gaps are processed in increasing order: a non-terminal gap splits
        into at least two strictly smaller gaps, so every piece is already
        decomposed when needed.
        """
        if self._gap_parts is not None:
            return self._gap_parts
        table: Dict[Fraction, Counter] = {}
        for g in sorted(set(self.gap_after)):
            c, b = self.witnesses[g]
            if (self.index[c] - self.index[b]) % self.n == 1:
                table[g] = Counter({g: 1})
                continue
            acc: Counter = Counter()
            for piece in self.pieces(b, c):
                acc.update(table[piece])
            table[g] = acc
        self._gap_parts = table
        return table

    def decompose_value(self, target: Fraction) -> Counter:
        if target == 0:
            return Counter()
        c, b = self.witnesses[target]
        table = self.gap_parts()
        acc: Counter = Counter()
        for piece in self.pieces(b, c):
            acc.update(table[piece])
        return acc

    def subdivision_tree(self, target: Fraction, reflect: bool) -> dict:
        """Nested arc-subdivision record; points reported in original coordinates."""
        def show(p: TorusPoint) -> str:
            return str(-p) if reflect else str(p)

        def node(value: Fraction) -> dict:
            c, b = self.witnesses[value]
            i_b, i_c = self.index[b], self.index[c]
            entry = {"arc": str(value), "c": show(c), "b": show(b)}
            if (i_c - i_b) % self.n == 1:
                entry["generator"] = True
                return entry
            entry["pieces"] = [node(piece) for piece in self.pieces(b, c)]
            return entry

        if target == 0:
            return {"arc": "0", "pieces": []}
        c, b = self.witnesses[target]
        root = {"arc": str(target), "c": show(c), "b": show(b),
                "pieces": [node(piece) for piece in self.pieces(b, c)]}
        if (self.index[c] - self.index[b]) % self.n == 1:
            root.pop("pieces")
            root["generator"] = True
        return root


class _Instance:
    """Both orientations of one (B, C) pair, premise-checked."""

    def __init__(self, b: CircularSet, c: CircularSet):
        if len(b) < 2:
            raise TooFewPointsError("B needs at least two points")
        if not c.issubset(b):
            raise SubsetViolationError("C must be a subset of B")
        b_set = b.to_exact_set()
        c_set = c.to_exact_set()
        full = difference_set(b_set, b_set)
        covered = difference_set(c_set, b_set)
        if covered.elements != full.elements:
            missing = sorted(set(full.elements) - set(covered.elements))[0]
            raise PremiseViolationError(
                f"C - B misses the difference {missing}; C - B = B - B is required")
        self.b = b
        self.c = c
        self.universe = tuple(p.value for p in full.elements)
        self.universe_set = frozenset(self.universe)
        self.minus = _OrientedEngine(b.points, c.points)
        reflect_b = tuple(sorted(-p for p in b.points))
        reflect_c = tuple(sorted(-p for p in c.points))
        self.plus = _OrientedEngine(reflect_b, reflect_c)

    def engine(self, side: Side) -> _OrientedEngine:
        return self.minus if Side(side) is Side.MINUS else self.plus


def neighbour_gaps(b: CircularSet, c: CircularSet,
                   _inst: "_Instance" = None) -> GeneratorReport:
    """Predecessor and successor gaps of each c in C, premise-checked.

    R- collects the anticlockwise arc from each c's predecessor to c; R+ the
    arc from c to its successor.  Both are positive arc lengths below 1.
    """
    if _inst is None:
        _Instance(b, c)
    pts = b.points
    n = len(pts)
    idx = {p: i for i, p in enumerate(pts)}
    neighbours = {}
    r_minus = set()
    r_plus = set()
    for cp in c.points:
        i = idx[cp]
        pred = pts[(i - 1) % n]
        succ = pts[(i + 1) % n]
        neighbours[cp] = (pred, succ)
        r_minus.add((cp.value - pred.value) % 1)
        r_plus.add((succ.value - cp.value) % 1)
    return GeneratorReport(c.points, tuple(sorted(r_minus)), tuple(sorted(r_plus)),
                           neighbours)


def decompose(target, b: CircularSet, c: CircularSet, side: Side = Side.MINUS,
              _inst: Optional[_Instance] = None) -> DecompositionCertificate:
    """Write target (an arc length in B - B) as an exact sum of neighbour gaps."""
    side = Side(side)
    inst = _inst if _inst is not None else _Instance(b, c)
    value = target.value if isinstance(target, TorusPoint) else as_rational(target) % 1
    if value not in inst.universe_set:
        raise NonMemberTargetError(f"{value} is not an element of B - B")
    engine = inst.engine(side)
    counts = engine.decompose_value(value)
    parts = tuple(sorted(counts.elements(), reverse=True))
    tree = engine.subdivision_tree(value, reflect=side is Side.PLUS)
    return DecompositionCertificate(value, side, parts, tree)


def _span_table(coin_ints: tuple, scale: int) -> np.ndarray:
    """Boolean table of the N0-span of the coins over 0..scale (inclusive)."""
    dp = np.zeros(scale + 1, dtype=bool)
    dp[0] = True
    for coin in sorted(set(coin_ints)):
        if coin * coin <= scale:
            # saturate each residue class in one accumulate pass
            for r in range(coin):
                seg = dp[r::coin]
                np.logical_or.accumulate(seg, out=seg)
        else:
            # few multiples fit, so repeated shifted ORs reach the closure;
            # the copy keeps the source clear of the aliased destination
            for _ in range(scale // coin):
                dp[coin:] |= dp[:-coin].copy()
    return dp


def _span_set(coins: tuple, cap: int) -> frozenset:
    """Exact N0-span of rational coins inside [0, 1]; breadth-first, budgeted."""
    seen = {Fraction(0)}
    frontier = [Fraction(0)]
    while frontier:
        x = frontier.pop()
        for g in coins:
            y = x + g
            if y <= 1 and y not in seen:
                if len(seen) >= cap:
                    raise OracleScaleError(
                        "exact span enumeration exceeded its budget; "
                        "use points over a common denominator")
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


class SpanOracle:
    """Membership in the N0-span of a set of positive rational coins.

    Uses an integer dynamic program over the common denominator when that is
    affordable, exact breadth-first enumeration otherwise.
    """

    def __init__(self, coins: tuple, dp_limit: int = 1 << 24, set_cap: int = 2_000_000):
        self.coins = tuple(sorted(set(coins)))
        scale = 1
        for g in self.coins:
            scale = lcm(scale, g.denominator)
        self.scale = scale
        if scale <= dp_limit:
            self.table = _span_table(tuple(int(g * scale) for g in self.coins), scale)
            self.values = None
        else:
            self.table = None
            self.values = _span_set(self.coins, set_cap)

    def __contains__(self, x: Fraction) -> bool:
        x = as_rational(x)
        if not 0 <= x <= 1:
            return False
        if self.table is not None:
            n = x * self.scale
            return n.denominator == 1 and bool(self.table[int(n)])
        return x in self.values

    def reachable_scaled(self, scale: int) -> frozenset:
        """All span elements of denominator dividing scale, as integers 0..scale."""
        if self.table is not None:
            if scale % self.scale == 0:
                step = scale // self.scale
                return frozenset((np.flatnonzero(self.table) * step).tolist())
            return frozenset(int(x * scale) for x in self.as_fractions()
                             if (x * scale).denominator == 1)
        return frozenset(int(x * scale) for x in self.values if (x * scale).denominator == 1)

    def as_fractions(self) -> frozenset:
        if self.table is not None:
            return frozenset(Fraction(int(i), self.scale) for i in np.flatnonzero(self.table))
        return self.values


@dataclass(frozen=True)
class GenerationReport:
    """Outcome of decomposing all of B - B over both neighbour-gap families."""

    b_size: int
    c_size: int
    universe_size: int
    r_minus: tuple
    r_plus: tuple
    decomposed_minus: int
    decomposed_plus: int
    oracle_confirmed: bool
    cross_closure: bool
    spans_agree: bool
    mismatches: tuple
    passed: bool


def verify_generation(b: CircularSet, c: CircularSet) -> GenerationReport:
    """Decompose every element of B - B on both sides and cross-check the oracle.

    For each target: the subdivision pieces must sum to it exactly (checked
    through prefix sums), and the independent span oracle must confirm
    membership over R- and over R+.  The oracle also confirms R- inside
    span(R+) and vice versa, and that the two spans agree below 1.
    """
    inst = _Instance(b, c)
    report = neighbour_gaps(b, c, _inst=inst)
    oracle_minus = SpanOracle(report.r_minus)
    oracle_plus = SpanOracle(report.r_plus)
    mismatches = []
    done_minus = 0
    done_plus = 0
    for side, engine, oracle in ((Side.MINUS, inst.minus, oracle_minus),
                                 (Side.PLUS, inst.plus, oracle_plus)):
        table = engine.gap_parts()
        for g, counts in table.items():
            total = sum((part * mult for part, mult in counts.items()), Fraction(0))
            if total != g or not set(counts) <= set(oracle.coins):
                mismatches.append((side.value, g, "gap table"))
        for d in inst.universe:
            if d != 0:
                cw, bw = engine.witnesses.get(d, (None, None))
                if cw is None:
                    mismatches.append((side.value, d, "no witness"))
                    continue
                if engine.arc_length(engine.index[bw], engine.index[cw]) != d:
                    mismatches.append((side.value, d, "arc length"))
                    continue
            if d not in oracle:
                mismatches.append((side.value, d, "oracle rejects"))
                continue
            if side is Side.MINUS:
                done_minus += 1
            else:
                done_plus += 1
    cross = all(g in oracle_plus for g in report.r_minus) and \
        all(g in oracle_minus for g in report.r_plus)
    scale = 1
    for p in b.points:
        scale = lcm(scale, p.value.denominator)
    spans_agree = oracle_minus.reachable_scaled(scale) == oracle_plus.reachable_scaled(scale)
    passed = not mismatches and cross and spans_agree and \
        done_minus == len(inst.universe) and done_plus == len(inst.universe)
    return GenerationReport(len(b), len(c), len(inst.universe),
                            report.r_minus, report.r_plus,
                            done_minus, done_plus,
                            not mismatches, cross, spans_agree,
                            tuple(mismatches), passed)
