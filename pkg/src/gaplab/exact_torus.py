"""Exact arithmetic on the circle R/Z and on the d-dimensional torus.

Every scalar is a fractions.Fraction and no float ever enters a
computation: gap coincidences, nearest-neighbour ties and cover
certificates are all decided by exact comparisons.  Points of R/Z are
stored by their canonical representative in [0, 1); signed differences
use the representative in [-1/2, 1/2), so the distance to the nearest
integer is a plain abs().  d-dimensional work sticks to squared norms,
which keeps everything inside Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

HALF = Fraction(1, 2)


class DuplicatePointError(ValueError):
    """A collection that must be duplicate-free contains repeats."""


class DegenerateInputError(ValueError):
    """The affine embedding needs at least two distinct values."""


def as_rational(x: RationalLike) -> Fraction:
    """Coerce x to an exact Fraction.

    Accepts ints, Fractions and strings ("5/8", "0.625"); decimal strings
    convert exactly.  Floats are rejected outright so binary rounding noise
    cannot leak into exact computations.
    """
    if isinstance(x, (bool, float)):
        raise TypeError(f"{x!r} is not an exact rational; pass str, int or Fraction")
    return Fraction(x)


def signed_mod1(x: Fraction) -> Fraction:
    """Representative of x + Z in [-1/2, 1/2)."""
    return (x + HALF) % 1 - HALF


def _coerce(x) -> Fraction:
    if isinstance(x, TorusPoint):
        return x.value
    return as_rational(x)


@dataclass(frozen=True, order=True)
class TorusPoint:
    """A point of R/Z held by its canonical representative in [0, 1)."""

    value: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", as_rational(self.value))
        if not 0 <= self.value < 1:
            raise ValueError(f"representative {self.value} not in [0, 1)")

    def __add__(self, other) -> "TorusPoint":
        return TorusPoint((self.value + _coerce(other)) % 1)

    __radd__ = __add__

    def __sub__(self, other) -> "TorusPoint":
        return TorusPoint((self.value - _coerce(other)) % 1)

    def __neg__(self) -> "TorusPoint":
        return TorusPoint(-self.value % 1)

    def signed(self) -> Fraction:
        """Representative in [-1/2, 1/2)."""
        return self.value - 1 if 2 * self.value >= 1 else self.value

    def norm(self) -> Fraction:
        """Distance to the nearest integer."""
        return min(self.value, 1 - self.value)

    def __str__(self) -> str:
        return str(self.value)


def reduce_mod1(x: RationalLike) -> TorusPoint:
    """Canonical representative of x + Z in [0, 1)."""
    return TorusPoint(as_rational(x) % 1)


# Short constructor used pervasively in tests and the CLI.
def point(x: RationalLike) -> TorusPoint:
    return reduce_mod1(x)


def torus_norm(t: Union[TorusPoint, RationalLike]) -> Fraction:
    """||t||: distance from t to the nearest integer."""
    if not isinstance(t, TorusPoint):
        t = reduce_mod1(t)
    return t.norm()


def ccw_arc(a: TorusPoint, b: TorusPoint) -> Fraction:
    """Length of the anticlockwise arc from a to b, in [0, 1)."""
    return (b.value - a.value) % 1


@dataclass(frozen=True, order=True)
class TorusVector:
    """A point of the d-torus (R/Z)^d, componentwise canonical."""

    coords: tuple

    def __post_init__(self) -> None:
        pts = tuple(c if isinstance(c, TorusPoint) else reduce_mod1(c) for c in self.coords)
        if not pts:
            raise ValueError("torus vectors need at least one coordinate")
        object.__setattr__(self, "coords", pts)

    @classmethod
    def of(cls, *xs: RationalLike) -> "TorusVector":
        return cls(tuple(xs))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __add__(self, other: "TorusVector") -> "TorusVector":
        _check_dims(self, other)
        return TorusVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "TorusVector") -> "TorusVector":
        _check_dims(self, other)
        return TorusVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "TorusVector":
        return TorusVector(tuple(-c for c in self.coords))

    def signed(self) -> tuple:
        """Componentwise representative in [-1/2, 1/2)^d."""
        return tuple(c.signed() for c in self.coords)

    def values(self) -> tuple:
        return tuple(c.value for c in self.coords)

    def norm_sq(self) -> Fraction:
        return sum((c.norm() ** 2 for c in self.coords), Fraction(0))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def _check_dims(u: TorusVector, v: TorusVector) -> None:
    if u.dim != v.dim:
        raise ValueError(f"dimension mismatch: {u.dim} vs {v.dim}")


def torus_norm_sq_d(t: TorusVector) -> Fraction:
    """Squared torus norm: sum over coordinates of torus_norm(t_i)^2."""
    return t.norm_sq()


def torus_dist_sq(u: TorusVector, v: TorusVector) -> Fraction:
    return (u - v).norm_sq()


def circular_sort(points: Iterable[TorusPoint]) -> list:
    """Points sorted anticlockwise from 0; duplicates are rejected."""
    pts = sorted(points)
    for a, b in zip(pts, pts[1:]):
        if a == b:
            raise DuplicatePointError(f"duplicate point {a}")
    return pts


def embed_reals(xs: Iterable[RationalLike]) -> tuple:
    """Embed a finite set of rationals into [0, 1/4] by x -> (x-min)/(4(max-min)).

    The scale factor keeps every pairwise difference inside (-1/2, 1/2), so
    equality patterns among differences are preserved verbatim on the torus.
    Fewer than two distinct values leave no scale to choose, hence the error.
    """
    vals = sorted({as_rational(x) for x in xs})
    if len(vals) < 2:
        raise DegenerateInputError("need at least two distinct values to embed")
    lo, hi = vals[0], vals[-1]
    span = 4 * (hi - lo)
    return tuple(TorusPoint((v - lo) / span) for v in vals)
