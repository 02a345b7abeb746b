"""Zelevinsky segments in anchor-normalized form.

``Segment(tower, a, b)`` stands for the segment built on
``nu^a rho_0, ..., nu^b rho_0`` where ``rho_0`` is the unitary anchor of
``tower``.  Because the cuspidal's own exponent is folded into ``(a, b)``,
isomorphism of segments is plain structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import SegmentError, UndefinedGammaError
from .universe import Line, Rational, Tower, as_fraction
from .verdict import NO, YES, Verdict


class _Sentinel:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return self.name


EMPTY = _Sentinel("EMPTY")
"""The empty segment (the trivial representation of ``G_0``); degree 0."""

ZERO = _Sentinel("ZERO")
"""A vanishing Jacquet module.  Distinct from an empty list of factors."""


@dataclass(frozen=True)
class Segment:
    tower: Tower
    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = as_fraction(self.a), as_fraction(self.b)
        span = b - a
        if span.denominator != 1 or span < 0:
            raise SegmentError(
                f"Delta({self.tower.id},{a},{b}): b - a must be a non-negative integer")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def length(self) -> int:
        """Number of cuspidals in the segment."""
        return int(self.b - self.a) + 1

    @property
    def degree(self) -> int:
        return self.tower.degree * self.length

    @cached_property
    def line(self) -> Line:
        return Line(self.tower, self.a)

    @property
    def re_exponent(self) -> Fraction:
        return re_exponent(self)

    def precedes(self, other: "Segment") -> bool:
        return precedes(self, other)

    def linked(self, other: "Segment") -> bool:
        return precedes(self, other) or precedes(other, self)

    def transform(self, which: str, shift: Rational = 0) -> "Segment":
        return transform(self, which, shift)

    def tau(self) -> "Segment":
        return Segment(self.tower.tau, self.a, self.b)

    def dual(self) -> "Segment":
        return Segment(self.tower.dual, -self.b, -self.a)

    def chi(self) -> "Segment":
        return Segment(self.tower.chi, self.a, self.b)

    def gd(self) -> "Segment":
        return Segment(self.tower.gd, -self.b, -self.a)

    def shift(self, s: Rational) -> "Segment":
        s = as_fraction(s)
        return Segment(self.tower, self.a + s, self.b + s)

    @property
    def is_gd_fixed(self) -> bool:
        return self.tower.self_gd and self.a == -self.b

    def sort_key(self):
        """Canonical position: line first, then decreasing ``b``, then decreasing ``a``."""
        return (self.tower.id, self.a % 1, -self.b, -self.a)

    def __str__(self) -> str:
        return f"Delta({self.tower.id},{format_rational(self.a)},{format_rational(self.b)})"


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def make_segment(tower: Tower, a: Rational, b: Rational) -> Segment:
    return Segment(tower, as_fraction(a), as_fraction(b))


def re_exponent(seg: Segment) -> Fraction:
    """Real exponent of the central character (anchor exponent taken as 0)."""
    return seg.tower.degree * seg.length * (seg.a + seg.b) / 2


def precedes(s1: Segment, s2: Segment) -> bool:
    if s1 is EMPTY or s2 is EMPTY:
        return False
    if s1.tower != s2.tower or (s1.a - s2.a).denominator != 1:
        return False
    return s1.a < s2.a <= s1.b + 1 and s1.b < s2.b


def linked(s1: Segment, s2: Segment) -> bool:
    return precedes(s1, s2) or precedes(s2, s1)


def transform(seg: Segment, which: str, shift: Rational = 0) -> Segment:
    """``tau``, ``dual``, ``chi``, ``gd`` (= dual after tau) or ``nu_shift``."""
    if which == "nu_shift":
        return seg.shift(shift)
    if which in ("tau", "dual", "chi", "gd"):
        return getattr(seg, which)()
    raise ValueError(f"unknown segment transform {which!r}")


def union_intersection(lower: Segment, upper: Segment):
    """Union and intersection of ``lower`` and ``upper`` where ``lower`` precedes ``upper``.

    The intersection is ``EMPTY`` on the boundary ``upper.a == lower.b + 1``.
    """
    if not precedes(lower, upper):
        raise SegmentError(f"{lower} does not precede {upper}")
    union = Segment(lower.tower, lower.a, upper.b)
    if upper.a > lower.b:
        return union, EMPTY
    return union, Segment(lower.tower, upper.a, lower.b)


def jacquet_segment(seg: Segment, composition: Sequence[int]):
    """Jacquet module of ``seg`` along ``composition``, top slice first.

    Returns a list of segments, or ``ZERO`` when some part is not a multiple
    of the cuspidal degree.
    """
    if sum(composition) != seg.degree:
        raise SegmentError(
            f"composition {tuple(composition)} does not sum to degree {seg.degree} of {seg}")
    d = seg.tower.degree
    if any(m % d for m in composition):
        return ZERO
    pieces = []
    top = seg.b
    for m in composition:
        k = m // d
        a = top - (k - 1)
        pieces.append(Segment(seg.tower, a, top))
        top = a - 1
    return pieces


@dataclass(frozen=True)
class SegmentReport:
    dist: Verdict
    eta: Verdict
    rule: str
    detail: str


def segment_gamma(seg: Segment) -> Optional[int]:
    return seg.line.gamma


def classify_segment(seg: Segment) -> SegmentReport:
    """Definite verdict for a single segment.

    A segment is distinguished for some kind only when it is fixed by
    Galois-contragredient; it is then distinguished for exactly the kind
    named by the gamma bit of its line.
    """
    if not seg.is_gd_fixed:
        return SegmentReport(NO, NO, "KNOWN",
                             f"{seg} is not isomorphic to its Galois-contragredient")
    g = seg.line.gamma
    if g is None:
        raise UndefinedGammaError(f"gamma undefined on line of {seg}")
    if g == 0:
        return SegmentReport(YES, NO, "KNOWN", f"{seg} is Galois-self-dual with gamma 0")
    return SegmentReport(NO, YES, "KNOWN", f"{seg} is Galois-self-dual with gamma 1")


def is_distinguished(seg: Segment) -> bool:
    """Trivial-kind distinction of a single segment."""
    if not seg.is_gd_fixed:
        return False
    g = seg.line.gamma
    if g is None:
        raise UndefinedGammaError(f"gamma undefined on line of {seg}")
    return g == 0


SegmentLike = Union[Segment, _Sentinel]
