"""Standard modules as multisets of segments, and ladder combinatorics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .errors import NotALadderError
from .segments import EMPTY, Segment, precedes, union_intersection
from .universe import Line, Rational


class Multisegment:
    """A multiset of segments, stored in canonical right-ordered form.

    Empty segments are dropped on construction.  Two multisegments are equal
    iff they are equal as multisets.
    """

    __slots__ = ("segments", "_hash")

    def __init__(self, segments: Iterable[Segment] = ()):
        segs = [s for s in segments if s is not EMPTY]
        segs.sort(key=Segment.sort_key)
        self.segments: tuple[Segment, ...] = tuple(segs)
        self._hash = None

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.segments)

    def __len__(self) -> int:
        return len(self.segments)

    def __getitem__(self, i):
        return self.segments[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multisegment):
            return NotImplemented
        return self.segments == other.segments

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.segments)
        return self._hash

    def __add__(self, other: "Multisegment") -> "Multisegment":
        return Multisegment(self.segments + tuple(other))

    def __repr__(self) -> str:
        return f"Multisegment({str(self) or 'empty'})"

    def __str__(self) -> str:
        return " + ".join(str(s) for s in self.segments)

    def sort_key(self):
        return (self.degree, len(self), tuple(s.sort_key() for s in self.segments))

    @property
    def degree(self) -> int:
        return sum(s.degree for s in self.segments)

    @property
    def lines(self) -> list[Line]:
        seen = {}
        for s in self.segments:
            seen.setdefault(s.line, None)
        return list(seen)

    @property
    def is_pure(self) -> bool:
        return len(self.lines) == 1

    def realization(self) -> "Realization":
        return Realization(self.segments)

    def apply(self, which: str, shift: Rational = 0) -> "Multisegment":
        return apply(self, which, shift)

    def star(self) -> "Multisegment":
        return Multisegment(s.dual() for s in self.segments)

    def tau(self) -> "Multisegment":
        return Multisegment(s.tau() for s in self.segments)

    def chi(self) -> "Multisegment":
        return Multisegment(s.chi() for s in self.segments)

    def gd(self) -> "Multisegment":
        return Multisegment(s.gd() for s in self.segments)

    def shift(self, s: Rational) -> "Multisegment":
        return Multisegment(x.shift(s) for x in self.segments)

    def count(self, seg: Segment) -> int:
        return self.segments.count(seg)


@dataclass(frozen=True)
class Realization:
    """An ordered product of segments."""

    segments: tuple

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    def __iter__(self):
        return iter(self.segments)

    def __len__(self):
        return len(self.segments)

    def __getitem__(self, i):
        return self.segments[i]

    @property
    def composition(self) -> tuple[int, ...]:
        return tuple(s.degree for s in self.segments)

    @property
    def is_rangee(self) -> bool:
        return is_rangee(self)

    @property
    def is_right_ordered(self) -> bool:
        return is_right_ordered(self)

    def multisegment(self) -> Multisegment:
        return Multisegment(self.segments)

    def __str__(self) -> str:
        return " x ".join(str(s) for s in self.segments)


def canonicalize(segments: Iterable[Segment]) -> Realization:
    """Deterministic right-ordered realization of a multiset of segments."""
    return Multisegment(segments).realization()


def is_rangee(r: Sequence[Segment]) -> bool:
    segs = list(r)
    return not any(precedes(segs[i], segs[j])
                   for i in range(len(segs)) for j in range(i + 1, len(segs)))


def is_right_ordered(r: Sequence[Segment]) -> bool:
    """Grouped by line, with right endpoints weakly decreasing inside each group."""
    segs = list(r)
    seen = set()
    prev = None
    for s in segs:
        if prev is not None and s.line == prev.line:
            if s.b > prev.b:
                return False
        else:
            if s.line in seen:
                return False
            seen.add(s.line)
        prev = s
    return True


def right_ordered_realizations(ms: Multisegment) -> list[Realization]:
    """Every right-ordered realization of ``ms`` (without repeats)."""
    groups: list[list[list[Segment]]] = []
    for line in ms.lines:
        segs = [s for s in ms if s.line == line]
        # blocks of equal right endpoint may be permuted freely
        by_b = [list(g) for _, g in itertools.groupby(segs, key=lambda s: s.b)]
        orders = [sorted(set(itertools.permutations(block)), key=lambda p: [x.sort_key() for x in p])
                  for block in by_b]
        groups.append([list(itertools.chain.from_iterable(c)) for c in itertools.product(*orders)])
    out = []
    for perm in itertools.permutations(range(len(groups))):
        for choice in itertools.product(*(groups[i] for i in perm)):
            out.append(Realization(tuple(itertools.chain.from_iterable(choice))))
    return out


def rangee_realizations(ms: Multisegment) -> list[Realization]:
    """Every rangee ordering of ``ms`` (without repeats)."""
    return [Realization(p) for p in sorted(set(itertools.permutations(ms.segments)),
                                           key=lambda p: [x.sort_key() for x in p])
            if is_rangee(p)]


def apply(ms: Multisegment, which: str, shift: Rational = 0) -> Multisegment:
    """Segment-wise ``star`` (contragredient), ``tau``, ``chi``, ``gd`` or ``nu_shift``."""
    if which == "star":
        return ms.star()
    if which in ("tau", "chi", "gd"):
        return getattr(ms, which)()
    if which == "nu_shift":
        return ms.shift(shift)
    raise ValueError(f"unknown multisegment operator {which!r}")


def is_conjugate_selfdual(ms: Multisegment) -> bool:
    return ms.star() == ms.tau()


def pure_components(ms: Multisegment) -> dict[Line, Multisegment]:
    return {line: Multisegment(s for s in ms if s.line == line) for line in ms.lines}


def is_generic(ms: Multisegment) -> bool:
    segs = ms.segments
    return not any(segs[i].linked(segs[j])
                   for i in range(len(segs)) for j in range(i + 1, len(segs)))


@dataclass(frozen=True)
class LadderShape:
    """A ladder on one line: ``a`` and ``b`` both strictly decreasing.

    The empty ladder has ``line=None`` and no pairs.
    """

    line: Optional[Line]
    pairs: tuple[tuple[Fraction, Fraction], ...]

    @property
    def t(self) -> int:
        return len(self.pairs)

    def segments(self) -> list[Segment]:
        return [Segment(self.line.tower, a, b) for a, b in self.pairs]

    def multisegment(self) -> Multisegment:
        return Multisegment(self.segments())

    @property
    def is_proper(self) -> bool:
        segs = self.segments()
        return all(precedes(segs[i + 1], segs[i]) for i in range(len(segs) - 1))


NOT_LADDER = None


def ladder_shape(ms: Multisegment) -> Optional[LadderShape]:
    """The ladder data of ``ms``, or ``NOT_LADDER`` (``None``)."""
    if len(ms) == 0:
        return LadderShape(None, ())
    lines = ms.lines
    if len(lines) != 1:
        return NOT_LADDER
    pairs = sorted(((s.a, s.b) for s in ms), reverse=True)
    for (a1, b1), (a2, b2) in zip(pairs, pairs[1:]):
        if not (a1 > a2 and b1 > b2):
            return NOT_LADDER
    return LadderShape(lines[0], tuple(pairs))


def _require_ladder(x) -> LadderShape:
    if isinstance(x, LadderShape):
        return x
    shape = ladder_shape(x)
    if shape is NOT_LADDER:
        raise NotALadderError(f"{x} is not a ladder")
    return shape


def is_ladder(ms: Multisegment) -> bool:
    return ladder_shape(ms) is not NOT_LADDER


def is_proper_ladder(ms: Multisegment) -> bool:
    shape = ladder_shape(ms)
    return shape is not NOT_LADDER and shape.is_proper


def proper_ladder_decomposition(ladder) -> list[LadderShape]:
    """Cut a ladder after every index where the next segment leaves a gap."""
    shape = _require_ladder(ladder)
    parts, current = [], []
    pairs = shape.pairs
    for i, (a, b) in enumerate(pairs):
        current.append((a, b))
        if i + 1 == len(pairs) or pairs[i + 1][1] < a - 1:
            parts.append(LadderShape(shape.line, tuple(current)))
            current = []
    return parts


def kernel_modules(proper) -> list[Multisegment]:
    """Standard modules generating the kernel of the quotient onto a proper ladder."""
    shape = _require_ladder(proper)
    if not shape.is_proper:
        raise NotALadderError("kernel modules need a proper ladder")
    if shape.t < 2:
        raise NotALadderError("kernel modules need at least two segments")
    segs = shape.segments()
    out = []
    for i in range(len(segs) - 1):
        union, inter = union_intersection(segs[i + 1], segs[i])
        out.append(Multisegment(segs[:i] + [union, inter] + segs[i + 2:]))
    return out


def derivative_set(ladder) -> list[Multisegment]:
    """Ladders occurring as irreducible subquotients of the derivatives.

    Left endpoints range over ``a_i <= a'_i < a_{i-1}`` and are clamped at
    ``b_i + 1`` (all larger values give the same empty segment).  The
    original ladder is excluded; the empty multisegment is included when
    reachable.  Output is sorted and duplicate-free.
    """
    shape = _require_ladder(ladder)
    if shape.t == 0:
        return []
    ranges = []
    prev_a = None
    for a, b in shape.pairs:
        top = b + 1 if prev_a is None else min(b + 1, prev_a - 1)
        ranges.append([a + k for k in range(int(top - a) + 1)])
        prev_a = a
    tower = shape.line.tower
    original = tuple(a for a, _ in shape.pairs)
    out = set()
    for choice in itertools.product(*ranges):
        if choice == original:
            continue
        out.add(Multisegment(Segment(tower, a2, b) for a2, (_, b) in zip(choice, shape.pairs)
                             if a2 <= b))
    return sorted(out, key=Multisegment.sort_key)
