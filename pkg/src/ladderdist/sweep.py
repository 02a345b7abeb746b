"""Bounded exhaustive sweeps and seeded random corpora.

Segment endpoints range over the window ``[-window, window]`` in steps of
1/2, so both self-dual offsets (0 and 1/2) are covered.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .multisegment import Multisegment, is_ladder, right_ordered_realizations
from .segments import Segment
from .universe import Universe, UniverseBuilder

HALF = Fraction(1, 2)
DEFAULT_WINDOW = 2
SWEEP_TOWERS = ("T", "S", "S2")


def sweep_universe(gamma: int = 0) -> Universe:
    """One self Galois-dual tower ``T`` of degree 1 with the given gamma, plus a
    degree-2 pair ``S``/``S2`` swapped by Galois-contragredient."""
    b = UniverseBuilder()
    b.declare_tower("T", 1, gamma=gamma)
    b.declare_tower("S", 2, tau="S2")
    b.declare_tower("S2", 2, tau="S")
    return b.build()


def sweep_segments(universe: Universe, towers: Sequence[str] = SWEEP_TOWERS,
                   max_span: int = 2, window: int = DEFAULT_WINDOW) -> list[Segment]:
    return list(_segment_pool(universe, tuple(towers), max_span, window))


@lru_cache(maxsize=64)
def _segment_pool(universe: Universe, towers: tuple, max_span: int, window: int):
    out = []
    lo, hi = -window, window
    for tid in towers:
        tower = universe[tid]
        a = Fraction(lo)
        while a <= hi:
            for span in range(max_span + 1):
                if a + span <= hi:
                    out.append(Segment(tower, a, a + span))
            a += HALF
    out.sort(key=Segment.sort_key)
    return tuple(out)


def sweep_multisegments(universe: Universe, max_segments: int = 3, max_span: int = 2,
                        towers: Sequence[str] = SWEEP_TOWERS,
                        window: int = DEFAULT_WINDOW,
                        include_empty: bool = False) -> Iterator[Multisegment]:
    """Every multiset of at most ``max_segments`` sweep segments, in a fixed order."""
    pool = sweep_segments(universe, towers, max_span, window)
    start = 0 if include_empty else 1
    for t in range(start, max_segments + 1):
        for combo in itertools.combinations_with_replacement(pool, t):
            yield Multisegment(combo)


def sweep_realizations(universe: Universe, **kw) -> Iterator:
    for ms in sweep_multisegments(universe, **kw):
        yield from right_ordered_realizations(ms)


def sweep_ladders(universe: Universe, **kw) -> Iterator[Multisegment]:
    for ms in sweep_multisegments(universe, **kw):
        if is_ladder(ms):
            yield ms


# -- seeded corpora ----------------------------------------------------------

def _random_segment(rng: random.Random, pool: Sequence[Segment]) -> Segment:
    return pool[rng.randrange(len(pool))]


def random_multisegment(rng: random.Random, universe: Universe, max_segments: int = 4,
                        max_span: int = 2, window: int = 3,
                        towers: Sequence[str] = SWEEP_TOWERS) -> Multisegment:
    pool = _segment_pool(universe, tuple(towers), max_span, window)
    n = rng.randint(0, max_segments)
    return Multisegment(_random_segment(rng, pool) for _ in range(n))


def random_ladder(rng: random.Random, universe: Universe, max_segments: int = 4,
                  max_span: int = 3, towers: Sequence[str] = SWEEP_TOWERS) -> Multisegment:
    """A random ladder, not necessarily proper or Galois-self-dual."""
    tower = universe[rng.choice(list(towers))]
    offset = rng.choice((Fraction(0), HALF))
    t = rng.randint(1, max_segments)
    a = offset + rng.randint(-3, 3)
    pairs = []
    for _ in range(t):
        pairs.append([a, None])
        a -= rng.randint(1, 3)
    b_next = None
    for p in reversed(pairs):
        lo = p[0] if b_next is None else max(p[0], b_next + 1)
        p[1] = lo + rng.randint(0, max_span)
        b_next = p[1]
    return Multisegment(Segment(tower, a, b) for a, b in pairs)


def _mirror(pairs):
    return [(-b, -a) for a, b in pairs]


def random_selfdual_proper_ladder(rng: random.Random, universe: Universe, tower: str = "T",
                                  max_segments: int = 4, max_span: int = 3) -> Multisegment:
    """A proper ladder on a self-dual line that is closed under Galois-contragredient.

    Built from the middle outwards: a gd-fixed middle segment when ``t`` is
    odd, else an innermost mirrored pair, then mirrored pairs that keep every
    neighbour linked.
    """
    tw = universe[tower]
    if not tw.self_gd:
        raise ValueError(f"tower {tower!r} is not self Galois-dual")
    t = rng.randint(1, max_segments)
    offset = rng.choice((Fraction(0), HALF))
    if t % 2:
        c = rng.randint(0, max_span) + offset  # middle segment (-c, c)
        upper = [(-c, c)]
        lower = []
    else:
        while True:
            a = offset + rng.randint(-max_span, 0)
            b = a + rng.randint(0, max_span)
            if a + b > 0 and 2 * a <= 1:
                break
        upper = [(a, b)]
        lower = [(-b, -a)]
    while len(upper) + len(lower) < t:
        pa, pb = upper[0]
        a = pa + rng.randint(1, int(pb + 1 - pa))
        b = max(a, pb + 1) + rng.randint(0, max_span)
        upper.insert(0, (a, b))
        lower.append((-b, -a))
    pairs = upper + lower
    return Multisegment(Segment(tw, a, b) for a, b in pairs)


def random_selfdual_ladder_k2(rng: random.Random, universe: Universe, tower: str = "T",
                              max_segments: int = 3, max_span: int = 2) -> Multisegment:
    """Two gd-paired proper ladders separated by a gap (so ``k = 2``)."""
    tw = universe[tower]
    offset = rng.choice((Fraction(0), HALF))
    t = rng.randint(1, max_segments)
    a = offset + 1 + rng.randint(0, 2)
    b = a + rng.randint(0, max_span)
    pairs = [(a, b)]
    for _ in range(t - 1):
        pa, pb = pairs[0]
        a = pa + rng.randint(1, int(pb + 1 - pa))
        b = max(a, pb + 1) + rng.randint(0, max_span)
        pairs.insert(0, (a, b))
    pairs = pairs + _mirror(pairs)[::-1]
    return Multisegment(Segment(tw, a, b) for a, b in pairs)


CORPUS_KINDS = ("k1", "k2", "ladder")


def ladder_corpus(seed: int, count: int, universe: Optional[Universe] = None):
    """``count`` labelled ladders: constructed ``k=1`` and ``k=2`` families plus random ones."""
    universe = universe or sweep_universe(0)
    rng = random.Random(seed)
    out = []
    for i in range(count):
        kind = CORPUS_KINDS[i % 3]
        if kind == "k1":
            ms = random_selfdual_proper_ladder(rng, universe)
        elif kind == "k2":
            ms = random_selfdual_ladder_k2(rng, universe)
        else:
            ms = random_ladder(rng, universe)
        out.append((kind, ms))
    return out


def multisegment_corpus(seed: int, count: int, universe: Optional[Universe] = None,
                        max_segments: int = 4, max_span: int = 2) -> list[Multisegment]:
    universe = universe or sweep_universe(0)
    rng = random.Random(seed)
    return [random_multisegment(rng, universe, max_segments, max_span) for _ in range(count)]

