"""Involutive minimal double-coset data ``W_2[M]`` for a block composition ``M``.

An element is recorded as a refinement ``L`` of ``M`` together with an
involution ``eps`` on the cells of ``L``.  Cells of block ``i`` are sent to
pairwise distinct blocks, in increasing block order; equivalently the data
is a symmetric matrix of non-negative integers with row sums ``m_i`` whose
``(i, j)`` entry is the size of the cell of block ``i`` that lands in block
``j``.  Diagonal entries are the fixed cells.

Indices are 0-based throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Iterator, Optional, Sequence, Union

import numpy as np

DivisorFilter = Union[None, int, Sequence[int]]


@dataclass(frozen=True)
class CosetInvolution:
    base: tuple[int, ...]
    refinement: tuple[tuple[int, ...], ...]
    eps: tuple[int, ...]

    @property
    def cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i, parts in enumerate(self.refinement) for j in range(len(parts))]

    @property
    def cell_sizes(self) -> list[int]:
        return [l for parts in self.refinement for l in parts]

    @property
    def cell_blocks(self) -> list[int]:
        return [i for i, parts in enumerate(self.refinement) for _ in parts]

    @property
    def is_admissible(self) -> bool:
        return all(len(parts) == 1 for parts in self.refinement)

    def orbit_representatives(self) -> list[int]:
        """Smallest cell index of each ``eps``-orbit."""
        return [c for c, e in enumerate(self.eps) if c <= e]

    def fixed_cells(self) -> list[int]:
        return [c for c, e in enumerate(self.eps) if c == e]

    def permutation(self) -> tuple[int, ...]:
        """The involution in ``S_n`` (one-line notation, 0-based)."""
        starts = []
        pos = 0
        for l in self.cell_sizes:
            starts.append(pos)
            pos += l
        perm = [0] * pos
        for c, e in enumerate(self.eps):
            for k in range(self.cell_sizes[c]):
                perm[starts[c] + k] = starts[e] + k
        return tuple(perm)

    def to_json(self) -> dict:
        cells = self.cells
        return {
            "base": list(self.base),
            "refinement": [list(p) for p in self.refinement],
            "eps": [[list(cells[c]), list(cells[e])] for c, e in enumerate(self.eps) if c <= e],
            "admissible": self.is_admissible,
        }


def is_admissible(w: CosetInvolution) -> bool:
    return w.is_admissible


def orbit_representatives(w: CosetInvolution) -> list[int]:
    return w.orbit_representatives()


def _divisors(M: Sequence[int], divisor_filter: DivisorFilter) -> tuple[int, ...]:
    if divisor_filter is None:
        return (1,) * len(M)
    if isinstance(divisor_filter, int):
        return (divisor_filter,) * len(M)
    d = tuple(divisor_filter)
    if len(d) != len(M):
        raise ValueError("per-block divisor filter must match the composition length")
    return d


def _symmetric_matrices(M: Sequence[int], step) -> Iterator[list[list[int]]]:
    t = len(M)
    N = [[0] * t for _ in range(t)]
    remaining = list(M)

    def fill(i: int, j: int):
        if i == t:
            yield [row[:] for row in N]
            return
        if j == t:
            if remaining[i] == 0:
                yield from fill(i + 1, i + 1)
            return
        s = step[i][j]
        hi = remaining[i] if i == j else min(remaining[i], remaining[j])
        for v in range(0, hi + 1, s):
            N[i][j] = N[j][i] = v
            remaining[i] -= v
            if i != j:
                remaining[j] -= v
            yield from fill(i, j + 1)
            remaining[i] += v
            if i != j:
                remaining[j] += v
        N[i][j] = N[j][i] = 0

    yield from fill(0, 0)


def _from_matrix(M: tuple[int, ...], N: list[list[int]]) -> CosetInvolution:
    t = len(M)
    refinement, index = [], {}
    flat = 0
    for i in range(t):
        parts = []
        for j in range(t):
            if N[i][j]:
                parts.append(N[i][j])
                index[(i, j)] = flat
                flat += 1
        refinement.append(tuple(parts))
    eps = [0] * flat
    for (i, j), c in index.items():
        eps[c] = index[(j, i)]
    return CosetInvolution(M, tuple(refinement), tuple(eps))


@lru_cache(maxsize=4096)
def _enumerate(M: tuple[int, ...], divs: tuple[int, ...]) -> tuple[CosetInvolution, ...]:
    step = [[lcm(divs[i], divs[j]) for j in range(len(M))] for i in range(len(M))]
    if any(m % d for m, d in zip(M, divs)):
        return ()
    return tuple(_from_matrix(M, N) for N in _symmetric_matrices(M, step))


def enumerate_W2(M: Sequence[int], divisor_filter: DivisorFilter = None) -> list[CosetInvolution]:
    """All of ``W_2[M]``, each element once.

    ``divisor_filter`` (an int, or one int per block) restricts cells of
    block ``i`` to multiples of its divisor; cells failing it would carry a
    vanishing Jacquet module, so this only prunes strata with zero bound.
    """
    M = tuple(int(m) for m in M)
    if any(m < 1 for m in M):
        raise ValueError("composition parts must be positive")
    return list(_enumerate(M, _divisors(M, divisor_filter)))


def enumerate_refined_involutions(M: Sequence[int]) -> list[CosetInvolution]:
    """Every refinement of ``M`` with every size-preserving involution on its cells.

    This drops the block-ordering (minimal length) condition and over-counts
    ``W_2[M]``; it exists for comparison in tests and diagnostics.
    """
    M = tuple(M)
    per_block = [list(_compositions(m)) for m in M]
    out = []
    for refinement in itertools.product(*per_block):
        sizes = [l for parts in refinement for l in parts]
        for eps in _involutions(sizes):
            out.append(CosetInvolution(M, tuple(refinement), eps))
    return out


def satisfies_ordering(w: CosetInvolution) -> bool:
    blocks = w.cell_blocks
    for i, parts in enumerate(w.refinement):
        cells = [c for c, b in enumerate(blocks) if b == i]
        targets = [blocks[w.eps[c]] for c in cells]
        if any(x >= y for x, y in zip(targets, targets[1:])):
            return False
    return True


def is_mergeable(w: CosetInvolution) -> bool:
    """True if some adjacent pair of cells maps onto an adjacent pair of one block."""
    cells = w.cells
    pos = {c: k for k, c in enumerate(cells)}
    for k, (i, j) in enumerate(cells):
        nxt = pos.get((i, j + 1))
        if nxt is None:
            continue
        (i1, j1), (i2, j2) = cells[w.eps[k]], cells[w.eps[nxt]]
        if i1 == i2 and j2 == j1 + 1:
            return True
    return False


def _compositions(m: int) -> Iterator[tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    for first in range(1, m + 1):
        for rest in _compositions(m - first):
            yield (first,) + rest


def _involutions(sizes: list[int]) -> Iterator[tuple[int, ...]]:
    n = len(sizes)
    eps: list[Optional[int]] = [None] * n

    def rec(i):
        while i < n and eps[i] is not None:
            i += 1
        if i == n:
            yield tuple(eps)
            return
        eps[i] = i
        yield from rec(i + 1)
        for j in range(i + 1, n):
            if eps[j] is None and sizes[j] == sizes[i]:
                eps[i], eps[j] = j, i
                yield from rec(i + 1)
                eps[j] = None
        eps[i] = None

    yield from rec(0)


@dataclass(frozen=True)
class W2Table:
    """Flat integer encoding of ``enumerate_W2`` output for the strata kernel."""

    elements: tuple[CosetInvolution, ...]
    start: np.ndarray
    ncell: np.ndarray
    cell_block: np.ndarray
    cell_size: np.ndarray
    cell_eps: np.ndarray
    admissible: np.ndarray

    def __len__(self):
        return len(self.elements)


@lru_cache(maxsize=4096)
def _table(M: tuple[int, ...], divs: tuple[int, ...]) -> W2Table:
    elements = _enumerate(M, divs)
    start, ncell, blocks, sizes, eps, adm = [], [], [], [], [], []
    for w in elements:
        start.append(len(blocks))
        ncell.append(len(w.eps))
        blocks.extend(w.cell_blocks)
        sizes.extend(w.cell_sizes)
        eps.extend(w.eps)
        adm.append(w.is_admissible)

    def arr(x):
        return np.asarray(x, dtype=np.int64)

    return W2Table(elements, arr(start), arr(ncell), arr(blocks), arr(sizes), arr(eps),
                   np.asarray(adm, dtype=bool))


def w2_table(M: Sequence[int], divisor_filter: DivisorFilter = None) -> W2Table:
    M = tuple(int(m) for m in M)
    return _table(M, _divisors(M, divisor_filter))
