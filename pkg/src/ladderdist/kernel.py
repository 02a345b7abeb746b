"""Backend selection and integer encoding for the strata kernel.

The compiled extension is used when it imports; set ``LADDERDIST_PURE_PYTHON=1``
to force the pure-Python fallback.
"""

from __future__ import annotations

import os
from math import lcm
from typing import Sequence

import numpy as np

from . import _kernel_py
from .segments import Segment
from .weyl import W2Table, w2_table

try:
    if os.environ.get("LADDERDIST_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernel as _compiled
except ImportError:
    _compiled = None

BACKENDS = {"python": _kernel_py.stratum_bounds}
if _compiled is not None:
    BACKENDS["cython"] = _compiled.stratum_bounds

BACKEND = "cython" if _compiled is not None else "python"


def encode(segments: Sequence[Segment]):
    """Integer arrays for a realization: towers re-indexed locally, endpoints scaled."""
    index: dict[str, int] = {}
    towers = []

    def idx(tower):
        if tower.id not in index:
            index[tower.id] = len(towers)
            towers.append(tower)
        return index[tower.id]

    seg_tower = [idx(s.tower) for s in segments]
    for t in list(towers):
        idx(t.gd)
    scale = 1
    for s in segments:
        scale = lcm(scale, s.a.denominator, s.b.denominator)
    i64 = np.int64
    return (
        np.asarray(seg_tower, dtype=i64),
        np.asarray([int(s.a * scale) for s in segments], dtype=i64),
        np.asarray([int(s.b * scale) for s in segments], dtype=i64),
        np.asarray([index[t.gd.id] for t in towers], dtype=i64),
        np.asarray([-1 if t.base_gamma is None else t.base_gamma for t in towers], dtype=i64),
        np.asarray([t.degree for t in towers], dtype=i64),
        scale,
    )


def table_for(segments: Sequence[Segment], prune: bool = True) -> W2Table:
    M = tuple(s.degree for s in segments)
    return w2_table(M, tuple(s.tower.degree for s in segments) if prune else None)


def stratum_bounds(segments: Sequence[Segment], table: W2Table = None,
                   backend: str = None) -> np.ndarray:
    """Hom bound of each stratum of ``table`` (default: the pruned table for ``segments``)."""
    if table is None:
        table = table_for(segments)
    fn = BACKENDS[backend or BACKEND]
    enc = encode(segments)
    return fn(*enc, table.start, table.ncell, table.cell_block, table.cell_size, table.cell_eps)
