"""Pure-Python strata kernel.  Mirrors ``_kernel.pyx`` line for line."""

import numpy as np


def stratum_bounds(seg_tower, seg_a, seg_b, tower_gd, tower_gamma, tower_deg, scale,
                   start, ncell, cell_block, cell_size, cell_eps):
    """Hom bound (0 or 1) of every stratum in a flattened ``W_2`` table.

    Segment endpoints arrive multiplied by ``scale`` so that all arithmetic
    is on integers.  ``tower_gamma`` is -1 where undefined.
    """
    seg_tower = list(seg_tower)
    seg_a = list(seg_a)
    seg_b = list(seg_b)
    tower_gd = list(tower_gd)
    tower_gamma = list(tower_gamma)
    tower_deg = list(tower_deg)
    cell_block = list(cell_block)
    cell_size = list(cell_size)
    cell_eps = list(cell_eps)
    nw = len(start)
    out = np.zeros(nw, dtype=np.uint8)
    for k in range(nw):
        s0 = int(start[k])
        nc = int(ncell[k])
        pt = [0] * nc
        pa = [0] * nc
        pb = [0] * nc
        ok = True
        prev_block = -1
        top = 0
        for c in range(nc):
            blk = cell_block[s0 + c]
            t = seg_tower[blk]
            if blk != prev_block:
                top = seg_b[blk]
                prev_block = blk
            d = tower_deg[t]
            l = cell_size[s0 + c]
            if l % d:
                ok = False
                break
            a = top - (l // d - 1) * scale
            pt[c], pa[c], pb[c] = t, a, top
            top = a - scale
        if not ok:
            continue
        for c in range(nc):
            e = cell_eps[s0 + c]
            t = pt[c]
            if e == c:
                if tower_gd[t] != t or pa[c] != -pb[c]:
                    ok = False
                    break
                g = tower_gamma[t]
                if pa[c] % scale:
                    g = 1 - g
                if g != 0:
                    ok = False
                    break
            elif e > c:
                if pt[e] != tower_gd[t] or pa[e] != -pb[c] or pb[e] != -pa[c]:
                    ok = False
                    break
        if ok:
            out[k] = 1
    return out
