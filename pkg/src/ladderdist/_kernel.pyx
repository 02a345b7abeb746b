# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled strata kernel.  Semantics identical to ``_kernel_py.stratum_bounds``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def stratum_bounds(const cnp.int64_t[:] seg_tower, const cnp.int64_t[:] seg_a,
                   const cnp.int64_t[:] seg_b, const cnp.int64_t[:] tower_gd,
                   const cnp.int64_t[:] tower_gamma, const cnp.int64_t[:] tower_deg,
                   cnp.int64_t scale, const cnp.int64_t[:] start, const cnp.int64_t[:] ncell,
                   const cnp.int64_t[:] cell_block, const cnp.int64_t[:] cell_size,
                   const cnp.int64_t[:] cell_eps):
    cdef Py_ssize_t nw = start.shape[0]
    cdef Py_ssize_t maxc = 0
    cdef Py_ssize_t k, c, s0, nc, e
    cdef cnp.int64_t blk, prev_block, t, d, l, a, top, g
    cdef bint ok
    out_arr = np.zeros(nw, dtype=np.uint8)
    cdef cnp.uint8_t[:] out = out_arr
    for k in range(nw):
        if ncell[k] > maxc:
            maxc = ncell[k]
    pt_arr = np.empty(max(maxc, 1), dtype=np.int64)
    pa_arr = np.empty(max(maxc, 1), dtype=np.int64)
    pb_arr = np.empty(max(maxc, 1), dtype=np.int64)
    cdef cnp.int64_t[:] pt = pt_arr
    cdef cnp.int64_t[:] pa = pa_arr
    cdef cnp.int64_t[:] pb = pb_arr
    for k in range(nw):
        s0 = start[k]
        nc = ncell[k]
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
            pt[c] = t
            pa[c] = a
            pb[c] = top
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
    return out_arr
