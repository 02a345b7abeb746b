"""Compare the compiled and pure-Python stratum kernels.

Two timings per backend:

* ``kernel``: the inner loop only, on pre-encoded arrays and pre-built tables;
* ``end-to-end``: ``key_lemma_check`` on each realization (encoding included).

Run ``python3 benchmarks/bench_strata.py --help`` for options.
"""

import argparse
import random
import sys
import time

from ladderdist import kernel
from ladderdist.engine import key_lemma_check
from ladderdist.sweep import sweep_realizations, sweep_universe


def sample(n, seed, min_degree):
    rs = [r for r in sweep_realizations(sweep_universe(0))
          if sum(s.degree for s in r) >= min_degree]
    random.Random(seed).shuffle(rs)
    return rs[:n]


def time_kernel(rs, backend, repeat):
    fn = kernel.BACKENDS[backend]
    jobs = []
    for r in rs:
        segs = list(r)
        t = kernel.table_for(segs, prune=False)
        jobs.append((kernel.encode(segs), (t.start, t.ncell, t.cell_block, t.cell_size, t.cell_eps)))
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for enc, tab in jobs:
            fn(*enc, *tab)
        best = min(best, time.perf_counter() - t0)
    strata = sum(len(kernel.table_for(list(r), prune=False)) for r in rs)
    return best, strata


def time_end_to_end(rs, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for r in rs:
            key_lemma_check(r, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=2000, help="realizations to time")
    p.add_argument("--min-degree", type=int, default=8,
                   help="only realizations of at least this total degree")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    rs = sample(args.count, args.seed, args.min_degree)
    backends = sorted(kernel.BACKENDS)
    print(f"{len(rs)} realizations of degree >= {args.min_degree}; backends: {', '.join(backends)}")
    rows = {}
    for b in backends:
        k, strata = time_kernel(rs, b, args.repeat)
        e = time_end_to_end(rs, b, args.repeat)
        rows[b] = (k, e)
        print(f"{b:>8}  kernel {k * 1e3:9.1f} ms ({strata / k:,.0f} strata/s)"
              f"   end-to-end {e * 1e3:9.1f} ms")
    if "cython" in rows:
        kp, ep = rows["python"]
        kc, ec = rows["cython"]
        print(f"speed-up  kernel x{kp / kc:.1f}   end-to-end x{ep / ec:.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
