"""The compiled and pure-Python stratum kernels agree with each other, with
the Fraction-based stratum analysis, and with the permutation oracle."""

import os
import random
import subprocess
import sys

import numpy as np
import pytest

import oracles
from ladderdist import kernel
from ladderdist.engine import strata
from ladderdist.multisegment import right_ordered_realizations
from ladderdist.sweep import sweep_multisegments, sweep_universe

BACKENDS = sorted(kernel.BACKENDS)


def _sample(u, k, seed, **kw):
    pool = list(sweep_multisegments(u, **kw))
    return random.Random(seed).sample(pool, k)


def test_compiled_backend_is_built():
    assert "cython" in kernel.BACKENDS, "compiled extension did not build"
    assert kernel.BACKEND == "cython"


def test_pure_python_can_be_forced():
    code = "from ladderdist import kernel; print(kernel.BACKEND)"
    env = dict(os.environ, LADDERDIST_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("gamma", [0, 1])
def test_backends_agree_with_reference(gamma):
    u = sweep_universe(gamma)
    for ms in _sample(u, 600, gamma):
        for r in right_ordered_realizations(ms)[:3]:
            segs = list(r)
            table = kernel.table_for(segs, prune=False)
            ref = np.array([a.hom_bound for a in strata(segs)], dtype=np.uint8)
            for b in BACKENDS:
                got = kernel.stratum_bounds(segs, table, backend=b)
                assert np.array_equal(got, ref), (b, r)


@pytest.mark.parametrize("gamma", [0, 1])
def test_pruned_table_loses_only_zero_strata(gamma):
    u = sweep_universe(gamma)
    for ms in _sample(u, 300, 10 + gamma):
        segs = list(ms)
        full = kernel.stratum_bounds(segs, kernel.table_for(segs, prune=False))
        pruned = kernel.stratum_bounds(segs, kernel.table_for(segs, prune=True))
        assert full.sum() == pruned.sum()


@pytest.mark.parametrize("gamma", [0, 1])
def test_reference_agrees_with_permutation_oracle(gamma):
    u = sweep_universe(gamma)
    towers = oracles.towers_table(u)
    for ms in _sample(u, 250, 20 + gamma, max_span=1):
        if ms.degree > 9:
            continue
        for r in right_ordered_realizations(ms)[:2]:
            want, _ = oracles.stratum_bounds_by_permutation(oracles.to_fraction_triples(r), towers)
            assert sum(a.hom_bound for a in strata(r)) == want, r


def test_half_integer_endpoints_are_scaled(u0):
    segs = [u0.segment("T", "-1/2", "1/2"), u0.segment("T", "-3/2", "-1/2")]
    enc = kernel.encode(segs)
    assert enc[-1] == 2 and list(enc[1]) == [-1, -3] and list(enc[2]) == [1, -1]
