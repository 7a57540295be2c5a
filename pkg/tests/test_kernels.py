import os
import subprocess
import sys

import numpy as np
import pytest

from kpclust import _pykernels as py
from kpclust import kernels

ck = pytest.importorskip("kpclust._ckernels", reason="compiled kernels not built")


def random_dp(rng, s):
    X = rng.normal(size=(s, 2))
    D = np.linalg.norm(X[:, None] - X[None], axis=2)
    return D ** 2, rng.dirichlet(np.ones(s))


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.compiled() is not None


def test_env_forces_fallback():
    env = dict(os.environ, KPCLUST_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from kpclust import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("s,k", [(1, 1), (5, 2), (8, 3), (10, 4)])
def test_subset_scan_agrees(rng, s, k):
    Dp, w = random_dp(rng, s)
    best_c, _ = ck.subset_scan(Dp, w, k, -1.0)
    best_p, _ = py.subset_scan(Dp, w, k, -1.0)
    np.testing.assert_allclose(best_c, best_p, rtol=1e-14)
    bound = float(min(best_c)) * (1 + 1e-9) + 1e-12
    hits_c = ck.subset_scan(Dp, w, k, bound)[1]
    hits_p = py.subset_scan(Dp, w, k, bound)[1]
    assert [h[0] for h in hits_c] == [h[0] for h in hits_p]
    np.testing.assert_allclose([h[1] for h in hits_c], [h[1] for h in hits_p], rtol=1e-14)


def test_subset_scan_against_enumeration(rng):
    from itertools import combinations

    Dp, w = random_dp(rng, 7)
    best, _ = py.subset_scan(Dp, w, 3, -1.0)
    for j in (1, 2, 3):
        direct = min(float(w @ Dp[list(T)].min(axis=0)) for T in combinations(range(7), j))
        assert best[j - 1] == pytest.approx(direct, rel=1e-14)


@pytest.mark.parametrize("a,k", [(1, 1), (4, 2), (7, 3), (9, 4)])
def test_mask_partition_dp_agrees(rng, a, k):
    cost = rng.random(1 << a)
    cost[0] = 0.0
    np.testing.assert_allclose(ck.mask_partition_dp(cost, a, k), py.mask_partition_dp(cost, a, k), rtol=1e-14)


def test_mask_partition_dp_small_case():
    # three atoms, block cost = size^2: exactly-two-block optimum is 1 + 4
    a = 3
    cost = np.array([bin(m).count("1") ** 2 for m in range(1 << a)], dtype=float)
    best = py.mask_partition_dp(cost, a, 3)
    assert best[0, 7] == 9.0
    assert best[1, 7] == 5.0
    assert best[2, 7] == 3.0


@pytest.mark.parametrize("a,k", [(1, 1), (6, 2), (12, 5)])
def test_interval_dp_agrees(rng, a, k):
    C = np.triu(rng.random((a, a + 1)))
    np.testing.assert_allclose(ck.interval_dp(C, k), py.interval_dp(C, k), rtol=1e-14)


def test_simulate_chain_agrees(rng):
    P = np.array([[0.5, 0.0, 0.5], [1 / 3, 1 / 3, 1 / 3], [0.5, 0.0, 0.5]])
    cum = np.cumsum(P, axis=1)
    cum[:, -1] = 1.0
    u = rng.random(5000)
    a, b = ck.simulate_chain(cum, 1, u), py.simulate_chain(cum, 1, u)
    np.testing.assert_array_equal(a, b)
    assert a[0] == 1 and len(a) == 5001
    # state 1 is never re-entered from the outer states
    first_out = int(np.argmax(a != 1))
    assert not np.any(a[first_out:] == 1)


def test_benchmark_runs(capsys):
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    assert bench.main(["--quick", "--repeat", "1"]) == 0
    out = capsys.readouterr().out
    assert out.count("True") == 4
