"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each row times one kernel call on the same inputs in both backends and
checks that the outputs agree.
"""

import argparse
import time

import numpy as np

from kpclust import _pykernels as py

try:
    from kpclust import _ckernels as ck
except ImportError:  # pragma: no cover
    ck = None


def best_time(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(quick):
    rng = np.random.default_rng(0)
    s = 16 if quick else 40
    X = rng.normal(size=(s, 2))
    Dp = np.linalg.norm(X[:, None] - X[None], axis=2) ** 2
    w = rng.dirichlet(np.ones(s))
    yield f"subset_scan s={s} k=3", lambda m: m.subset_scan(Dp, w, 3, -1.0)[0]

    a = 9 if quick else 12
    cost = rng.random(1 << a)
    cost[0] = 0.0
    yield f"mask_partition_dp atoms={a} k=3", lambda m: m.mask_partition_dp(cost, a, 3)

    n = 200 if quick else 1000
    C = np.triu(rng.random((n, n + 1)))
    yield f"interval_dp atoms={n} k=8", lambda m: m.interval_dp(C, 8)

    steps = 20_000 if quick else 200_000
    P = np.array([[0.5, 0.0, 0.5], [1 / 3, 1 / 3, 1 / 3], [0.5, 0.0, 0.5]])
    cum = np.cumsum(P, axis=1)
    cum[:, -1] = 1.0
    u = rng.random(steps)
    yield f"simulate_chain steps={steps}", lambda m: m.simulate_chain(cum, 1, u)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args(argv)
    if ck is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"{'kernel':<34} {'python [s]':>11} {'cython [s]':>11} {'speedup':>9}  agree")
    for name, call in cases(args.quick):
        tp, op = best_time(lambda: call(py), args.repeat)
        tc, oc = best_time(lambda: call(ck), args.repeat)
        agree = np.allclose(np.asarray(op), np.asarray(oc), rtol=1e-12)
        print(f"{name:<34} {tp:>11.4f} {tc:>11.4f} {tp / tc:>8.1f}x  {agree}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
