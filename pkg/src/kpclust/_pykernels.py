"""Pure-Python/numpy kernels. Reference implementation and import fallback.

Signatures and results match the compiled ``_ckernels`` module exactly up
to floating-point summation order.
"""

from __future__ import annotations

import numpy as np


def subset_scan(Dp, w, k, bound):
    """Scan every subset of candidate rows of ``Dp`` with 1..k members.

    ``Dp[c, a]`` is the p-th power distance from candidate ``c`` to atom
    ``a``; the cost of a subset is ``sum_a w[a] * min_{c in subset} Dp[c, a]``.
    Subsets are visited in lexicographic order.

    Returns ``(best, hits)``: ``best[j-1]`` is the least cost over subsets
    of exactly ``j`` members (``inf`` if there are none), and ``hits`` lists
    ``(subset, cost)`` for every subset with ``cost <= bound`` (nothing is
    collected when ``bound < 0``).
    """
    Dp = np.ascontiguousarray(Dp, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    ncand = Dp.shape[0]
    best = np.full(k, np.inf)
    hits = []
    collect = bound >= 0
    idx = [0] * k
    mins = [None] * (k + 1)
    mins[0] = np.full(Dp.shape[1], np.inf)

    def rec(depth, start):
        for c in range(start, ncand):
            cur = np.minimum(mins[depth], Dp[c])
            cost = float(np.dot(w, cur))
            idx[depth] = c
            if cost < best[depth]:
                best[depth] = cost
            if collect and cost <= bound:
                hits.append((tuple(idx[: depth + 1]), cost))
            if depth + 1 < k:
                mins[depth + 1] = cur
                rec(depth + 1, c + 1)

    if k >= 1 and ncand >= 1:
        rec(0, 0)
    return best, hits


def mask_partition_dp(block_cost, natoms, k):
    """Least cost of splitting each atom mask into exactly ``j`` blocks.

    ``block_cost[mask]`` is the cost of serving the atoms in ``mask`` with a
    single center. Returns ``best`` of shape ``(k, 2**natoms)`` where
    ``best[j-1, mask]`` is the minimum over partitions of ``mask`` into
    ``j`` nonempty blocks of the summed block costs.
    """
    block_cost = np.ascontiguousarray(block_cost, dtype=np.float64)
    size = 1 << natoms
    best = np.full((k, size), np.inf)
    best[0, :] = block_cost
    best[0, 0] = np.inf
    for j in range(1, k):
        prev = best[j - 1]
        row = best[j]
        for mask in range(1, size):
            low = mask & -mask
            rest = mask ^ low
            # blocks containing the lowest atom: low | s for s a proper submask of rest
            s = rest
            b = np.inf
            while True:
                blk = low | s
                if blk != mask:
                    v = block_cost[blk] + prev[mask ^ blk]
                    if v < b:
                        b = v
                if s == 0:
                    break
                s = (s - 1) & rest
            row[mask] = b
    return best


def interval_dp(C, k):
    """Optimal split of ``a`` sorted atoms into exactly ``j`` contiguous runs.

    ``C[i, l]`` (``i <= l``) is the cost of one cell holding atoms ``i..l``.
    Returns ``F`` of shape ``(k + 1, a + 1)`` with ``F[j, i]`` the least cost
    of covering the first ``i`` atoms with ``j`` cells.
    """
    C = np.ascontiguousarray(C, dtype=np.float64)
    a = C.shape[0]
    F = np.full((k + 1, a + 1), np.inf)
    F[0, 0] = 0.0
    for j in range(1, k + 1):
        for i in range(j, a + 1):
            s = np.arange(j - 1, i)
            F[j, i] = np.min(F[j - 1, s] + C[s, i - 1])
    return F


def simulate_chain(cumP, start, u):
    """Markov chain path of length ``len(u) + 1`` by inverse-CDF stepping."""
    cumP = np.ascontiguousarray(cumP, dtype=np.float64)
    out = np.empty(len(u) + 1, dtype=np.int64)
    s = int(start)
    out[0] = s
    last = cumP.shape[1] - 1
    for t, v in enumerate(u):
        row = cumP[s]
        j = int(np.searchsorted(row, v, side="right"))
        s = j if j <= last else last
        out[t + 1] = s
    return out
