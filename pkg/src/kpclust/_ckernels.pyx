# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same contracts as ``kpclust._pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY

cnp.import_array()


def subset_scan(Dp, w, int k, double bound):
    cdef const double[:, ::1] D = np.ascontiguousarray(Dp, dtype=np.float64)
    cdef const double[::1] W = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t ncand = D.shape[0]
    cdef Py_ssize_t na = D.shape[1]
    best_arr = np.full(k, np.inf)
    cdef double[::1] best = best_arr
    hits = []
    if k < 1 or ncand < 1:
        return best_arr, hits
    cdef bint collect = bound >= 0
    # mins[d] holds the running minimum over the first d chosen rows
    mins_arr = np.empty((k + 1, na), dtype=np.float64)
    cdef double[:, ::1] mins = mins_arr
    cdef Py_ssize_t[::1] idx = np.zeros(k, dtype=np.intp)
    cdef Py_ssize_t a, depth, c
    cdef double cost, v, m
    for a in range(na):
        mins[0, a] = INFINITY
    depth = 0
    idx[0] = 0
    while depth >= 0:
        c = idx[depth]
        if c >= ncand:
            depth -= 1
            if depth >= 0:
                idx[depth] += 1
            continue
        cost = 0.0
        for a in range(na):
            m = mins[depth, a]
            v = D[c, a]
            if v < m:
                m = v
            mins[depth + 1, a] = m
            cost += W[a] * m
        if cost < best[depth]:
            best[depth] = cost
        if collect and cost <= bound:
            hits.append((tuple([idx[i] for i in range(depth + 1)]), cost))
        if depth + 1 < k and c + 1 < ncand:
            depth += 1
            idx[depth] = c + 1
        else:
            idx[depth] += 1
    return best_arr, hits


def mask_partition_dp(block_cost, int natoms, int k):
    cdef const double[::1] bc = np.ascontiguousarray(block_cost, dtype=np.float64)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << natoms
    best_arr = np.full((k, size), np.inf)
    cdef double[:, ::1] best = best_arr
    cdef Py_ssize_t mask, low, rest, s, blk, j
    cdef double b, v
    for mask in range(1, size):
        best[0, mask] = bc[mask]
    for j in range(1, k):
        for mask in range(1, size):
            low = mask & -mask
            rest = mask ^ low
            s = rest
            b = INFINITY
            while True:
                blk = low | s
                if blk != mask:
                    v = bc[blk] + best[j - 1, mask ^ blk]
                    if v < b:
                        b = v
                if s == 0:
                    break
                s = (s - 1) & rest
            best[j, mask] = b
    return best_arr


def interval_dp(C, int k):
    cdef const double[:, ::1] Cm = np.ascontiguousarray(C, dtype=np.float64)
    cdef Py_ssize_t a = Cm.shape[0]
    F_arr = np.full((k + 1, a + 1), np.inf)
    cdef double[:, ::1] F = F_arr
    cdef Py_ssize_t j, i, s
    cdef double b, v
    F[0, 0] = 0.0
    for j in range(1, k + 1):
        for i in range(j, a + 1):
            b = INFINITY
            for s in range(j - 1, i):
                v = F[j - 1, s] + Cm[s, i - 1]
                if v < b:
                    b = v
            F[j, i] = b
    return F_arr


def simulate_chain(cumP, Py_ssize_t start, u):
    cdef const double[:, ::1] P = np.ascontiguousarray(cumP, dtype=np.float64)
    cdef const double[::1] U = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t n = U.shape[0]
    cdef Py_ssize_t ns = P.shape[1]
    out_arr = np.empty(n + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef Py_ssize_t t, j, s = start
    cdef double v
    out[0] = s
    for t in range(n):
        v = U[t]
        j = 0
        while j < ns - 1 and P[s, j] <= v:
            j += 1
        s = j
        out[t + 1] = s
    return out_arr
