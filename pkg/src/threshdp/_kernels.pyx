# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled DP table fills.

Semantics (including tie handling) mirror _kernels_py ops-for-ops; both use
only float64 additions and comparisons, so their outputs are bit-identical.
All inputs are minimization-sense matrices (+inf marks infeasible cells).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def free_fill(const double[:, ::1] q_closed, const double[:, ::1] q_edge):
    """Free-count DP with a full split-index table. See _kernels_py.free_fill."""
    cdef Py_ssize_t L = q_closed.shape[0]
    mem_arr = np.full((L, L), np.inf, dtype=np.float64)
    idx_arr = np.full((L, L), -1, dtype=np.int32)
    cdef double[:, ::1] mem = mem_arr
    cdef cnp.int32_t[:, ::1] idx = idx_arr
    cdef Py_ssize_t i, j, k, arg
    cdef double best, c
    with nogil:
        for i in range(L - 1, -1, -1):
            for j in range(i + 1, L):
                best = q_closed[i, j]
                arg = j
                for k in range(i + 1, j):
                    c = q_edge[i, k] + mem[k, j]
                    if c < best:
                        best = c
                        arg = k
                mem[i, j] = best
                idx[i, j] = <cnp.int32_t>arg
    return mem_arr, idx_arr


def free_fill_links(const double[:, ::1] q_closed, const double[:, ::1] q_edge):
    """Free-count DP keeping one successor link per level. See _kernels_py."""
    cdef Py_ssize_t L = q_closed.shape[0]
    mem_arr = np.full((L, L), np.inf, dtype=np.float64)
    links_arr = np.full(L, -1, dtype=np.int32)
    cdef double[:, ::1] mem = mem_arr
    cdef cnp.int32_t[::1] links = links_arr
    cdef Py_ssize_t i, j, k, arg
    cdef double best, c
    with nogil:
        for i in range(L - 1, -1, -1):
            for j in range(i + 1, L):
                best = q_closed[i, j]
                arg = j
                for k in range(i + 1, j):
                    c = q_edge[i, k] + mem[k, j]
                    if c < best:
                        best = c
                        arg = k
                mem[i, j] = best
                links[i] = <cnp.int32_t>arg
    return mem_arr, links_arr


def fixed_fill(const double[:, ::1] edge, Py_ssize_t n):
    """Layered DP for exactly n thresholds. See _kernels_py.fixed_fill."""
    cdef Py_ssize_t L = edge.shape[0]
    dp_arr = np.full((n, L), np.inf, dtype=np.float64)
    nxt_arr = np.full((n, L), -1, dtype=np.int32)
    cdef double[:, ::1] dp = dp_arr
    cdef cnp.int32_t[:, ::1] nxt = nxt_arr
    cdef Py_ssize_t i, tj, tk, t
    cdef double c
    with nogil:
        for t in range(1, L - n):
            dp[0, t] = edge[0, t]
        for i in range(1, n):
            for tj in range(i + 1, L - n + i):
                for tk in range(tj - 1, i - 1, -1):
                    c = dp[i - 1, tk] + edge[tk, tj]
                    if c < dp[i, tj]:
                        dp[i, tj] = c
                        nxt[i, tj] = <cnp.int32_t>tk
    return dp_arr, nxt_arr
