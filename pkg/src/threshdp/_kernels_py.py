"""Pure numpy DP table fills, the fallback when the compiled extension is absent.

Every function here mirrors the compiled twin in _kernels ops-for-ops: the
fills use only float64 additions and comparisons, so the two backends
produce bit-identical tables, including tie handling. All matrices are
minimization-sense (+inf marks an infeasible cell); callers negate
maximization scores before calling in.

Tie rules mirrored from the scan orders:
  free fills scan splits k ascending with strict improvement, so among
  equal-cost splits the smallest k wins and the single-region base case
  beats any equal split. The fixed-count fill scans previous thresholds
  descending with strict improvement, so the largest one wins, while the
  final-threshold scan (done by the caller) ascends and keeps the smallest.
"""

from __future__ import annotations

import numpy as np


def free_fill(q_closed, q_edge):
    """Free-count DP with a full split-index table.

    mem[i][j] = min(q_closed[i][j], min_k q_edge[i][k] + mem[k][j]) over
    interior splits k in (i, j); idx[i][j] records the winning k (or j for
    the single-region case, even when that score is +inf).
    """
    L = q_closed.shape[0]
    mem = np.full((L, L), np.inf, dtype=np.float64)
    idx = np.full((L, L), -1, dtype=np.int32)
    for i in range(L - 1, -1, -1):
        for j in range(i + 1, L):
            best = q_closed[i, j]
            arg = j
            if j > i + 1:
                cands = q_edge[i, i + 1 : j] + mem[i + 1 : j, j]
                k = int(np.argmin(cands))
                if cands[k] < best:
                    best = cands[k]
                    arg = i + 1 + k
            mem[i, j] = best
            idx[i, j] = arg
    return mem, idx


def free_fill_links(q_closed, q_edge):
    """Free-count DP keeping only one successor link per level.

    Identical mem table to free_fill; links[i] ends up as the winning split
    of cell (i, L-1) because the column loop visits j = L-1 last.
    """
    L = q_closed.shape[0]
    mem = np.full((L, L), np.inf, dtype=np.float64)
    links = np.full(L, -1, dtype=np.int32)
    for i in range(L - 1, -1, -1):
        for j in range(i + 1, L):
            best = q_closed[i, j]
            arg = j
            if j > i + 1:
                cands = q_edge[i, i + 1 : j] + mem[i + 1 : j, j]
                k = int(np.argmin(cands))
                if cands[k] < best:
                    best = cands[k]
                    arg = i + 1 + k
            mem[i, j] = best
            links[i] = arg
    return mem, links


def fixed_fill(edge, n):
    """Layered DP for exactly n thresholds.

    dp[i][t] is the best cost of the first i+1 regions when threshold i+1
    sits at level t; nxt[i][t] is the previous threshold's level. Layer 0
    covers t in [1, L-1-n] and layer i covers t in [i+1, L-1-n+i], leaving
    room for the remaining thresholds. The caller adds the closing region
    and picks the final threshold.
    """
    L = edge.shape[0]
    dp = np.full((n, L), np.inf, dtype=np.float64)
    nxt = np.full((n, L), -1, dtype=np.int32)
    for t in range(1, L - n):
        dp[0, t] = edge[0, t]
    for i in range(1, n):
        for tj in range(i + 1, L - n + i):
            cands = dp[i - 1, i:tj] + edge[i:tj, tj]
            rev = cands[::-1]
            k = int(np.argmin(rev))
            if rev[k] < np.inf:
                dp[i, tj] = rev[k]
                nxt[i, tj] = tj - 1 - k
    return dp, nxt
