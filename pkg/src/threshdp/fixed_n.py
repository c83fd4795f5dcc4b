"""Fixed-count DP solver: the optimal set of exactly n thresholds.

The recurrence composes the best (i-1)-threshold prefix with one more
region: dp[i][t] = best over s < t of dp[i-1][s] + edge(s, t), where
edge(s, t) is the score of the region between consecutive thresholds s and
t under the matrix's boundary mode. The region after the last threshold is
always the closed interval [T_n, L-1]. Maximization runs the same
minimizing kernel on the negated matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .histogram import GrayHistogram
from .objectives import (
    BoundaryMode,
    InfeasibleError,
    ObjectiveKind,
    ScoreMatrix,
    ThresholdSet,
    build_score_matrix,
    split_edge_scores,
)


@dataclass(frozen=True, eq=False)
class FixedNTables:
    """Filled DP tables in the objective's own sense.

    dp[i][t]: best total score of the first i+1 regions with threshold i+1
    at level t (sentinel-valued where unreachable). next[i][t]: the
    previous threshold's level, -1 where unset.
    """

    dp: np.ndarray
    next: np.ndarray
    sense: str


def _min_sense_tables(sm: ScoreMatrix, n: int, backend=None):
    L = sm.levels
    if not 1 <= n <= L - 2:
        raise ValueError(f"n must be in [1, {L - 2}], got {n}")
    impl = _backend.get(backend)
    q = -sm.q if sm.maximize else sm.q
    edge = split_edge_scores(q, sm.mode)
    dp, nxt = impl.fixed_fill(np.ascontiguousarray(edge), n)
    return dp, nxt, q


def fixed_n_tables(sm: ScoreMatrix, n: int, backend=None) -> FixedNTables:
    """Fill and return the DP tables (scores in the objective's sense)."""
    dp, nxt, _ = _min_sense_tables(sm, n, backend)
    if sm.maximize:
        dp = -dp
    dp.setflags(write=False)
    nxt.setflags(write=False)
    return FixedNTables(dp=dp, next=nxt, sense="maximize" if sm.maximize else "minimize")


def solve_fixed_n(sm: ScoreMatrix, n: int, backend=None) -> ThresholdSet:
    """Optimal n thresholds under the matrix's objective and boundary mode.

    Deterministic tie-breaks: the final threshold scan ascends keeping the
    first optimum (smallest T_n); the layer fills scan descending, keeping
    the largest previous threshold. Raises InfeasibleError when no
    partition into n+1 scoreable regions exists.
    """
    dp, nxt, q = _min_sense_tables(sm, n, backend)
    L = sm.levels
    tail = q[:, L - 1]
    best = math.inf
    t_n = -1
    for t in range(n, L - 1):
        c = dp[n - 1, t] + tail[t]
        if c < best:
            best = c
            t_n = t
    if not math.isfinite(best):
        raise InfeasibleError(f"no feasible partition with {n} thresholds")
    ts = [t_n]
    t = t_n
    for layer in range(n - 1, 0, -1):
        t = int(nxt[layer, t])
        if t < 0:
            raise RuntimeError(f"backtracking hit an unset link at layer {layer}")
        ts.append(t)
    ts.reverse()
    if len(ts) != n:
        raise RuntimeError(f"backtracking produced {len(ts)} thresholds, expected {n}")
    value = -best if sm.maximize else best
    return ThresholdSet(thresholds=tuple(ts), objective_value=float(value))


def sweep_optimal_values(
    h: GrayHistogram,
    kind: ObjectiveKind,
    mode: BoundaryMode,
    n_max: int,
    log_base: float = 2.0,
    backend=None,
):
    """Optimal value and thresholds for every n in [1, n_max].

    Returns a list of (n, objective_value, ThresholdSet). Each entry equals
    an independent solve_fixed_n call; the score matrix is just built once.
    """
    if not 1 <= n_max <= h.levels - 2:
        raise ValueError(f"n_max must be in [1, {h.levels - 2}], got {n_max}")
    sm = build_score_matrix(h, kind, mode, log_base=log_base)
    out = []
    for n in range(1, n_max + 1):
        ts = solve_fixed_n(sm, n, backend=backend)
        out.append((n, ts.objective_value, ts))
    return out
