"""Region objectives and the dense score matrix consumed by the DP solvers.

Q(a, b) is always the cost (or gain) of the closed level interval [a, b].
The score matrix is filled for every a <= b including singletons; cells with
a > b hold the objective's sentinel so infeasible candidate sums mask
themselves out of a minimization or maximization scan. Boundary handling
(disjoint vs overlapping regions) is not baked into the matrix: the solvers
decide which cell represents a region, so one matrix serves both modes.

All logarithms default to base 2, which is what the reference tables use.
Any other base only rescales every score by a positive constant, so the
optimizing threshold sets are identical (see build_score_matrix's log_base).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .histogram import (
    GrayHistogram,
    NormalizedHistogram,
    PrefixMoments,
    interval_stats,
    normalize,
    prefix_moments,
)


class InfeasibleError(Exception):
    """No feasible region partition exists for the requested solve."""


class ObjectiveKind(enum.Enum):
    """Per-region scoring rule plus its optimization sense."""

    OTSU = "otsu"
    KAPUR = "kapur"
    KITTLER = "kittler"
    MET = "met"

    @property
    def maximize(self) -> bool:
        return self in (ObjectiveKind.OTSU, ObjectiveKind.KAPUR)

    @property
    def sentinel(self) -> float:
        """INVALID marker: +inf when minimizing, -inf when maximizing."""
        return -math.inf if self.maximize else math.inf


class BoundaryMode(enum.Enum):
    """How a solver reads region extents out of the score matrix.

    DISJOINT: region i covers [T_{i-1}, T_i - 1], each level scored once.
    OVERLAPPING: region i covers [T_{i-1}, T_i], the boundary level
    contributing to both adjacent regions' statistics. Scoring only; actual
    threshold application always assigns a level to a single region.
    """

    DISJOINT = "disjoint"
    OVERLAPPING = "overlapping"


@dataclass(frozen=True)
class ThresholdSet:
    """Strictly increasing interior thresholds plus the achieved objective."""

    thresholds: tuple
    objective_value: float

    def __post_init__(self):
        ts = tuple(int(t) for t in self.thresholds)
        if any(t2 <= t1 for t1, t2 in zip(ts, ts[1:])):
            raise ValueError("thresholds must be strictly increasing")
        if ts and ts[0] < 1:
            raise ValueError("thresholds must be interior (>= 1)")
        object.__setattr__(self, "thresholds", ts)

    @property
    def n(self) -> int:
        return len(self.thresholds)


@dataclass(frozen=True, eq=False)
class ScoreMatrix:
    """Dense L x L table of region scores Q[a][b] for a <= b.

    kind and log_base describe the scoring rule; mode records which boundary
    convention the matrix is meant to be consumed under (metadata for the
    solvers, the cell contents are closed-interval either way).
    """

    q: np.ndarray
    kind: ObjectiveKind
    mode: BoundaryMode
    levels: int
    log_base: float

    def __post_init__(self):
        q = np.ascontiguousarray(self.q, dtype=np.float64)
        q.setflags(write=False)
        object.__setattr__(self, "q", q)

    @property
    def sentinel(self) -> float:
        return self.kind.sentinel

    @property
    def maximize(self) -> bool:
        return self.kind.maximize


def global_mean(m: PrefixMoments) -> float:
    """Mean intensity over the whole histogram."""
    if m.total <= 0:
        raise ValueError("histogram is empty (total is 0)")
    return int(m.cum1[-1]) / m.total


def q_otsu(m: PrefixMoments, a: int, b: int, global_mean: float) -> float:
    """Between-class contribution w * (mean - global_mean)^2 of [a, b].

    Empty intervals contribute 0.
    """
    s = interval_stats(m, m.total, a, b)
    if s.pixel_count == 0:
        return 0.0
    return s.weight * (s.mean - global_mean) ** 2


def q_kapur(p, cum_plogp, a: int, b: int) -> float:
    """Conditional entropy log2(w) - (sum of p*log2(p)) / w over [a, b].

    Terms with p = 0 contribute nothing and an empty interval scores 0.
    """
    probs = p.probs if isinstance(p, NormalizedHistogram) else np.asarray(p, dtype=np.float64)
    L = probs.shape[0]
    if a < 0 or a > b or b >= L:
        raise ValueError(f"invalid interval [{a}, {b}] for {L} levels")
    w = float(probs[a : b + 1].sum())
    if w <= 0.0:
        return 0.0
    s = float(cum_plogp[b]) - (float(cum_plogp[a - 1]) if a > 0 else 0.0)
    return math.log2(w) - s / w


def q_kittler(m: PrefixMoments, total: int, a: int, b: int) -> float:
    """Minimum-error region cost w * (log2(sigma) - log2(w)) of [a, b].

    Returns +inf (the minimization sentinel) when the interval holds no
    pixels or has zero variance.
    """
    s = interval_stats(m, total, a, b)
    if s.pixel_count == 0 or s.variance <= 0.0:
        return math.inf
    return s.weight * (math.log2(s.std) - math.log2(s.weight))


def q_met(m: PrefixMoments, total: int, a: int, b: int) -> float:
    """Modified minimum-error region cost, same formula as q_kittler.

    The modification lives in how the free-count solver feeds intervals to
    it (overlapping boundaries), not in the per-interval formula.
    """
    return q_kittler(m, total, a, b)


def cumulative_plogp(p) -> np.ndarray:
    """Per-level cumulative sum of p * log2(p), with 0 * log2(0) = 0."""
    probs = p.probs if isinstance(p, NormalizedHistogram) else np.asarray(p, dtype=np.float64)
    terms = np.zeros_like(probs)
    nz = probs > 0
    terms[nz] = probs[nz] * np.log2(probs[nz])
    return np.cumsum(terms)


def build_score_matrix(
    h: GrayHistogram,
    kind: ObjectiveKind,
    mode: BoundaryMode,
    log_base: float = 2.0,
) -> ScoreMatrix:
    """Materialize Q[a][b] for all 0 <= a <= b <= L-1 in O(L^2).

    Cells with a > b hold the sentinel. Degenerate intervals are 0 under
    OTSU/KAPUR and the sentinel under KITTLER/MET (zero weight or zero
    variance has no defined log cost).
    """
    if not isinstance(kind, ObjectiveKind):
        kind = ObjectiveKind(kind)
    if not isinstance(mode, BoundaryMode):
        mode = BoundaryMode(mode)
    if h.total == 0:
        raise ValueError("cannot score an empty histogram")
    if log_base <= 1.0:
        raise ValueError("log_base must be greater than 1")
    scale = 1.0 / math.log2(log_base)

    m = prefix_moments(h)
    L = h.levels
    total = h.total
    pre0 = np.concatenate(([0], m.cum0[:-1]))
    pre1 = np.concatenate(([0], m.cum1[:-1]))
    pre2 = np.concatenate(([0], m.cum2[:-1]))
    P = m.cum0[None, :] - pre0[:, None]
    M1 = m.cum1[None, :] - pre1[:, None]
    M2 = m.cum2[None, :] - pre2[:, None]
    upper = np.tril(np.ones((L, L), dtype=bool)).T

    sentinel = kind.sentinel
    with np.errstate(divide="ignore", invalid="ignore"):
        if kind is ObjectiveKind.OTSU:
            w = P / total
            mu = M1 / P
            gm = int(m.cum1[-1]) / total
            q = w * (mu - gm) ** 2
            out = np.where(upper & (P > 0), q, np.where(upper, 0.0, sentinel))
        elif kind is ObjectiveKind.KAPUR:
            cum_plogp = cumulative_plogp(normalize(h))
            preS = np.concatenate(([0.0], cum_plogp[:-1]))
            S = cum_plogp[None, :] - preS[:, None]
            w = P / total
            q = (np.log2(w) - S / w) * scale
            out = np.where(upper & (P > 0), q, np.where(upper, 0.0, sentinel))
        else:
            w = P / total
            mu = M1 / P
            var = M2 / P - mu * mu
            q = w * (np.log2(np.sqrt(var)) - np.log2(w)) * scale
            out = np.where(upper & (P > 0) & (var > 0), q, sentinel)

    return ScoreMatrix(q=out, kind=kind, mode=mode, levels=L, log_base=log_base)


def split_edge_scores(q: np.ndarray, mode: BoundaryMode) -> np.ndarray:
    """Score of the region a solver closes when it splits at a level.

    E[a][b] is the cost of the region that starts at a and ends at split
    point b: the closed interval [a, b] when boundaries overlap, [a, b-1]
    when they are disjoint. Expects (and returns) a minimization-sense
    matrix, +inf marking infeasible cells.
    """
    if mode is BoundaryMode.OVERLAPPING:
        return q
    edge = np.empty_like(q)
    edge[:, 0] = np.inf
    edge[:, 1:] = q[:, :-1]
    return edge


def _region_bounds(thresholds, L: int, mode: BoundaryMode):
    """Closed [lo, hi] extents of the n+1 regions induced by the thresholds."""
    edges = (0,) + tuple(thresholds) + (L - 1,)
    bounds = []
    for i in range(len(edges) - 1):
        lo = edges[i]
        hi = edges[i + 1]
        if mode is BoundaryMode.DISJOINT and i < len(edges) - 2:
            hi -= 1
        bounds.append((lo, hi))
    return bounds


def evaluate_thresholds(sm: ScoreMatrix, t) -> float:
    """Total objective of a threshold set under the matrix's kind and mode.

    Accepts a ThresholdSet or a plain increasing sequence. Returns the
    matrix's sentinel when any region is degenerate.
    """
    ts = tuple(t.thresholds) if isinstance(t, ThresholdSet) else tuple(int(v) for v in t)
    L = sm.levels
    if any(t2 <= t1 for t1, t2 in zip(ts, ts[1:])):
        raise ValueError("thresholds must be strictly increasing")
    if ts and (ts[0] < 1 or ts[-1] > L - 2):
        raise ValueError(f"thresholds must lie in [1, {L - 2}]")
    acc = 0.0
    for lo, hi in _region_bounds(ts, L, sm.mode):
        v = sm.q[lo, hi]
        if not math.isfinite(v):
            return sm.sentinel
        acc += v
    return acc
