"""Free-count DP solver: discovers both the count and values of thresholds.

mem[i][j] holds the minimum total cost of covering levels [i, j] with any
number of regions; mem[i][j] = min(Q(i, j), min over interior splits k of
edge(i, k) + mem[k][j]). With overlapping boundaries the split edge is the
closed interval [i, k], so level k is scored in both adjacent regions.
This is what makes the minimization non-degenerate: splitting is only
worth it where the histogram actually separates, so the optimal count of
thresholds emerges from the minimization instead of being a parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .objectives import (
    InfeasibleError,
    ScoreMatrix,
    ThresholdSet,
    split_edge_scores,
)


@dataclass(frozen=True, eq=False)
class MetDpTables:
    """Filled free-count DP tables.

    Exactly one of indices (full L x L split table) or links (length-L
    successor sequence, the memory-optimized variant) is present; both
    back the same chain from level 0 to level L-1.
    """

    mem: np.ndarray
    indices: np.ndarray | None
    links: np.ndarray | None
    levels: int


def fill_tables(sm: ScoreMatrix, keep_full_indices: bool = False, backend=None) -> MetDpTables:
    """Run the free-count fill over the score matrix.

    keep_full_indices=True keeps the whole split-index table (handy for
    dumping or inspecting every subproblem); the default keeps one
    successor link per level, which is all backtracking needs.
    """
    if sm.maximize:
        raise ValueError("the free-count solver needs a minimizing objective (MET or KITTLER)")
    impl = _backend.get(backend)
    edge = np.ascontiguousarray(split_edge_scores(sm.q, sm.mode))
    if keep_full_indices:
        mem, idx = impl.free_fill(sm.q, edge)
        links = None
    else:
        mem, links = impl.free_fill_links(sm.q, edge)
        idx = None
    mem.setflags(write=False)
    for a in (idx, links):
        if a is not None:
            a.setflags(write=False)
    return MetDpTables(mem=mem, indices=idx, links=links, levels=sm.levels)


def backtrack(tables: MetDpTables) -> tuple:
    """Interior split levels on the optimal chain from level 0 to L-1.

    Follows successor links starting at 0; the terminal level L-1 and the
    sentinels are never part of the returned thresholds.
    """
    L = tables.levels
    links = tables.links if tables.links is not None else tables.indices[:, L - 1]
    out = []
    cur = 0
    while True:
        nxt = int(links[cur])
        if nxt <= cur:
            raise RuntimeError(f"broken successor chain at level {cur} (link {nxt})")
        if nxt == L - 1:
            break
        out.append(nxt)
        cur = nxt
    return tuple(out)


def solve_free(sm: ScoreMatrix, keep_full_indices: bool = False, backend=None) -> ThresholdSet:
    """Thresholds minimizing the total region cost over every count.

    The count is emergent: it is however many split points the optimal
    chain visits. objective_value is the root cell mem[0][L-1]. Raises
    InfeasibleError when the histogram is degenerate everywhere (no finite
    cover exists).
    """
    tables = fill_tables(sm, keep_full_indices=keep_full_indices, backend=backend)
    root = float(tables.mem[0, sm.levels - 1])
    if not math.isfinite(root):
        raise InfeasibleError("histogram is degenerate: no region cover has a finite cost")
    ts = backtrack(tables)
    return ThresholdSet(thresholds=ts, objective_value=root)
