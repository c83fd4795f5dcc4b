"""Built-in worked example: a 19-level histogram with frozen expected tables.

The histogram below is small enough to print every region score Q(a, b)
and every free-count DP cell, which makes it the package's end-to-end
self-check: the expected 3-decimal cells, the two exact intermediate
values, the roots, and the backtracked thresholds are all frozen here and
compared against a fresh computation on demand. It also illustrates why
boundary handling matters: disjoint scoring over-splits this histogram
into five thresholds while overlapping scoring finds the two real valleys.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .histogram import GrayHistogram, histogram_from_counts
from .met_dp import MetDpTables, backtrack, fill_tables
from .objectives import BoundaryMode, ObjectiveKind, ScoreMatrix, build_score_matrix

SYNTH19_COUNTS = (0, 0, 7, 10, 7, 1, 2, 4, 8, 5, 3, 1, 2, 4, 6, 9, 6, 2, 1)


def synth19_histogram() -> GrayHistogram:
    """The 19-level example histogram (78 pixels)."""
    return histogram_from_counts(SYNTH19_COUNTS)


# Expected 3-decimal region scores. Row a holds Q(a, b) for b = a+1 .. 18;
# None marks a degenerate interval (zero weight or zero variance) whose
# score is the INVALID sentinel.
_Q_ROWS = {
    0: (None, None, 0.256, 0.404, 0.448, 0.585, 0.806, 1.080, 1.218, 1.308, 1.345, 1.433, 1.607, 1.831, 2.099, 2.255, 2.309, 2.341),
    1: (None, 0.256, 0.404, 0.448, 0.585, 0.806, 1.080, 1.218, 1.308, 1.345, 1.433, 1.607, 1.831, 2.099, 2.255, 2.309, 2.341),
    2: (0.256, 0.404, 0.448, 0.585, 0.806, 1.080, 1.218, 1.308, 1.345, 1.433, 1.607, 1.831, 2.099, 2.255, 2.309, 2.341),
    3: (0.256, 0.319, 0.481, 0.699, 0.954, 1.083, 1.169, 1.205, 1.292, 1.463, 1.681, 1.940, 2.090, 2.143, 2.174),
    4: (0.173, 0.340, 0.516, 0.732, 0.844, 0.924, 0.959, 1.047, 1.216, 1.426, 1.672, 1.814, 1.865, 1.896),
    5: (0.139, 0.271, 0.437, 0.539, 0.626, 0.671, 0.781, 0.971, 1.186, 1.426, 1.562, 1.613, 1.644),
    6: (0.201, 0.363, 0.472, 0.568, 0.617, 0.737, 0.933, 1.150, 1.389, 1.525, 1.575, 1.607),
    7: (0.249, 0.378, 0.490, 0.545, 0.676, 0.877, 1.093, 1.328, 1.462, 1.512, 1.544),
    8: (0.258, 0.391, 0.454, 0.591, 0.788, 0.996, 1.222, 1.351, 1.400, 1.431),
    9: (0.230, 0.296, 0.423, 0.595, 0.780, 0.981, 1.097, 1.143, 1.175),
    10: (0.158, 0.273, 0.424, 0.589, 0.765, 0.870, 0.918, 0.954),
    11: (0.139, 0.271, 0.418, 0.577, 0.683, 0.738, 0.783),
    12: (0.201, 0.350, 0.509, 0.620, 0.680, 0.729),
    13: (0.248, 0.411, 0.530, 0.597, 0.653),
    14: (0.259, 0.401, 0.482, 0.549),
    15: (0.259, 0.363, 0.442),
    16: (0.213, 0.296),
    17: (0.139,),
}



# Expected free-count DP cells as (value, split) with value None for INF
# cells. Row i holds entries for j = i+1 .. 18; the split of an INF cell is
# still j (the single-region base case installs it unconditionally).
_MEM_ROWS_OVERLAPPING = {
    0: ((None, 1), (None, 2), (0.256, 3), (0.404, 4), (0.448, 5), (0.585, 6), (0.719, 5), (0.885, 5), (0.987, 5), (1.074, 5), (1.119, 5), (1.229, 5), (1.390, 5), (1.537, 5), (1.696, 5), (1.802, 5), (1.857, 5), (1.901, 5)),
    1: ((None, 2), (0.256, 3), (0.404, 4), (0.448, 5), (0.585, 6), (0.719, 5), (0.885, 5), (0.987, 5), (1.074, 5), (1.119, 5), (1.229, 5), (1.390, 5), (1.537, 5), (1.696, 5), (1.802, 5), (1.857, 5), (1.901, 5)),
    2: ((0.256, 3), (0.404, 4), (0.448, 5), (0.585, 6), (0.719, 5), (0.885, 5), (0.987, 5), (1.074, 5), (1.119, 5), (1.229, 5), (1.390, 5), (1.537, 5), (1.696, 5), (1.802, 5), (1.857, 5), (1.901, 5)),
    3: ((0.256, 4), (0.319, 5), (0.458, 5), (0.590, 5), (0.755, 5), (0.857, 5), (0.945, 5), (0.989, 5), (1.100, 5), (1.260, 5), (1.407, 5), (1.566, 5), (1.672, 5), (1.727, 5), (1.772, 5)),
    4: ((0.173, 5), (0.312, 5), (0.444, 5), (0.610, 5), (0.712, 5), (0.800, 5), (0.844, 5), (0.954, 5), (1.115, 5), (1.262, 5), (1.421, 5), (1.527, 5), (1.582, 5), (1.627, 5)),
    5: ((0.139, 6), (0.271, 7), (0.437, 8), (0.539, 9), (0.626, 10), (0.671, 11), (0.781, 12), (0.942, 11), (1.089, 11), (1.247, 11), (1.354, 11), (1.409, 11), (1.453, 11)),
    6: ((0.201, 7), (0.363, 8), (0.472, 9), (0.568, 10), (0.617, 11), (0.737, 12), (0.888, 11), (1.035, 11), (1.194, 11), (1.300, 11), (1.355, 11), (1.400, 11)),
    7: ((0.249, 8), (0.378, 9), (0.490, 10), (0.545, 11), (0.676, 12), (0.816, 11), (0.963, 11), (1.122, 11), (1.228, 11), (1.283, 11), (1.328, 11)),
    8: ((0.258, 9), (0.391, 10), (0.454, 11), (0.591, 12), (0.725, 11), (0.872, 11), (1.031, 11), (1.137, 11), (1.192, 11), (1.236, 11)),
    9: ((0.230, 10), (0.296, 11), (0.423, 12), (0.568, 11), (0.715, 11), (0.873, 11), (0.979, 11), (1.035, 11), (1.079, 11)),
    10: ((0.158, 11), (0.273, 12), (0.424, 13), (0.576, 11), (0.735, 11), (0.841, 11), (0.896, 11), (0.941, 11)),
    11: ((0.139, 12), (0.271, 13), (0.418, 14), (0.577, 15), (0.683, 16), (0.738, 17), (0.783, 18)),
    12: ((0.201, 13), (0.350, 14), (0.509, 15), (0.620, 16), (0.680, 17), (0.729, 18)),
    13: ((0.248, 14), (0.411, 15), (0.530, 16), (0.597, 17), (0.653, 18)),
    14: ((0.259, 15), (0.401, 16), (0.482, 17), (0.549, 18)),
    15: ((0.259, 16), (0.363, 17), (0.442, 18)),
    16: ((0.213, 17), (0.296, 18)),
    17: ((0.139, 18),),
}

_MEM_ROWS_DISJOINT = {
    0: ((None, 1), (None, 2), (0.256, 3), (0.404, 4), (0.429, 4), (0.543, 5), (0.631, 4), (0.791, 5), (0.888, 4), (0.998, 4), (1.046, 4), (1.137, 4), (1.247, 4), (1.385, 4), (1.507, 4), (1.644, 4), (1.720, 4), (1.775, 4)),
    1: ((None, 2), (0.256, 3), (0.404, 4), (0.429, 4), (0.543, 5), (0.631, 4), (0.791, 5), (0.888, 4), (0.998, 4), (1.046, 4), (1.137, 4), (1.247, 4), (1.385, 4), (1.507, 4), (1.644, 4), (1.720, 4), (1.775, 4)),
    2: ((0.256, 3), (0.404, 4), (0.429, 4), (0.543, 5), (0.631, 4), (0.791, 5), (0.888, 4), (0.998, 4), (1.046, 4), (1.137, 4), (1.247, 4), (1.385, 4), (1.507, 4), (1.644, 4), (1.720, 4), (1.775, 4)),
    3: ((0.256, 4), (0.319, 5), (0.395, 5), (0.520, 6), (0.644, 5), (0.773, 5), (0.873, 5), (0.927, 5), (1.012, 5), (1.128, 5), (1.260, 5), (1.387, 5), (1.520, 5), (1.600, 5), (1.655, 5)),
    4: ((0.173, 5), (0.340, 6), (0.374, 6), (0.536, 6), (0.632, 6), (0.742, 6), (0.790, 6), (0.881, 6), (0.991, 6), (1.129, 6), (1.250, 6), (1.388, 6), (1.464, 6), (1.519, 6)),
    5: ((0.139, 6), (0.271, 7), (0.388, 7), (0.517, 7), (0.617, 7), (0.671, 11), (0.756, 7), (0.872, 12), (1.004, 7), (1.131, 12), (1.264, 7), (1.344, 12), (1.399, 12)),
    6: ((0.201, 7), (0.363, 8), (0.459, 8), (0.568, 10), (0.617, 8), (0.707, 11), (0.818, 8), (0.955, 11), (1.077, 8), (1.215, 11), (1.290, 8), (1.345, 8)),
    7: ((0.249, 8), (0.378, 9), (0.478, 9), (0.536, 10), (0.617, 9), (0.737, 10), (0.865, 9), (0.996, 10), (1.125, 9), (1.210, 10), (1.261, 9)),
    8: ((0.258, 9), (0.391, 10), (0.415, 10), (0.530, 11), (0.617, 10), (0.766, 10), (0.876, 10), (1.018, 10), (1.089, 10), (1.144, 10)),
    9: ((0.230, 10), (0.296, 11), (0.369, 11), (0.498, 12), (0.617, 11), (0.757, 12), (0.876, 11), (0.966, 11), (1.012, 11)),
    10: ((0.158, 11), (0.273, 12), (0.359, 12), (0.508, 12), (0.618, 12), (0.760, 12), (0.832, 12), (0.887, 12)),
    11: ((0.139, 12), (0.271, 13), (0.387, 13), (0.531, 14), (0.646, 13), (0.737, 13), (0.783, 18)),
    12: ((0.201, 13), (0.350, 14), (0.461, 14), (0.602, 14), (0.674, 14), (0.729, 18)),
    13: ((0.248, 14), (0.411, 15), (0.507, 15), (0.597, 17), (0.646, 15)),
    14: ((0.259, 15), (0.401, 16), (0.473, 16), (0.540, 17)),
    15: ((0.259, 16), (0.363, 17), (0.398, 17)),
    16: ((0.213, 17), (0.296, 18)),
    17: ((0.139, 18),),
}


def _flatten(rows):
    return {
        (a, a + 1 + off): entry
        for a, row in rows.items()
        for off, entry in enumerate(row)
    }


EXPECTED_Q = _flatten(_Q_ROWS)
EXPECTED_MEM = {
    BoundaryMode.OVERLAPPING: _flatten(_MEM_ROWS_OVERLAPPING),
    BoundaryMode.DISJOINT: _flatten(_MEM_ROWS_DISJOINT),
}

# Two intermediates the overlapping run must hit exactly, not just to three
# decimals: the region score Q(8, 9) and the subchain cost mem[9][17].
EXACT_Q_8_9 = 0.25758113833731044
EXACT_MEM_9_17_OVERLAPPING = 1.0345710388880593

EXPECTED_ROOT = {
    BoundaryMode.OVERLAPPING: (1.901, (5, 11)),
    BoundaryMode.DISJOINT: (1.775, (4, 6, 8, 10, 12)),
}
EXPECTED_MEM_8_17_OVERLAPPING = (1.192, 11)

TABLE_TOL = 0.0005  # the printed tables carry three decimals
EXACT_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    """One self-check outcome."""

    label: str
    passed: bool
    detail: str


def _check(results, label, passed, detail):
    results.append(CheckResult(label=label, passed=bool(passed), detail=detail))


def self_check(mode: BoundaryMode = BoundaryMode.OVERLAPPING, hist=None, backend=None):
    """Recompute the worked example and compare against the frozen tables.

    Returns a list of CheckResult. hist overrides the built-in histogram
    (used to prove the check actually fails on tampered input).
    """
    mode = BoundaryMode(mode)
    h = synth19_histogram() if hist is None else hist
    sm = build_score_matrix(h, ObjectiveKind.MET, mode)
    tables = fill_tables(sm, keep_full_indices=True, backend=backend)
    results = []

    bad = []
    for (a, b), want in EXPECTED_Q.items():
        got = sm.q[a, b]
        if want is None:
            ok = not math.isfinite(got)
        else:
            ok = math.isfinite(got) and abs(got - want) <= TABLE_TOL
        if not ok:
            bad.append(f"Q({a},{b})={got!r} want {want}")
    _check(results, "q-table", not bad, f"{len(EXPECTED_Q)} cells" if not bad else "; ".join(bad[:4]))

    got = sm.q[8, 9]
    _check(
        results,
        "q-exact-8-9",
        abs(got - EXACT_Q_8_9) <= EXACT_TOL,
        f"Q(8,9)={got!r} want {EXACT_Q_8_9!r}",
    )

    bad = []
    for (i, j), (want, split) in EXPECTED_MEM[mode].items():
        got = tables.mem[i, j]
        got_split = int(tables.indices[i, j])
        if want is None:
            ok = not math.isfinite(got) and got_split == split
        else:
            ok = math.isfinite(got) and abs(got - want) <= TABLE_TOL and got_split == split
        if not ok:
            bad.append(f"mem[{i}][{j}]={got!r}[{got_split}] want {want}[{split}]")
    _check(
        results,
        "mem-table",
        not bad,
        f"{len(EXPECTED_MEM[mode])} cells" if not bad else "; ".join(bad[:4]),
    )

    if mode is BoundaryMode.OVERLAPPING:
        got = tables.mem[9, 17]
        _check(
            results,
            "mem-exact-9-17",
            abs(got - EXACT_MEM_9_17_OVERLAPPING) <= EXACT_TOL,
            f"mem[9][17]={got!r} want {EXACT_MEM_9_17_OVERLAPPING!r}",
        )
        want_v, want_s = EXPECTED_MEM_8_17_OVERLAPPING
        got_v, got_s = tables.mem[8, 17], int(tables.indices[8, 17])
        _check(
            results,
            "mem-8-17",
            abs(got_v - want_v) <= TABLE_TOL and got_s == want_s,
            f"mem[8][17]={got_v:.3f} split={got_s} want {want_v} split={want_s}",
        )

    want_root, want_ts = EXPECTED_ROOT[mode]
    root = tables.mem[0, h.levels - 1]
    ts = backtrack(tables)
    _check(
        results,
        "root",
        math.isfinite(root) and abs(root - want_root) <= TABLE_TOL and ts == want_ts,
        f"mem[0][{h.levels - 1}]={root:.3f} thresholds={list(ts)} "
        f"want {want_root} thresholds={list(want_ts)}",
    )
    return results


def format_q_csv(sm: ScoreMatrix) -> str:
    """The score table as CSV in the printed layout: 3 decimals, blanks
    for cells below the diagonal and for INVALID cells."""
    L = sm.levels
    lines = ["a/b," + ",".join(str(b) for b in range(L))]
    for a in range(L):
        cells = []
        for b in range(L):
            v = sm.q[a, b]
            cells.append(f"{v:.3f}" if b > a and math.isfinite(v) else "")
        lines.append(f"{a}," + ",".join(cells))
    return "\n".join(lines) + "\n"


def format_mem_csv(tables: MetDpTables) -> str:
    """The DP table as CSV in the printed layout: value[split] cells with
    INF markers, blanks below the diagonal. Needs the full index table."""
    if tables.indices is None:
        raise ValueError("mem CSV needs tables filled with keep_full_indices=True")
    L = tables.levels
    lines = ["i/j," + ",".join(str(j) for j in range(L))]
    for i in range(L):
        cells = []
        for j in range(L):
            if j <= i:
                cells.append("")
                continue
            v = tables.mem[i, j]
            s = int(tables.indices[i, j])
            cells.append(f"{v:.3f}[{s}]" if math.isfinite(v) else f"INF[{s}]")
        lines.append(f"{i}," + ",".join(cells))
    return "\n".join(lines) + "\n"
