"""Shared generators and brute-force oracles for the test suite.

The oracles recompute everything from raw counts with their own formulas
(two-pass variance, conditional-entropy form of the region entropy) so that
agreement with the library is evidence rather than tautology. The partition
oracles consume the library's score matrix on purpose: they verify the
optimizers, and reusing the matrix makes exact float comparison meaningful.
"""

import itertools
import math

import numpy as np

from threshdp.objectives import BoundaryMode, ObjectiveKind


# ---------------------------------------------------------------------------
# Random histogram generation
# ---------------------------------------------------------------------------

def random_counts(rng, levels, style=None):
    """Integer counts with at least one populated level.

    Three styles: dense (every level populated), sparse (about half the
    levels empty), spiky (a few tall spikes over a thin floor). Degenerate
    inputs are what break optimizers, so zeros are well represented.
    """
    if style is None:
        style = ("dense", "sparse", "spiky")[int(rng.integers(0, 3))]
    if style == "dense":
        counts = rng.integers(1, 60, size=levels)
    elif style == "sparse":
        counts = rng.integers(0, 40, size=levels)
        counts[rng.random(levels) < 0.5] = 0
    else:
        counts = rng.integers(0, 4, size=levels)
        spikes = rng.integers(0, levels, size=max(2, levels // 6))
        counts[spikes] += rng.integers(50, 500, size=spikes.size)
    counts = counts.astype(np.int64)
    if counts.sum() == 0:
        counts[int(rng.integers(0, levels))] = 1
    return counts


def image_from_counts(counts):
    """A 2D image realizing the histogram exactly (levels repeated by count)."""
    counts = np.asarray(counts, dtype=np.int64)
    flat = np.repeat(np.arange(counts.size), counts)
    width = max(1, int(math.isqrt(flat.size)))
    height = -(-flat.size // width)
    padded = np.full(width * height, flat[-1] if flat.size else 0, dtype=flat.dtype)
    padded[: flat.size] = flat
    return padded.reshape(height, width)


# ---------------------------------------------------------------------------
# Direct-summation statistics and scores (independent formulas)
# ---------------------------------------------------------------------------

def direct_stats(counts, a, b):
    """Two-pass population statistics of levels [a, b], plain Python floats."""
    counts = [int(c) for c in counts]
    total = float(sum(counts))
    pix = float(sum(counts[a : b + 1]))
    if pix == 0.0:
        return {"pixel_count": 0.0, "weight": 0.0, "mean": 0.0,
                "variance": 0.0, "std": 0.0}
    w = pix / total
    mean = sum(j * counts[j] for j in range(a, b + 1)) / pix
    var = sum(counts[j] * (j - mean) ** 2 for j in range(a, b + 1)) / pix
    return {"pixel_count": pix, "weight": w, "mean": mean,
            "variance": var, "std": math.sqrt(var)}


def direct_q(counts, kind, a, b):
    """Region score recomputed from raw counts; None when undefined.

    Uses base-2 logs throughout. The Kapur branch evaluates the conditional
    entropy sum directly instead of the log w - sum(p log p)/w identity.
    """
    counts = [int(c) for c in counts]
    st = direct_stats(counts, a, b)
    total = sum(counts)
    if kind is ObjectiveKind.OTSU:
        if st["pixel_count"] == 0:
            return 0.0
        gm = sum(j * counts[j] for j in range(len(counts))) / total
        return st["weight"] * (st["mean"] - gm) ** 2
    if kind is ObjectiveKind.KAPUR:
        if st["pixel_count"] == 0:
            return 0.0
        acc = 0.0
        for j in range(a, b + 1):
            if counts[j]:
                r = (counts[j] / total) / st["weight"]
                acc -= r * math.log2(r)
        return acc
    if st["pixel_count"] == 0 or st["variance"] <= 0.0:
        return None
    return st["weight"] * (math.log2(st["std"]) - math.log2(st["weight"]))


# ---------------------------------------------------------------------------
# Exhaustive partition oracles
# ---------------------------------------------------------------------------

def tie_key(ts):
    """Documented tie order: smallest last threshold, then largest earlier ones."""
    return (ts[-1],) + tuple(-t for t in reversed(ts[:-1]))


def brute_fixed_n(sm, n):
    """Exhaustive search over all size-n threshold sets on a score matrix.

    Folds region scores left to right, the same association the layered
    recurrence uses, so agreement with the solver is exact in floating
    point. Returns (value, thresholds) or None when every set is degenerate.
    """
    q = sm.q
    L = sm.levels
    disjoint = sm.mode is BoundaryMode.DISJOINT
    sign = -1.0 if sm.maximize else 1.0
    best = None
    for ts in itertools.combinations(range(1, L - 1), n):
        edges = (0,) + ts
        acc = 0.0
        for i in range(n):
            a, b = edges[i], edges[i + 1]
            acc = acc + (q[a, b - 1] if disjoint else q[a, b])
        acc = acc + q[ts[-1], L - 1]
        if not math.isfinite(acc):
            continue
        key = (sign * acc,) + tie_key(ts)
        if best is None or key < best[0]:
            best = (key, acc, ts)
    if best is None:
        return None
    return best[1], best[2]


def brute_free(sm):
    """Exhaustive minimum over every subset of interior split levels.

    Folds edge scores right to left, the same association the memoized
    recursion uses. Returns (value, list of minimizing subsets); the value
    is +inf and the list empty when no finite chain exists.
    """
    q = sm.q
    L = sm.levels
    disjoint = sm.mode is BoundaryMode.DISJOINT
    best_v = math.inf
    best_sets = []
    for r in range(0, L - 1):
        for ts in itertools.combinations(range(1, L - 1), r):
            chain = (0,) + ts + (L - 1,)
            acc = q[chain[-2], L - 1]
            for i in range(len(chain) - 3, -1, -1):
                a, b = chain[i], chain[i + 1]
                e = q[a, b - 1] if disjoint else q[a, b]
                acc = e + acc
            if acc < best_v:
                best_v = acc
                best_sets = [ts]
            elif acc == best_v and math.isfinite(acc):
                best_sets.append(ts)
    return best_v, best_sets


# ---------------------------------------------------------------------------
# Canonical fixtures
# ---------------------------------------------------------------------------

def two_spike_counts(levels=19, lo=2, hi=16, mass=4):
    """Equal mass at two levels, zero elsewhere."""
    counts = np.zeros(levels, dtype=np.int64)
    counts[lo] = mass
    counts[hi] = mass
    return counts
