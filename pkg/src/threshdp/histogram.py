"""Histograms and O(1) interval statistics via prefix moments.

Intensity images are 2-D integer arrays with values in [0, L-1]. All
statistics run off three cumulative moment arrays (pixel count, sum of
levels, sum of squared levels) kept as exact integers, so interval weight,
mean, and variance are deterministic across platforms. int64 moments are
exact up to roughly 2**20 pixels at 255 levels, far beyond that in practice
(the second moment fits until about 1.4e14 pixels).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _readonly(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GrayHistogram:
    """Per-level pixel counts for an L-level grayscale image."""

    counts: np.ndarray
    levels: int
    total: int

    def __post_init__(self):
        counts = _readonly(np.asarray(self.counts, dtype=np.int64))
        if counts.ndim != 1 or counts.shape[0] != self.levels:
            raise ValueError("counts must be a 1-D sequence of length levels")
        if self.levels < 2:
            raise ValueError("a histogram needs at least 2 levels")
        if np.any(counts < 0):
            raise ValueError("counts must be non-negative")
        if self.total != int(counts.sum()):
            raise ValueError("total does not equal the sum of counts")
        object.__setattr__(self, "counts", counts)

    def __eq__(self, other):
        if not isinstance(other, GrayHistogram):
            return NotImplemented
        return self.levels == other.levels and np.array_equal(self.counts, other.counts)


def histogram_from_counts(counts) -> GrayHistogram:
    """Build a GrayHistogram directly from a counts sequence."""
    counts = np.asarray(counts, dtype=np.int64)
    return GrayHistogram(counts=counts, levels=len(counts), total=int(counts.sum()))


@dataclass(frozen=True, eq=False)
class NormalizedHistogram:
    """Probability-normalized histogram, probs[i] = counts[i] / total."""

    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probs", _readonly(np.asarray(self.probs, dtype=np.float64)))

    @property
    def levels(self) -> int:
        return self.probs.shape[0]


@dataclass(frozen=True, eq=False)
class PrefixMoments:
    """Cumulative zeroth, first, and second moments of a histogram.

    cum0[i] = sum of counts up to level i, cum1[i] adds a factor of the
    level, cum2[i] a factor of the squared level. All exact integers.
    """

    cum0: np.ndarray
    cum1: np.ndarray
    cum2: np.ndarray

    def __post_init__(self):
        for name in ("cum0", "cum1", "cum2"):
            object.__setattr__(self, name, _readonly(np.asarray(getattr(self, name), dtype=np.int64)))

    @property
    def levels(self) -> int:
        return self.cum0.shape[0]

    @property
    def total(self) -> int:
        return int(self.cum0[-1])


@dataclass(frozen=True)
class IntervalStats:
    """Weight, mean, and variance of one closed level interval [a, b]."""

    pixel_count: int
    weight: float
    mean: float
    variance: float
    std: float


def build_histogram(image, levels: int) -> GrayHistogram:
    """Count pixel intensities of a 2-D image into an L-level histogram."""
    img = np.asarray(image)
    if img.ndim != 2:
        raise ValueError("image must be 2-D")
    if img.size and not np.issubdtype(img.dtype, np.integer):
        if not np.all(np.equal(np.mod(img, 1), 0)):
            raise ValueError("image values must be integers")
        img = img.astype(np.int64)
    if img.size:
        lo = int(img.min())
        hi = int(img.max())
        if lo < 0 or hi >= levels:
            bad = lo if lo < 0 else hi
            raise ValueError(f"pixel value {bad} outside [0, {levels - 1}]")
    counts = np.bincount(img.ravel().astype(np.int64), minlength=levels)
    return GrayHistogram(counts=counts.astype(np.int64), levels=levels, total=int(img.size))


def normalize(h: GrayHistogram) -> NormalizedHistogram:
    """Divide counts by the total pixel count."""
    if h.total == 0:
        raise ValueError("cannot normalize an empty histogram (total is 0)")
    return NormalizedHistogram(probs=h.counts / h.total)


def prefix_moments(h: GrayHistogram) -> PrefixMoments:
    """Cumulative moment arrays enabling O(1) interval statistics."""
    idx = np.arange(h.levels, dtype=np.int64)
    return PrefixMoments(
        cum0=np.cumsum(h.counts),
        cum1=np.cumsum(h.counts * idx),
        cum2=np.cumsum(h.counts * idx * idx),
    )


def interval_stats(m: PrefixMoments, total: int, a: int, b: int) -> IntervalStats:
    """Statistics of the closed interval [a, b] in O(1).

    With zero pixels in the interval, weight is 0 and the remaining fields
    are 0 as a degenerate marker. Variance is clamped at 0 to absorb
    negative floating residue from the moment subtraction.
    """
    L = m.levels
    if a < 0 or a > b or b >= L:
        raise ValueError(f"invalid interval [{a}, {b}] for {L} levels")
    if total <= 0:
        raise ValueError("total pixel count must be positive")
    p0 = int(m.cum0[a - 1]) if a > 0 else 0
    p1 = int(m.cum1[a - 1]) if a > 0 else 0
    p2 = int(m.cum2[a - 1]) if a > 0 else 0
    P = int(m.cum0[b]) - p0
    if P == 0:
        return IntervalStats(0, 0.0, 0.0, 0.0, 0.0)
    w = P / total
    mu = (int(m.cum1[b]) - p1) / P
    var = (int(m.cum2[b]) - p2) / P - mu * mu
    if var < 0.0:
        var = 0.0
    return IntervalStats(P, w, mu, var, math.sqrt(var))
