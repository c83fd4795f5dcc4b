"""Apply a threshold set to an image, replacing regions by their mean level.

Region extents follow the conventional half-open rule [T_{i-1}, T_i): a
pixel equal to a threshold joins the upper region, and no pixel is counted
twice (overlapping boundaries are a scoring device only and never apply
here). Replacement levels are each region's mean intensity from the
image's own histogram, rounded half up; a region with no pixels falls back
to its interval midpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .histogram import build_histogram, interval_stats, prefix_moments
from .objectives import ThresholdSet


@dataclass(frozen=True)
class Region:
    """One quantization region: closed level interval and replacement level."""

    lo: int
    hi: int
    level: int


@dataclass(frozen=True, eq=False)
class QuantizedImage:
    """Thresholded image plus the region map that produced it."""

    pixels: np.ndarray
    region_map: tuple


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def apply_thresholds(image, t, levels: int) -> QuantizedImage:
    """Quantize a 2-D image into the n+1 regions induced by n thresholds.

    Accepts a ThresholdSet or a plain increasing sequence of interior
    levels. The output array has the same shape as the input; its dtype is
    uint8 when levels <= 256.
    """
    ts = tuple(t.thresholds) if isinstance(t, ThresholdSet) else tuple(int(v) for v in t)
    if any(t2 <= t1 for t1, t2 in zip(ts, ts[1:])):
        raise ValueError("thresholds must be strictly increasing")
    if ts and (ts[0] < 1 or ts[-1] > levels - 2):
        raise ValueError(f"thresholds must lie in [1, {levels - 2}]")
    img = np.asarray(image)
    if img.ndim != 2:
        raise ValueError("image must be 2-D")
    if img.size == 0:
        raise ValueError("image is empty")

    h = build_histogram(img, levels)
    m = prefix_moments(h)
    edges = (0,) + ts + (levels,)
    regions = []
    for i in range(len(edges) - 1):
        lo, hi = edges[i], edges[i + 1] - 1
        s = interval_stats(m, h.total, lo, hi)
        if s.pixel_count == 0:
            level = (lo + hi + 1) // 2
        else:
            level = _round_half_up(s.mean)
        regions.append(Region(lo=lo, hi=hi, level=level))

    replacement = np.array([r.level for r in regions], dtype=np.int64)
    region_of = np.searchsorted(np.asarray(ts, dtype=np.int64), img, side="right")
    out = replacement[region_of]
    if levels <= 256:
        out = out.astype(np.uint8)
    return QuantizedImage(pixels=out, region_map=tuple(regions))
