"""Image quality metrics: MSE, PSNR, and SSIM.

SSIM follows the canonical single-scale formulation: local statistics
under an 11x11 Gaussian window (sigma 1.5), stabilizers K1 = 0.01 and
K2 = 0.03 on a dynamic range of 255, and the mean of the local map over
windows that fit entirely inside the image. The parameters ride along in
every QualityReport so reported values are comparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import correlate1d


@dataclass(frozen=True)
class QualityReport:
    """MSE, PSNR (dB, inf for identical images), and SSIM of an image pair."""

    mse: float
    psnr: float
    ssim: float
    ssim_params: dict = field(
        default_factory=lambda: {
            "win_size": 11,
            "window": "gaussian",
            "sigma": 1.5,
            "k1": 0.01,
            "k2": 0.03,
            "data_range": 255.0,
        }
    )


def _as_float_pair(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"image dimensions differ: {a.shape} vs {b.shape}")
    return a, b


def mse(a, b) -> float:
    """Mean squared per-pixel difference."""
    fa, fb = _as_float_pair(a, b)
    return float(np.mean((fa - fb) ** 2))


def psnr(a, b, data_range: float = 255.0) -> float:
    """Peak signal-to-noise ratio in dB; +inf when the images are identical."""
    m = mse(a, b)
    if m == 0.0:
        return math.inf
    return 10.0 * math.log10(data_range * data_range / m)


def _gaussian_window(win_size: int, sigma: float) -> np.ndarray:
    x = np.arange(win_size, dtype=np.float64) - (win_size - 1) / 2.0
    g = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return g / g.sum()


def ssim(
    a,
    b,
    win_size: int = 11,
    sigma: float = 1.5,
    k1: float = 0.01,
    k2: float = 0.03,
    data_range: float = 255.0,
) -> float:
    """Mean structural similarity over fully interior windows.

    Weighted local moments come from a separable Gaussian filter; windows
    touching the border are cropped away, so padding never contaminates
    the statistics.
    """
    fa, fb = _as_float_pair(a, b)
    if win_size < 3 or win_size % 2 == 0:
        raise ValueError("win_size must be an odd integer >= 3")
    if fa.ndim != 2:
        raise ValueError("images must be 2-D")
    if min(fa.shape) < win_size:
        raise ValueError(
            f"image {fa.shape} is smaller than the {win_size}x{win_size} window; "
            "pass a smaller odd win_size"
        )
    g = _gaussian_window(win_size, sigma)

    def smooth(img):
        return correlate1d(correlate1d(img, g, axis=0, mode="constant"), g, axis=1, mode="constant")

    pad = win_size // 2
    crop = (slice(pad, fa.shape[0] - pad), slice(pad, fa.shape[1] - pad))
    ua = smooth(fa)[crop]
    ub = smooth(fb)[crop]
    uaa = smooth(fa * fa)[crop]
    ubb = smooth(fb * fb)[crop]
    uab = smooth(fa * fb)[crop]
    va = uaa - ua * ua
    vb = ubb - ub * ub
    cov = uab - ua * ub
    c1 = (k1 * data_range) ** 2
    c2 = (k2 * data_range) ** 2
    num = (2.0 * ua * ub + c1) * (2.0 * cov + c2)
    den = (ua * ua + ub * ub + c1) * (va + vb + c2)
    return float(np.mean(num / den))


def quality_report(a, b, data_range: float = 255.0) -> QualityReport:
    """All three metrics with the default SSIM parameterization."""
    return QualityReport(
        mse=mse(a, b),
        psnr=psnr(a, b, data_range=data_range),
        ssim=ssim(a, b, data_range=data_range),
    )
