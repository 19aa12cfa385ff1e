"""Mean SSIM with an 11x11 Gaussian window (sigma 1.5) over the valid region."""

import numpy as np
from scipy.ndimage import correlate1d

from ..errors import ImageTooSmallError
from ..losses.base import Planes, paired_planes
from .distortion import PEAK

WINDOW = 11
SIGMA = 1.5
K1 = 0.01
K2 = 0.03
C1 = (K1 * PEAK) ** 2
C2 = (K2 * PEAK) ** 2


def gaussian_window(size: int = WINDOW, sigma: float = SIGMA) -> np.ndarray:
    """Normalized 1-D Gaussian taps; the 2-D window is their outer product."""
    x = np.arange(size, dtype=np.float64) - (size - 1) / 2.0
    taps = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return taps / taps.sum()


def _local_mean(x: np.ndarray, taps: np.ndarray) -> np.ndarray:
    half = len(taps) // 2
    out = correlate1d(correlate1d(x, taps, axis=0, mode="nearest"), taps, axis=1, mode="nearest")
    return out[half : x.shape[0] - half, half : x.shape[1] - half]


def ssim_map(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Local SSIM of two 0..255 planes over the valid window positions."""
    taps = gaussian_window()
    mu_x = _local_mean(x, taps)
    mu_y = _local_mean(y, taps)
    sigma_xx = _local_mean(x * x, taps) - mu_x * mu_x
    sigma_yy = _local_mean(y * y, taps) - mu_y * mu_y
    sigma_xy = _local_mean(x * y, taps) - mu_x * mu_y
    numerator = (2.0 * mu_x * mu_y + C1) * (2.0 * sigma_xy + C2)
    denominator = (mu_x * mu_x + mu_y * mu_y + C1) * (sigma_xx + sigma_yy + C2)
    return numerator / denominator


def ssim(hr: Planes, sr: Planes) -> float:
    """Mean SSIM; multi-channel inputs average the per-channel means."""
    a, b = paired_planes(hr, sr)
    if min(a.shape[1:]) < WINDOW:
        raise ImageTooSmallError(f"SSIM needs at least {WINDOW}x{WINDOW} pixels, got {a.shape[2]}x{a.shape[1]}")
    values = [ssim_map(PEAK * x, PEAK * y).mean() for x, y in zip(a, b)]
    return float(np.mean(values))
