import math

import numpy as np

from ..losses.base import Planes, paired_planes

PEAK = 255.0


def rmse(hr: Planes, sr: Planes) -> float:
    """Root mean squared error on the 8-bit intensity scale."""
    a, b = paired_planes(hr, sr)
    diff = PEAK * a - PEAK * b
    return float(np.sqrt(np.mean(diff * diff)))


def psnr_from_rmse(value: float) -> float:
    if value == 0.0:
        return math.inf
    return 20.0 * math.log10(PEAK / value)


def psnr(hr: Planes, sr: Planes) -> float:
    """PSNR in dB; `math.inf` for identical inputs."""
    return psnr_from_rmse(rmse(hr, sr))
