"""Differential content loss: L1 distance between horizontal and vertical forward differences.

Both directional sums share a single 1/(W*H) factor (per channel, then channel-averaged).
Differences are taken over valid positions only, so a one-pixel-wide image simply has no
terms in that direction.
"""

import numpy as np

from ..errors import ImageTooSmallError
from .base import GradientField, Planes, SmoothingEps, charbonnier, charbonnier_slope, eps_value, paired_planes


def _residual_differences(hr: Planes, sr: Planes) -> tuple[np.ndarray, np.ndarray, int]:
    a, b = paired_planes(hr, sr)
    _, height, width = a.shape
    if width < 2 and height < 2:
        raise ImageTooSmallError(f"differential loss needs at least two pixels along one axis, got {width}x{height}")
    r = a - b
    return np.diff(r, axis=2), np.diff(r, axis=1), r.size


def differential_content_loss(hr: Planes, sr: Planes, eps: SmoothingEps | float = 0.0) -> float:
    e = eps_value(eps)
    rx, ry, n = _residual_differences(hr, sr)
    return float((charbonnier(rx, e).sum() + charbonnier(ry, e).sum()) / n)


def differential_content_loss_grad(hr: Planes, sr: Planes, eps: SmoothingEps | float = SmoothingEps()) -> GradientField:
    """Negative divergence of the smoothed edge signs: -(Dx^T sx + Dy^T sy) / (C*W*H)."""
    e = eps_value(eps)
    rx, ry, n = _residual_differences(hr, sr)
    sx = charbonnier_slope(rx, e)
    sy = charbonnier_slope(ry, e)

    adjoint = np.zeros(rx.shape[:2] + (rx.shape[2] + 1,))
    adjoint[:, :, 1:] += sx
    adjoint[:, :, :-1] -= sx
    adjoint[:, 1:, :] += sy
    adjoint[:, :-1, :] -= sy
    return GradientField(-adjoint / n)
