import numpy as np

from .base import GradientField, Planes, SmoothingEps, charbonnier, charbonnier_slope, eps_value, paired_planes


def content_loss(hr: Planes, sr: Planes, eps: SmoothingEps | float = 0.0) -> float:
    """Mean absolute pixel error, averaged over channels; Charbonnier-smoothed when eps > 0."""
    a, b = paired_planes(hr, sr)
    return float(np.mean(charbonnier(a - b, eps_value(eps))))


def content_loss_grad(hr: Planes, sr: Planes, eps: SmoothingEps | float = SmoothingEps()) -> GradientField:
    a, b = paired_planes(hr, sr)
    slope = charbonnier_slope(a - b, eps_value(eps))
    return GradientField(-slope / a.size)
