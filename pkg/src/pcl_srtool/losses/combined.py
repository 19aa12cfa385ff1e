import logging

import numpy as np

from .adversarial import AdversarialForm, adversarial_loss
from .base import DEFAULT_WEIGHTS, GradientField, LossReport, LossWeights, Planes, SmoothingEps, eps_value, paired_planes
from .content import content_loss, content_loss_grad
from .dct import DctConfig, dct_loss, dct_loss_grad
from .differential import differential_content_loss, differential_content_loss_grad

log = logging.getLogger(__name__)


def combined_loss(
    hr: Planes,
    sr: Planes,
    weights: LossWeights = DEFAULT_WEIGHTS,
    cfg: DctConfig = DctConfig(),
    eps: SmoothingEps | float = SmoothingEps(),
    d: float | None = None,
    d_form: AdversarialForm = AdversarialForm.PROBABILITY,
) -> tuple[LossReport, GradientField]:
    """Report every loss (exact L1 values) and the weighted gradient of the content terms.

    The adversarial term only enters the report: its pixel gradient needs the
    discriminator network.
    """
    a, b = paired_planes(hr, sr)
    if weights.w_adv > 0.0 and d is None:
        raise ValueError("w_adv > 0 requires a discriminator output d")

    l_c = content_loss(a, b)
    l_d = differential_content_loss(a, b)
    l_dct = dct_loss(a, b, cfg)
    l_adv = adversarial_loss(d, d_form) if d is not None else None
    total = weights.w_c * l_c + weights.w_d * l_d + weights.w_dct * l_dct
    if l_adv is not None:
        total += weights.w_adv * l_adv

    report = LossReport(l_c=l_c, l_d=l_d, l_dct=l_dct, l_adv=l_adv, total=total, weights=weights)
    log.debug(f"Losses for {a.shape}: l_c={l_c:.6g} l_d={l_d:.6g} l_dct={l_dct:.6g} l_adv={l_adv} total={total:.6g}")
    return report, objective_grad(a, b, weights, cfg, eps)


def objective(hr: Planes, sr: Planes, weights: LossWeights, cfg: DctConfig, eps: SmoothingEps | float) -> float:
    """Smoothed weighted sum of the three content losses (the quantity gradients describe)."""
    e = eps_value(eps)
    value = 0.0
    if weights.w_c > 0.0:
        value += weights.w_c * content_loss(hr, sr, e)
    if weights.w_d > 0.0:
        value += weights.w_d * differential_content_loss(hr, sr, e)
    if weights.w_dct > 0.0:
        value += weights.w_dct * dct_loss(hr, sr, cfg)
    return value


def objective_grad(hr: Planes, sr: Planes, weights: LossWeights, cfg: DctConfig, eps: SmoothingEps | float) -> GradientField:
    a, b = paired_planes(hr, sr)
    e = eps_value(eps)
    total = np.zeros_like(a)
    if weights.w_c > 0.0:
        total += weights.w_c * content_loss_grad(a, b, e).data
    if weights.w_d > 0.0:
        total += weights.w_d * differential_content_loss_grad(a, b, e).data
    if weights.w_dct > 0.0:
        total += weights.w_dct * dct_loss_grad(a, b, cfg).data
    return GradientField(total)
