from .adversarial import AdversarialForm, adversarial_logit_grad, adversarial_loss
from .base import DEFAULT_WEIGHTS, LOSS_PRESETS, GradientField, LossReport, LossWeights, SmoothingEps, as_planes
from .combined import combined_loss, objective, objective_grad
from .content import content_loss, content_loss_grad
from .dct import DctConfig, DctMode, DctNorm, dct2, dct2_adjoint, dct_loss, dct_loss_grad, idct2
from .differential import differential_content_loss, differential_content_loss_grad

__all__ = [
    "AdversarialForm",
    "DEFAULT_WEIGHTS",
    "DctConfig",
    "DctMode",
    "DctNorm",
    "GradientField",
    "LOSS_PRESETS",
    "LossReport",
    "LossWeights",
    "SmoothingEps",
    "adversarial_logit_grad",
    "adversarial_loss",
    "as_planes",
    "combined_loss",
    "content_loss",
    "content_loss_grad",
    "dct2",
    "dct2_adjoint",
    "dct_loss",
    "dct_loss_grad",
    "differential_content_loss",
    "differential_content_loss_grad",
    "idct2",
    "objective",
    "objective_grad",
]
