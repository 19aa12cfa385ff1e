from enum import Enum
import math

import numpy as np
from scipy.special import expit

from ..errors import DivergedLossError, ScoreRangeError


class AdversarialForm(Enum):
    PROBABILITY = "probability"
    LOGIT = "logit"


def adversarial_loss(d: float, form: AdversarialForm = AdversarialForm.PROBABILITY) -> float:
    """Generator-side adversarial loss for one discriminator output.

    Probability form: -ln(d) for d in (0, 1]. Logit form: softplus(-d), i.e. the sigmoid
    cross-entropy against the "real" label.
    """
    d = float(d)
    if form is AdversarialForm.LOGIT:
        if not math.isfinite(d):
            raise ValueError(f"logit must be finite, got {d}")
        return float(np.logaddexp(0.0, -d))
    if d == 0.0:
        raise DivergedLossError("discriminator probability 0 gives an infinite adversarial loss")
    if not 0.0 < d <= 1.0:
        raise ScoreRangeError(f"discriminator probability must lie in (0, 1], got {d}")
    return -math.log(d)


def adversarial_logit_grad(logit: float) -> float:
    """d softplus(-z) / dz = sigmoid(z) - 1."""
    return float(expit(logit) - 1.0)
