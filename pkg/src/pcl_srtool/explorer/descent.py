"""Projected gradient descent on the weighted content-loss objective in image space.

Every accepted step leaves the objective no larger than before; iterates are clamped to
[0, 1]. The trial step grows by 1/backtrack after each acceptance and shrinks by
`backtrack` on each rejection.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
import logging

import numpy as np
import pandas as pd

from ..errors import NonFiniteGradientError
from ..image import ImageBuffer
from ..losses import DctConfig, LossWeights, SmoothingEps, objective, objective_grad
from ..losses.base import paired_planes

log = logging.getLogger(__name__)

DESCENT_EPS = SmoothingEps(1e-3)


@dataclass(frozen=True)
class DescentConfig:
    max_steps: int = 500
    initial_step: float = 0.1
    backtrack: float = 0.5
    stop_tol: float = 1e-9
    eps: SmoothingEps = field(default=DESCENT_EPS)
    max_backtracks: int = 60

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be positive, got {self.max_steps}")
        if not self.initial_step > 0.0:
            raise ValueError(f"initial_step must be positive, got {self.initial_step}")
        if not 0.0 < self.backtrack < 1.0:
            raise ValueError(f"backtrack factor must lie in (0, 1), got {self.backtrack}")
        if not self.stop_tol > 0.0:
            raise ValueError(f"stop_tol must be positive, got {self.stop_tol}")


@dataclass(frozen=True)
class DescentResult:
    image: ImageBuffer
    trace: tuple[float, ...]
    stop_reason: str

    @property
    def steps(self) -> int:
        return len(self.trace) - 1

    @property
    def objective(self) -> float:
        return self.trace[-1]

    def trace_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"step": range(len(self.trace)), "objective": self.trace})


def content_weights(weights: LossWeights) -> LossWeights:
    """Drop the adversarial weight, which has no pixel gradient here."""
    if weights.w_adv > 0.0:
        log.warning(f"Adversarial weight {weights.w_adv:g} is inert during image-space descent")
        return replace(weights, w_adv=0.0)
    return weights


def descend(
    hr: ImageBuffer,
    start: ImageBuffer,
    weights: LossWeights,
    cfg: DescentConfig = DescentConfig(),
    dct_cfg: DctConfig = DctConfig(),
) -> DescentResult:
    """Descend from `start` towards the minimizer of the weighted objective against `hr`."""
    target, x = paired_planes(hr, start)
    weights = content_weights(weights)

    def f(image: np.ndarray) -> float:
        return objective(target, image, weights, dct_cfg, cfg.eps)

    value = f(x)
    trace = [value]
    step = cfg.initial_step
    reason = "max_steps"
    log.debug(f"Descent start: objective {value:.6g}, weights {weights.label()}")

    if value == 0.0:
        return DescentResult(image=start, trace=tuple(trace), stop_reason="exact")

    for index in range(cfg.max_steps):
        grad = objective_grad(target, x, weights, dct_cfg, cfg.eps)
        if not grad.is_finite:
            raise NonFiniteGradientError(f"non-finite gradient at step {index} (objective {value:.6g})")
        if not np.any(grad.data):
            reason = "stationary"
            break

        trial = step
        for _ in range(cfg.max_backtracks):
            candidate = np.clip(x - trial * grad.data, 0.0, 1.0)
            candidate_value = f(candidate)
            if candidate_value <= value:
                break
            trial *= cfg.backtrack
        else:
            reason = "line_search"
            break

        decrease = value - candidate_value
        x, value = candidate, candidate_value
        trace.append(value)
        step = trial / cfg.backtrack
        if decrease < cfg.stop_tol:
            reason = "converged"
            break

    log.debug(f"Descent stopped after {len(trace) - 1} steps ({reason}): objective {value:.6g}")
    return DescentResult(image=ImageBuffer(x), trace=tuple(trace), stop_reason=reason)
