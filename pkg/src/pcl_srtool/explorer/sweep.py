from __future__ import annotations

from dataclasses import dataclass, replace
import logging
from typing import Sequence

import pandas as pd

from ..image import ImageBuffer, to_luma
from ..losses import DctConfig, LossReport, LossWeights, combined_loss
from ..metrics import NiqeModel, niqe, rmse
from ..tools import TaskRunner
from .descent import DescentConfig, descend

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepPoint:
    weights: LossWeights
    rmse: float | None = None
    niqe: float | None = None
    report: LossReport | None = None
    steps: int = 0
    trace: tuple[float, ...] = ()
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class SweepResult:
    points: tuple[SweepPoint, ...]

    @property
    def failures(self) -> list[int]:
        return [i for i, p in enumerate(self.points) if not p.ok]

    def frame(self) -> pd.DataFrame:
        rows = []
        for index, point in enumerate(self.points):
            w_c, w_d, w_dct, w_adv = point.weights.as_tuple()
            rows.append(
                {
                    "point": index,
                    "w_c": w_c,
                    "w_d": w_d,
                    "w_dct": w_dct,
                    "w_adv": w_adv,
                    "rmse": point.rmse,
                    "niqe": point.niqe,
                    "steps": point.steps,
                    "error": point.error or "",
                }
            )
        return pd.DataFrame(rows)


def _run_point(hr: ImageBuffer, start: ImageBuffer, weights: LossWeights, cfg: DescentConfig, dct_cfg: DctConfig, model) -> SweepPoint:
    result = descend(hr, start, weights, cfg, dct_cfg)
    report, _ = combined_loss(hr, result.image, replace(weights, w_adv=0.0), dct_cfg, cfg.eps)
    return SweepPoint(
        weights=weights,
        rmse=rmse(hr, result.image),
        niqe=niqe(to_luma(result.image), model) if model is not None else None,
        report=report,
        steps=result.steps,
        trace=result.trace,
    )


def sweep(
    hr: ImageBuffer,
    start: ImageBuffer,
    weight_list: Sequence[LossWeights],
    cfg: DescentConfig = DescentConfig(),
    dct_cfg: DctConfig = DctConfig(),
    model: NiqeModel | None = None,
    runner: TaskRunner | None = None,
) -> SweepResult:
    """Run `descend` once per weight setting from the same start; rows keep request order."""
    if not weight_list:
        raise ValueError("sweep needs at least one weight setting")
    runner = runner or TaskRunner()
    log.info(f"Sweeping {len(weight_list)} weight settings")

    outcomes = runner.map(
        lambda w: _run_point(hr, start, w, cfg, dct_cfg, model),
        ((f"point {i} ({w.label()})", w) for i, w in enumerate(weight_list)),
    )
    points = []
    for weights, outcome in zip(weight_list, outcomes):
        if outcome.ok:
            points.append(outcome.value)
        else:
            points.append(SweepPoint(weights=weights, error=f"{type(outcome.error).__name__}: {outcome.error}"))
    result = SweepResult(points=tuple(points))
    if result.failures:
        log.warning(f"{len(result.failures)} sweep point(s) failed: {result.failures}")
    return result
