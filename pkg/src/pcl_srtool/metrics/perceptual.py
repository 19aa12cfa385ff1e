from __future__ import annotations

from dataclasses import dataclass, field
import logging
from pathlib import Path
from typing import Mapping

import pandas as pd

from ..errors import DatasetError, ScoreRangeError

log = logging.getLogger(__name__)

MA_MIN, MA_MAX = 0.0, 10.0

# Upper RMSE bound of each challenge region, in order.
REGION_BOUNDS = ((1, 11.5), (2, 12.5), (3, 16.0))


def _check_ma(ma: float) -> float:
    ma = float(ma)
    if not MA_MIN <= ma <= MA_MAX:
        raise ScoreRangeError(f"Ma score must lie in [{MA_MIN:g}, {MA_MAX:g}], got {ma}")
    return ma


def perceptual_index(ma: float, niqe: float) -> float:
    """((10 - Ma) + NIQE) / 2; lower is better."""
    ma = _check_ma(ma)
    if not niqe >= 0.0:
        raise ScoreRangeError(f"NIQE must be non-negative, got {niqe}")
    return ((MA_MAX - ma) + niqe) / 2.0


def pirm_region(rmse: float) -> int | None:
    """Challenge region an RMSE falls into, or None beyond the last bound."""
    for region, bound in REGION_BOUNDS:
        if rmse <= bound:
            return region
    return None


@dataclass(frozen=True)
class MaScoreProvider:
    """Ma scores keyed by image identifier (file stem)."""

    scores: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for image_id, value in self.scores.items():
            try:
                _check_ma(value)
            except ScoreRangeError as exc:
                raise ScoreRangeError(f"{image_id}: {exc}") from exc

    def score(self, image_id: str | None) -> float | None:
        """The score for `image_id`, or None when it is unavailable."""
        if image_id is None or image_id not in self.scores:
            return None
        return float(self.scores[image_id])

    @classmethod
    def from_csv(cls, path: Path) -> MaScoreProvider:
        """Read an `image_id,score` sidecar."""
        path = Path(path)
        if not path.is_file():
            raise DatasetError(f"Ma score file not found: {path}")
        try:
            df = pd.read_csv(path, dtype={"image_id": str})
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
            raise DatasetError(f"{path}: unreadable Ma score file ({exc})") from exc
        if list(df.columns[:2]) != ["image_id", "score"]:
            raise DatasetError(f"{path}: expected columns image_id,score, got {list(df.columns)}")
        if df["image_id"].duplicated().any():
            raise DatasetError(f"{path}: duplicate image ids")
        try:
            scores = pd.to_numeric(df["score"], errors="raise").astype(float)
        except (TypeError, ValueError) as exc:
            raise DatasetError(f"{path}: non-numeric score ({exc})") from exc
        log.debug(f"Loaded {len(df)} Ma scores from {path}")
        return cls(dict(zip(df["image_id"], scores)))
