import abc
from dataclasses import dataclass
import math
from pathlib import Path

import numpy as np
import pandas as pd

from ..harness import AggregateReport
from ..harness.evaluate import METRICS

DECIMALS = 4
COLUMNS = ("image",) + METRICS + ("region",)


def tabulate(aggregate: AggregateReport) -> tuple[pd.DataFrame, dict[str, float | None]]:
    """Per-image rows rounded to DECIMALS, and means recomputed from those rounded rows.

    Means skip missing values and infinite PSNR, so they can be reproduced from the
    emitted rows alone.
    """
    rows = [{"image": image_id, **report.to_dict()} for image_id, report in aggregate.per_image]
    df = pd.DataFrame(rows, columns=list(COLUMNS))
    df[list(METRICS)] = df[list(METRICS)].astype(float).round(DECIMALS)
    df["region"] = df["region"].astype("Int64")

    finite = df[list(METRICS)].replace([np.inf, -np.inf], np.nan)
    mean = {}
    for metric in METRICS:
        value = finite[metric].mean()
        mean[metric] = None if pd.isna(value) else round(float(value), DECIMALS)
    return df, mean


def json_number(value) -> float | int | None:
    """JSON-safe scalar: NaN/NA and infinities become None."""
    if value is None or pd.isna(value):
        return None
    if isinstance(value, (int, np.integer)):
        return int(value)
    value = float(value)
    return None if math.isinf(value) else value


@dataclass
class SrReportBase(abc.ABC):
    """Base class for aggregate report emitters."""

    path: Path = Path.cwd()

    def target(self, aggregate: AggregateReport, suffix: str) -> Path:
        self.path.mkdir(parents=True, exist_ok=True)
        return self.path / f"{aggregate.dataset}_metrics{suffix}"

    @abc.abstractmethod
    def report(self, aggregate: AggregateReport) -> Path:
        raise NotImplementedError("Subclasses must implement this method.")
