from __future__ import annotations

from dataclasses import dataclass
import logging
from pathlib import Path

import pandas as pd

from ..harness import AggregateReport
from .base import DECIMALS, SrReportBase, tabulate

logger = logging.getLogger(__name__)

MEAN_ROW = "mean"


@dataclass
class SrReportCSV(SrReportBase):
    """Per-image metric rows followed by a `mean` row."""

    def report(self, aggregate: AggregateReport) -> Path:
        df, mean = tabulate(aggregate)
        mean_row = pd.DataFrame([{"image": MEAN_ROW, **mean}], columns=df.columns)
        mean_row["region"] = mean_row["region"].astype("Int64")
        table = pd.concat([df, mean_row], ignore_index=True)

        output_path = self.target(aggregate, ".csv")
        table.to_csv(output_path, index=False, float_format=f"%.{DECIMALS}f")
        logger.info(f"CSV report saved to {output_path}")
        return output_path
