from __future__ import annotations

from dataclasses import dataclass
import logging
from pathlib import Path

import pandas as pd

from ..explorer import SweepResult
from .base import DECIMALS

logger = logging.getLogger(__name__)


@dataclass
class SweepReportCSV:
    """`sweep.csv` (one row per weight setting) and `trace_<point>.csv` per successful run."""

    path: Path = Path.cwd()

    def report(self, result: SweepResult) -> Path:
        self.path.mkdir(parents=True, exist_ok=True)
        output_path = self.path / "sweep.csv"
        result.frame().to_csv(output_path, index=False, float_format=f"%.{DECIMALS}f")

        for index, point in enumerate(result.points):
            if not point.ok:
                continue
            trace = pd.DataFrame({"step": range(len(point.trace)), "objective": point.trace})
            trace.to_csv(self.path / f"trace_{index}.csv", index=False)
        logger.info(f"Sweep written to {output_path} ({len(result.points)} points)")
        return output_path
