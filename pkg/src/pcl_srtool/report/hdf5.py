from __future__ import annotations

from dataclasses import dataclass
import logging
from pathlib import Path

import pandas as pd

from ..harness import AggregateReport
from .base import tabulate
from .csv import SrReportCSV

logger = logging.getLogger(__name__)


@dataclass
class SrReportHdf5(SrReportCSV):
    """CSV report plus an HDF5 store holding the per-image and mean tables."""

    def report(self, aggregate: AggregateReport) -> Path:
        csv_path = super().report(aggregate)
        df, mean = tabulate(aggregate)
        df["region"] = df["region"].astype(float)
        failures = pd.DataFrame(list(aggregate.failures), columns=["image", "error"])

        output_path = csv_path.with_suffix(".h5")
        with pd.HDFStore(output_path, "w") as store:
            store.put("per_image", df, format="table")
            store.put("mean", pd.DataFrame([mean]).astype(float), format="table")
            if len(failures):
                store.put("failures", failures)
            store.get_storer("per_image").attrs.protocol = aggregate.protocol.to_dict()
            store.get_storer("per_image").attrs.dataset = aggregate.dataset
        logger.info(f"HDF5 report saved to {output_path}")
        return output_path
