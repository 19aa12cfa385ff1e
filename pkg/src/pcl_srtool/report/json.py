from __future__ import annotations

from dataclasses import dataclass
import json
import logging
from pathlib import Path

from ..harness import AggregateReport
from ..losses import LossReport
from .base import SrReportBase, json_number, tabulate

logger = logging.getLogger(__name__)


def aggregate_payload(aggregate: AggregateReport) -> dict:
    """Report document: {dataset, protocol, per_image, mean, failures}."""
    df, mean = tabulate(aggregate)
    per_image = []
    for row in df.to_dict(orient="records"):
        entry = {key: (row[key] if key == "image" else json_number(row[key])) for key in df.columns}
        entry["psnr_infinite"] = bool(row["psnr"] == float("inf"))
        per_image.append(entry)
    return {
        "dataset": aggregate.dataset,
        "protocol": aggregate.protocol.to_dict(),
        "per_image": per_image,
        "mean": {**mean, "psnr_infinite_count": len(aggregate.psnr_infinite)},
        "failures": [{"image": image_id, "error": message} for image_id, message in aggregate.failures],
    }


def loss_payload(report: LossReport, hr: Path, sr: Path) -> dict:
    return {"hr": str(hr), "sr": str(sr), **report.to_dict()}


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


@dataclass
class SrReportJSON(SrReportBase):
    """Deterministic JSON document of an aggregate evaluation."""

    def report(self, aggregate: AggregateReport) -> Path:
        output_path = self.target(aggregate, ".json")
        output_path.write_text(dumps(aggregate_payload(aggregate)), encoding="utf-8")
        logger.info(f"JSON report saved to {output_path}")
        return output_path
