from __future__ import annotations

from dataclasses import dataclass
import logging
import math

from ..errors import ShapeMismatchError
from ..image import EvalProtocol, ImageBuffer, center_crop, load_png
from ..metrics import MaScoreProvider, MetricReport, NiqeModel, evaluate_pair
from ..tools import TaskRunner
from .dataset import DatasetManifest, ImagePair

log = logging.getLogger(__name__)

METRICS = ("rmse", "psnr", "ssim", "niqe", "ma", "pi")


@dataclass(frozen=True)
class AggregateReport:
    dataset: str
    protocol: EvalProtocol
    per_image: tuple[tuple[str, MetricReport], ...]
    failures: tuple[tuple[str, str], ...] = ()

    @property
    def psnr_infinite(self) -> list[str]:
        return [image_id for image_id, report in self.per_image if report.psnr_infinite]

    @property
    def mean(self) -> dict[str, float | None]:
        """Arithmetic mean of each metric over the images reporting it; PSNR skips +inf."""
        means: dict[str, float | None] = {}
        for metric in METRICS:
            values = [getattr(r, metric) for _, r in self.per_image]
            values = [v for v in values if v is not None and not math.isinf(v)]
            means[metric] = math.fsum(values) / len(values) if values else None
        return means


def align_hr(hr: ImageBuffer, sr: ImageBuffer, scale: int) -> ImageBuffer:
    """Center-crop an HR that is larger than its SR by less than `scale` per axis."""
    dw, dh = hr.width - sr.width, hr.height - sr.height
    if (dw, dh) == (0, 0):
        return hr
    if 0 <= dw < scale and 0 <= dh < scale:
        log.debug(f"Cropping HR {hr.width}x{hr.height} to SR {sr.width}x{sr.height}")
        return center_crop(hr, sr.width, sr.height)
    raise ShapeMismatchError(f"HR {hr.width}x{hr.height} cannot be aligned with SR {sr.width}x{sr.height}")


def evaluate_dataset(
    manifest: DatasetManifest,
    protocol: EvalProtocol = EvalProtocol(),
    model: NiqeModel | None = None,
    ma: MaScoreProvider | None = None,
    runner: TaskRunner | None = None,
) -> AggregateReport:
    """Evaluate every pair; failures are recorded and the means cover the successes."""

    def evaluate(pair: ImagePair) -> MetricReport:
        sr = load_png(pair.sr)
        hr = align_hr(load_png(pair.hr), sr, protocol.scale)
        return evaluate_pair(hr, sr, protocol, model, ma, image_id=pair.image_id)

    outcomes = (runner or TaskRunner()).map(evaluate, ((p.image_id, p) for p in manifest.pairs))
    report = AggregateReport(
        dataset=manifest.name,
        protocol=protocol,
        per_image=tuple((o.key, o.value) for o in outcomes if o.ok),
        failures=tuple((o.key, f"{type(o.error).__name__}: {o.error}") for o in outcomes if not o.ok),
    )
    log.info(f"Evaluated {len(report.per_image)}/{len(manifest)} pairs of '{manifest.name}'")
    if report.failures:
        log.warning(f"{len(report.failures)} pair(s) failed")
    if report.psnr_infinite:
        log.warning(f"PSNR is infinite for {report.psnr_infinite}; excluded from the mean")
    return report
