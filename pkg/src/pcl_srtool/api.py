from dataclasses import replace
from enum import Enum
import logging
from pathlib import Path
from typing import Sequence

from .errors import DataError
from .explorer import DescentConfig, SweepResult, sweep
from .harness import AggregateReport, bicubic_baseline, divisible_crop, evaluate_dataset, list_images, make_bicubic_baseline, scan_dataset
from .image import ChannelMode, EvalProtocol, ImageBuffer, load_png, to_luma
from .losses import DEFAULT_WEIGHTS, AdversarialForm, DctConfig, LossReport, LossWeights, combined_loss
from .metrics import MaScoreProvider, NiqeModel, fit_niqe_model, load_niqe_model, save_niqe_model
from .metrics.niqe import DEFAULT_PATCH_SIZE
from .report import SrReportCSV, SrReportHdf5, SrReportJSON, SweepReportCSV

log = logging.getLogger(__name__)

DEFAULT_SCALE = 4
DEFAULT_BORDER = 4


class ReportFormat(Enum):
    JSON = "json"
    CSV = "csv"
    HDF5 = "hdf5"


def load_model(path: Path | None) -> NiqeModel | None:
    if path is None:
        log.warning("No NIQE model given; NIQE and PI are omitted")
        return None
    return load_niqe_model(path)


def channel_view(img: ImageBuffer, channel: ChannelMode) -> ImageBuffer:
    """The image the losses see: its luma plane in Y mode, the image itself otherwise."""
    if channel is ChannelMode.LUMA:
        return ImageBuffer(to_luma(img).data)
    return img


def run_evaluate(
    hr_dir: Path,
    sr_dir: Path,
    protocol: EvalProtocol = EvalProtocol(),
    model_path: Path | None = None,
    ma_path: Path | None = None,
    name: str | None = None,
) -> AggregateReport:
    """Functional helper—evaluates an SR directory against its HR directory."""
    log.debug(f"Evaluating {sr_dir} against {hr_dir} with {protocol}")
    if ma_path is not None and model_path is None:
        log.warning("Ma scores are ignored without a NIQE model")
    manifest = scan_dataset(hr_dir, sr_dir, name)
    ma = MaScoreProvider.from_csv(ma_path) if ma_path is not None else None
    return evaluate_dataset(manifest, protocol, load_model(model_path), ma)


def write_report(aggregate: AggregateReport, fmt: ReportFormat = ReportFormat.JSON, path: Path = Path.cwd()) -> Path:
    """Functional helper—emits an aggregate report and returns its path."""
    match fmt:
        case ReportFormat.JSON:
            return SrReportJSON(path).report(aggregate)
        case ReportFormat.CSV:
            return SrReportCSV(path).report(aggregate)
        case ReportFormat.HDF5:
            return SrReportHdf5(path).report(aggregate)
        case _:
            raise ValueError(f"Unsupported report format: {fmt}")


def run_losses(
    hr_path: Path,
    sr_path: Path,
    weights: LossWeights = DEFAULT_WEIGHTS,
    dct_cfg: DctConfig = DctConfig(),
    channel: ChannelMode = ChannelMode.LUMA,
    d: float | None = None,
    d_form: AdversarialForm = AdversarialForm.PROBABILITY,
) -> LossReport:
    """Functional helper—computes the loss report for one HR/SR pair."""
    log.debug(f"Losses for {sr_path} against {hr_path}, weights {weights.label()}")
    if d is None and weights.w_adv > 0.0:
        log.warning("No discriminator output given; the adversarial term is left out")
        weights = replace(weights, w_adv=0.0)
    hr = channel_view(load_png(hr_path), channel)
    sr = channel_view(load_png(sr_path), channel)
    report, _ = combined_loss(hr, sr, weights, dct_cfg, d=d, d_form=d_form)
    return report


def run_bicubic(hr_dir: Path, scale: int = DEFAULT_SCALE, path: Path = Path.cwd()) -> int:
    """Functional helper—writes the bicubic baseline of an HR directory."""
    log.debug(f"Bicubic x{scale} baseline of {hr_dir} into {path}")
    total = len(list_images(hr_dir))
    written = make_bicubic_baseline(hr_dir, scale, path)
    if written < total:
        raise DataError(f"{total - written} of {total} baseline images could not be generated")
    return written


def run_sweep(
    hr_path: Path,
    weight_list: Sequence[LossWeights],
    start_path: Path | None = None,
    scale: int = DEFAULT_SCALE,
    cfg: DescentConfig = DescentConfig(),
    dct_cfg: DctConfig = DctConfig(),
    channel: ChannelMode = ChannelMode.LUMA,
    model_path: Path | None = None,
    path: Path = Path.cwd(),
) -> tuple[SweepResult, Path]:
    """Functional helper—sweeps loss weights from one start image and writes the traces.

    Without a start image the descent starts from the bicubic baseline of the HR.
    """
    hr = load_png(hr_path)
    if start_path is not None:
        start = load_png(start_path)
    else:
        log.info(f"No start image; descending from the bicubic x{scale} baseline")
        hr = divisible_crop(hr, scale)
        start = bicubic_baseline(hr, scale)

    result = sweep(channel_view(hr, channel), channel_view(start, channel), weight_list, cfg, dct_cfg, load_model(model_path))
    return result, SweepReportCSV(path).report(result)


def run_niqe_fit(corpus_dir: Path, patch_size: int = DEFAULT_PATCH_SIZE, path: Path = Path("niqe_model.txt")) -> NiqeModel:
    """Functional helper—fits a NIQE model on a directory of pristine images and saves it."""
    sources = list_images(corpus_dir)
    log.debug(f"Fitting NIQE on {len(sources)} images with {patch_size}px patches")
    model = fit_niqe_model([to_luma(load_png(p)) for p in sources.values()], patch_size)
    save_niqe_model(model, path)
    return model
