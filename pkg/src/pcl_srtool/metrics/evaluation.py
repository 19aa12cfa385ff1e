from __future__ import annotations

from dataclasses import asdict, dataclass
import logging
import math

from ..errors import ImageTooSmallError, ShapeMismatchError
from ..image import ChannelMode, EvalProtocol, ImageBuffer, crop_border, to_luma
from .distortion import psnr_from_rmse, rmse
from .niqe import NiqeModel, niqe
from .perceptual import MaScoreProvider, perceptual_index, pirm_region
from .ssim import ssim

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MetricReport:
    rmse: float
    psnr: float
    ssim: float | None
    niqe: float | None = None
    ma: float | None = None
    pi: float | None = None
    region: int | None = None

    def __post_init__(self):
        # ma and pi travel together; both need a NIQE score
        if (self.pi is not None) != (self.ma is not None) or (self.pi is not None and self.niqe is None):
            raise ValueError("Ma and the perceptual index are reported together, and only alongside NIQE")

    @property
    def psnr_infinite(self) -> bool:
        return math.isinf(self.psnr)

    def to_dict(self) -> dict:
        return asdict(self)


def evaluate_pair(
    hr: ImageBuffer,
    sr: ImageBuffer,
    protocol: EvalProtocol = EvalProtocol(),
    model: NiqeModel | None = None,
    ma: MaScoreProvider | None = None,
    image_id: str | None = None,
) -> MetricReport:
    """All metrics for one pair after the protocol's channel reduction and border crop."""
    if (hr.width, hr.height, hr.channels) != (sr.width, sr.height, sr.channels):
        raise ShapeMismatchError(f"HR {hr.width}x{hr.height}x{hr.channels} vs SR {sr.width}x{sr.height}x{sr.channels}")
    protocol.check(hr.width, hr.height)

    if protocol.channel_mode is ChannelMode.LUMA:
        hr_view, sr_view = to_luma(hr), to_luma(sr)
    else:
        hr_view, sr_view = hr, sr
    hr_view = crop_border(hr_view, protocol.border_discard)
    sr_view = crop_border(sr_view, protocol.border_discard)

    error = rmse(hr_view, sr_view)
    try:
        structural = ssim(hr_view, sr_view)
    except ImageTooSmallError as exc:
        log.warning(f"{image_id or 'pair'}: SSIM skipped ({exc})")
        structural = None
    niqe_score = niqe(to_luma(sr_view), model) if model is not None else None
    ma_score = ma.score(image_id) if ma is not None and niqe_score is not None else None
    pi = perceptual_index(ma_score, niqe_score) if ma_score is not None and niqe_score is not None else None

    report = MetricReport(
        rmse=error,
        psnr=psnr_from_rmse(error),
        ssim=structural,
        niqe=niqe_score,
        ma=ma_score,
        pi=pi,
        region=pirm_region(error) if pi is not None else None,
    )
    log.debug(f"{image_id or 'pair'}: {report}")
    return report
