import logging
from pathlib import Path

from ..errors import ImageTooSmallError
from ..image import ImageBuffer, bicubic_resize, center_crop, load_png, quantize, save_png
from ..tools import TaskRunner
from .dataset import list_images

log = logging.getLogger(__name__)


def divisible_crop(img: ImageBuffer, scale: int) -> ImageBuffer:
    """Center-crop so both dimensions are multiples of `scale`."""
    if img.width < scale or img.height < scale:
        raise ImageTooSmallError(f"{img.width}x{img.height} image is smaller than scale {scale}")
    return center_crop(img, img.width - img.width % scale, img.height - img.height % scale)


def bicubic_baseline(img: ImageBuffer, scale: int) -> ImageBuffer:
    """Antialiased bicubic downscale to an 8-bit LR image, then bicubic upscale back."""
    hr = divisible_crop(img, scale)
    lr = bicubic_resize(hr, hr.width // scale, hr.height // scale, antialias=True)
    lr = ImageBuffer(quantize(lr.data) / 255.0)
    return bicubic_resize(lr, hr.width, hr.height, antialias=False)


def make_bicubic_baseline(hr_dir: Path, scale: int, out_dir: Path, runner: TaskRunner | None = None) -> int:
    """Write the bicubic baseline of every HR PNG to `out_dir`; returns the number written."""
    if scale < 2:
        raise ValueError(f"baseline scale must be at least 2, got {scale}")
    sources = list_images(hr_dir)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    def generate(path: Path) -> Path:
        target = out_dir / f"{path.stem}.png"
        save_png(bicubic_baseline(load_png(path), scale), target)
        return target

    outcomes = (runner or TaskRunner()).map(generate, sources.items())
    written = sum(1 for o in outcomes if o.ok)
    log.info(f"Bicubic x{scale} baseline: {written}/{len(outcomes)} images written to {out_dir}")
    return written
