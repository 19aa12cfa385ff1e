import logging
from pathlib import Path
import struct

import cv2
import numpy as np

from ..errors import ImageDecodeError, ImageNotFoundError, UnsupportedImageError
from .buffer import ImageBuffer

log = logging.getLogger(__name__)

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"

# IHDR colour types
GRAY, RGB, PALETTE, GRAY_ALPHA, RGBA = 0, 2, 3, 4, 6
SUPPORTED_COLOR_TYPES = {GRAY: 1, RGB: 3, GRAY_ALPHA: 1, RGBA: 3}


def _read_header(path: Path) -> tuple[int, int]:
    """Return (bit depth, colour type) from the IHDR chunk."""
    with path.open("rb") as handle:
        head = handle.read(33)
    if len(head) < 33 or head[:8] != PNG_SIGNATURE or head[12:16] != b"IHDR":
        raise UnsupportedImageError(f"{path} is not a PNG file")
    bit_depth, color_type = struct.unpack(">BB", head[24:26])
    return bit_depth, color_type


def load_png(path: Path) -> ImageBuffer:
    """Decode an 8- or 16-bit gray/RGB PNG into an ImageBuffer; alpha is dropped."""
    path = Path(path)
    if not path.is_file():
        raise ImageNotFoundError(f"Image not found: {path}")

    bit_depth, color_type = _read_header(path)
    if bit_depth not in (8, 16) or color_type not in SUPPORTED_COLOR_TYPES:
        raise UnsupportedImageError(f"{path}: unsupported PNG variant (bit depth {bit_depth}, colour type {color_type})")

    raw = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    if raw is None:
        raise ImageDecodeError(f"Failed to decode {path}")

    maximum = 65535.0 if raw.dtype == np.uint16 else 255.0
    if raw.ndim == 3:
        raw = raw[..., :3][..., ::-1]
        if SUPPORTED_COLOR_TYPES[color_type] == 1:
            raw = raw[..., 0]
    pixels = raw.astype(np.float64) / maximum

    log.debug(f"Loaded {path.name}: {pixels.shape}, {bit_depth}-bit")
    return ImageBuffer.from_hwc(pixels)


def quantize(data: np.ndarray) -> np.ndarray:
    """Map [0, 1] intensities to bytes: round half up, clamp to [0, 255]."""
    return np.clip(np.floor(np.asarray(data) * 255.0 + 0.5), 0, 255).astype(np.uint8)


def save_png(img: ImageBuffer, path: Path) -> None:
    """Write `img` as an 8-bit PNG."""
    path = Path(path)
    pixels = quantize(img.to_hwc())
    if pixels.ndim == 3:
        pixels = pixels[..., 0] if pixels.shape[-1] == 1 else np.ascontiguousarray(pixels[..., ::-1])
    ok, encoded = cv2.imencode(".png", pixels)
    if not ok:
        raise OSError(f"PNG encoding failed for {path}")
    path.write_bytes(encoded.tobytes())
    log.debug(f"Saved {path}")
