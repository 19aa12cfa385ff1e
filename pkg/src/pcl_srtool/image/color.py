import numpy as np

from ..errors import ShapeMismatchError
from .buffer import ImageBuffer, LumaPlane

# Studio-swing BT.601, inputs in [0, 1], output on the 0..255 scale before division.
LUMA_OFFSET = 16.0
LUMA_COEFFS = (65.481, 128.553, 24.966)


def rgb_to_luma(img: ImageBuffer) -> LumaPlane:
    """Y channel of YCbCr as used by the SR benchmark literature."""
    if img.channels != 3:
        raise ShapeMismatchError(f"rgb_to_luma needs 3 channels, got {img.channels}")
    r, g, b = img.data
    y = (LUMA_OFFSET + LUMA_COEFFS[0] * r + LUMA_COEFFS[1] * g + LUMA_COEFFS[2] * b) / 255.0
    return LumaPlane(np.clip(y, 0.0, 1.0))


def to_luma(img: ImageBuffer | LumaPlane) -> LumaPlane:
    """Luma of an RGB buffer; single-channel inputs are taken as already luma."""
    if isinstance(img, LumaPlane):
        return img
    if img.channels == 1:
        return LumaPlane(img.data[0])
    return rgb_to_luma(img)
