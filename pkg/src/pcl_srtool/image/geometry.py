from typing import TypeVar

from ..errors import ImageTooSmallError
from .buffer import ImageBuffer, LumaPlane

Image = TypeVar("Image", ImageBuffer, LumaPlane)


def _rebuild(img: Image, top: int, left: int, height: int, width: int) -> Image:
    if isinstance(img, LumaPlane):
        return LumaPlane(img.data[top : top + height, left : left + width])
    return ImageBuffer(img.data[:, top : top + height, left : left + width])


def crop_border(img: Image, n: int) -> Image:
    """Drop `n` pixels from every side."""
    if n < 0:
        raise ValueError(f"border must be non-negative, got {n}")
    if 2 * n >= min(img.width, img.height):
        raise ImageTooSmallError(f"cannot crop {n} px from each side of a {img.width}x{img.height} image")
    if n == 0:
        return img
    return _rebuild(img, n, n, img.height - 2 * n, img.width - 2 * n)


def center_crop(img: Image, width: int, height: int) -> Image:
    """Centered window of the requested size; odd leftovers go to the right/bottom."""
    if width > img.width or height > img.height or width < 1 or height < 1:
        raise ImageTooSmallError(f"cannot take a {width}x{height} window from a {img.width}x{img.height} image")
    if (width, height) == (img.width, img.height):
        return img
    return _rebuild(img, (img.height - height) // 2, (img.width - width) // 2, height, width)
