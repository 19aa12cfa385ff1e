from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..errors import ImageTooSmallError, ShapeMismatchError


def _frozen(data: np.ndarray) -> np.ndarray:
    array = np.array(data, dtype=np.float64, copy=True)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class ImageBuffer:
    """Planar multi-channel image with intensities in [0, 1].

    `data` has shape (channels, height, width) and is read-only after construction.
    """

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim == 2:
            data = data[np.newaxis]
        if data.ndim != 3 or data.shape[0] not in (1, 3):
            raise ShapeMismatchError(f"ImageBuffer expects (channels, height, width) with 1 or 3 channels, got shape {data.shape}")
        if data.shape[1] < 1 or data.shape[2] < 1:
            raise ImageTooSmallError(f"ImageBuffer needs positive dimensions, got {data.shape[2]}x{data.shape[1]}")
        if not np.all(np.isfinite(data)) or data.min() < 0.0 or data.max() > 1.0:
            raise ValueError("ImageBuffer intensities must lie in [0, 1]")
        object.__setattr__(self, "data", _frozen(data))

    @classmethod
    def from_hwc(cls, array: np.ndarray) -> ImageBuffer:
        """Build from an interleaved (height, width[, channels]) array."""
        array = np.asarray(array, dtype=np.float64)
        if array.ndim == 3:
            array = np.moveaxis(array, -1, 0)
        return cls(array)

    @property
    def channels(self) -> int:
        return self.data.shape[0]

    @property
    def height(self) -> int:
        return self.data.shape[1]

    @property
    def width(self) -> int:
        return self.data.shape[2]

    @property
    def planes(self) -> np.ndarray:
        return self.data

    def to_hwc(self) -> np.ndarray:
        return np.moveaxis(self.data, 0, -1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImageBuffer):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))


@dataclass(frozen=True, eq=False)
class LumaPlane:
    """Single luma channel, (height, width), values in [0, 1]."""

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim != 2:
            raise ShapeMismatchError(f"LumaPlane expects a 2-D array, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ImageTooSmallError("LumaPlane needs positive dimensions")
        if not np.all(np.isfinite(data)) or data.min() < 0.0 or data.max() > 1.0:
            raise ValueError("LumaPlane values must lie in [0, 1]")
        object.__setattr__(self, "data", _frozen(data))

    @property
    def channels(self) -> int:
        return 1

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def planes(self) -> np.ndarray:
        return self.data[np.newaxis]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LumaPlane):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))


class ChannelMode(Enum):
    LUMA = "y"
    RGB = "rgb"


@dataclass(frozen=True)
class EvalProtocol:
    """How an (HR, SR) pair is reduced before the metrics run."""

    scale: int = 4
    border_discard: int = 4
    channel_mode: ChannelMode = field(default=ChannelMode.LUMA)

    def __post_init__(self):
        if self.scale < 1:
            raise ValueError(f"scale must be positive, got {self.scale}")
        if self.border_discard < 0:
            raise ValueError(f"border_discard must be non-negative, got {self.border_discard}")

    def check(self, width: int, height: int) -> None:
        if 2 * self.border_discard >= min(width, height):
            raise ImageTooSmallError(f"border of {self.border_discard} px leaves nothing of a {width}x{height} image")

    def to_dict(self) -> dict:
        return {"scale": self.scale, "border": self.border_discard, "channel": self.channel_mode.value}
