from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Union

import numpy as np

from ..errors import ShapeMismatchError
from ..image import ImageBuffer, LumaPlane

Planes = Union[ImageBuffer, LumaPlane, np.ndarray]

DEFAULT_EPS = 1e-6


def as_planes(img: Planes) -> np.ndarray:
    """(channels, height, width) float64 view of any image-like input.

    Raw arrays are accepted unchecked so the algebraic properties of the losses can be
    exercised outside [0, 1].
    """
    if isinstance(img, (ImageBuffer, LumaPlane)):
        return img.planes
    array = np.asarray(img, dtype=np.float64)
    if array.ndim == 2:
        return array[np.newaxis]
    if array.ndim != 3:
        raise ShapeMismatchError(f"expected a 2-D or 3-D array, got shape {array.shape}")
    return array


def paired_planes(hr: Planes, sr: Planes) -> tuple[np.ndarray, np.ndarray]:
    a, b = as_planes(hr), as_planes(sr)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"HR shape {a.shape} does not match SR shape {b.shape}")
    return a, b


def charbonnier(r: np.ndarray, eps: float) -> np.ndarray:
    """Smoothed |r|, offset so that it vanishes at r = 0; exact |r| when eps = 0."""
    if eps == 0.0:
        return np.abs(r)
    return np.sqrt(r * r + eps * eps) - eps


def charbonnier_slope(r: np.ndarray, eps: float) -> np.ndarray:
    """d/dr of `charbonnier`; the sign subgradient (0 at ties) when eps = 0."""
    if eps == 0.0:
        return np.sign(r)
    return r / np.sqrt(r * r + eps * eps)


@dataclass(frozen=True)
class SmoothingEps:
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not self.eps >= 0.0:
            raise ValueError(f"smoothing eps must be non-negative, got {self.eps}")


def eps_value(eps: SmoothingEps | float) -> float:
    if isinstance(eps, SmoothingEps):
        return eps.eps
    return SmoothingEps(float(eps)).eps


@dataclass(frozen=True, eq=False)
class GradientField:
    """Partial derivatives of a loss with respect to every SR sample, (channels, height, width)."""

    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64, copy=True)
        if data.ndim != 3:
            raise ShapeMismatchError(f"GradientField expects (channels, height, width), got {data.shape}")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

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
    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.data)))


@dataclass(frozen=True)
class LossWeights:
    w_c: float = 1.0
    w_d: float = 1.0
    w_dct: float = 1.0
    w_adv: float = 0.001

    def __post_init__(self):
        values = self.as_tuple()
        if any(not w >= 0.0 for w in values):
            raise ValueError(f"loss weights must be non-negative, got {values}")
        if not any(w > 0.0 for w in values):
            raise ValueError("at least one loss weight must be positive")

    @classmethod
    def parse(cls, text: str) -> LossWeights:
        """Parse `wc,wd,wdct,wadv`."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated weights, got {text!r}")
        return cls(*(float(p) for p in parts))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w_c, self.w_d, self.w_dct, self.w_adv)

    def label(self) -> str:
        return ",".join(f"{w:g}" for w in self.as_tuple())


DEFAULT_WEIGHTS = LossWeights()

# Loss combinations compared in the ablation of the perceptual content losses.
LOSS_PRESETS: dict[str, LossWeights] = {
    "content": LossWeights(1.0, 0.0, 0.0, 0.0),
    "content+diff": LossWeights(1.0, 1.0, 0.0, 0.0),
    "content+dct": LossWeights(1.0, 0.0, 1.0, 0.0),
    "pcl": DEFAULT_WEIGHTS,
}


@dataclass(frozen=True)
class LossReport:
    l_c: float
    l_d: float
    l_dct: float
    l_adv: float | None
    total: float
    weights: LossWeights = DEFAULT_WEIGHTS

    def to_dict(self) -> dict:
        return {
            "l_c": self.l_c,
            "l_d": self.l_d,
            "l_dct": self.l_dct,
            "l_adv": self.l_adv,
            "total": self.total,
            "weights": asdict(self.weights),
        }
