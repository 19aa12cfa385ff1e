"""Type-II DCT kernels and the DCT-domain loss.

Two normalizations are offered. `ORTHONORMAL` scales basis k = 0 by sqrt(1/N) and k > 0 by
sqrt(2/N). `UNNORMALIZED` is the bare cosine sum X_k = sum_n x_n cos(pi k (2n + 1) / 2N)
(half of scipy's `norm=None` output per axis). Blockwise mode replicate-pads the plane to
a multiple of 8 and transforms every 8x8 tile independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.fft

from ..errors import ImageTooSmallError
from ..image import ImageBuffer, LumaPlane
from .base import GradientField, Planes, paired_planes

BLOCK = 8


class DctNorm(Enum):
    ORTHONORMAL = "ortho"
    UNNORMALIZED = "raw"


class DctMode(Enum):
    FULL = "full"
    BLOCK8 = "8"


@dataclass(frozen=True)
class DctConfig:
    normalization: DctNorm = DctNorm.UNNORMALIZED
    mode: DctMode = DctMode.FULL


def _forward_axis(x: np.ndarray, axis: int, norm: DctNorm) -> np.ndarray:
    if norm is DctNorm.ORTHONORMAL:
        return scipy.fft.dct(x, type=2, axis=axis, norm="ortho")
    return scipy.fft.dct(x, type=2, axis=axis) / 2.0


def _inverse_axis(x: np.ndarray, axis: int, norm: DctNorm) -> np.ndarray:
    if norm is DctNorm.ORTHONORMAL:
        return scipy.fft.idct(x, type=2, axis=axis, norm="ortho")
    return scipy.fft.idct(2.0 * x, type=2, axis=axis)


def _adjoint_axis(x: np.ndarray, axis: int, norm: DctNorm) -> np.ndarray:
    if norm is DctNorm.ORTHONORMAL:
        return scipy.fft.idct(x, type=2, axis=axis, norm="ortho")
    # C^T X = (DCT-III(X) + X_0) / 2 with scipy's unnormalized DCT-III
    dc = np.take(x, [0], axis=axis)
    return (scipy.fft.dct(x, type=3, axis=axis) + dc) / 2.0


def _padded_size(n: int) -> int:
    return -(-n // BLOCK) * BLOCK


def _to_blocks(x: np.ndarray) -> np.ndarray:
    lead, (h, w) = x.shape[:-2], x.shape[-2:]
    return x.reshape(lead + (h // BLOCK, BLOCK, w // BLOCK, BLOCK))


def _from_blocks(x: np.ndarray) -> np.ndarray:
    lead, (bh, _, bw, _) = x.shape[:-4], x.shape[-4:]
    return x.reshape(lead + (bh * BLOCK, bw * BLOCK))


def _apply(x: np.ndarray, cfg: DctConfig, axis_op) -> np.ndarray:
    if cfg.mode is DctMode.FULL:
        return axis_op(axis_op(x, -1, cfg.normalization), -2, cfg.normalization)
    blocks = _to_blocks(x)
    blocks = axis_op(axis_op(blocks, -1, cfg.normalization), -3, cfg.normalization)
    return _from_blocks(blocks)


def _pad_indices(height: int, width: int) -> tuple[np.ndarray, np.ndarray]:
    rows = np.minimum(np.arange(_padded_size(height)), height - 1)
    cols = np.minimum(np.arange(_padded_size(width)), width - 1)
    return rows, cols


def _pad(x: np.ndarray, cfg: DctConfig) -> np.ndarray:
    if cfg.mode is DctMode.FULL:
        return x
    rows, cols = _pad_indices(*x.shape[-2:])
    return x[..., rows[:, np.newaxis], cols[np.newaxis, :]]


def _unpad_adjoint(g: np.ndarray, height: int, width: int, cfg: DctConfig) -> np.ndarray:
    """Adjoint of replicate padding: padded samples fold back onto the edge they copy."""
    if cfg.mode is DctMode.FULL:
        return g
    rows, cols = _pad_indices(height, width)
    out = np.zeros(g.shape[:-2] + (height, width))
    np.add.at(out, (Ellipsis, rows[:, np.newaxis], cols[np.newaxis, :]), g)
    return out


def dct2(plane: Planes, cfg: DctConfig = DctConfig()) -> np.ndarray:
    """Separable 2-D type-II DCT of a single plane (or of each plane of a stack).

    In blockwise mode the result covers the replicate-padded grid.
    """
    if isinstance(plane, LumaPlane):
        x = plane.data
    elif isinstance(plane, ImageBuffer):
        x = plane.data[0] if plane.channels == 1 else plane.data
    else:
        x = np.asarray(plane, dtype=np.float64)
    if x.size == 0:
        raise ImageTooSmallError("dct2 needs a non-empty plane")
    return _apply(_pad(x, cfg), cfg, _forward_axis)


def idct2(coeffs: np.ndarray, cfg: DctConfig = DctConfig()) -> np.ndarray:
    """Inverse of `dct2` on the (padded) coefficient grid."""
    return _apply(np.asarray(coeffs, dtype=np.float64), cfg, _inverse_axis)


def dct2_adjoint(coeffs: np.ndarray, cfg: DctConfig = DctConfig()) -> np.ndarray:
    """Transpose of the configured transform on the (padded) grid; equals `idct2` when orthonormal."""
    return _apply(np.asarray(coeffs, dtype=np.float64), cfg, _adjoint_axis)


def _coefficient_residual(hr: Planes, sr: Planes, cfg: DctConfig) -> tuple[np.ndarray, np.ndarray]:
    a, b = paired_planes(hr, sr)
    return a, _apply(_pad(a - b, cfg), cfg, _forward_axis)


def dct_loss(hr: Planes, sr: Planes, cfg: DctConfig = DctConfig()) -> float:
    """(1/(W*H)) * sum of squared DCT coefficient differences, channel-averaged."""
    a, residual = _coefficient_residual(hr, sr, cfg)
    return float(np.sum(residual * residual) / a.size)


def dct_loss_grad(hr: Planes, sr: Planes, cfg: DctConfig = DctConfig()) -> GradientField:
    a, residual = _coefficient_residual(hr, sr, cfg)
    back = _apply(residual, cfg, _adjoint_axis)
    back = _unpad_adjoint(back, a.shape[1], a.shape[2], cfg)
    return GradientField(-2.0 * back / a.size)
