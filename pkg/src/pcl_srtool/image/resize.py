"""Separable cubic-convolution resampling following the MATLAB `imresize` convention.

Downscaling with antialiasing stretches the kernel by the inverse scale; edges replicate
(indices are clamped). Weights are accumulated into a dense per-axis matrix so that a
resize is two matrix products in float64.
"""

from functools import lru_cache
import logging

import numpy as np

from .buffer import ImageBuffer

log = logging.getLogger(__name__)

CUBIC_A = -0.5
KERNEL_WIDTH = 4.0


def cubic(x: np.ndarray, a: float = CUBIC_A) -> np.ndarray:
    """Keys cubic convolution kernel."""
    ax = np.abs(x)
    ax2 = ax * ax
    ax3 = ax2 * ax
    inner = (a + 2.0) * ax3 - (a + 3.0) * ax2 + 1.0
    outer = a * ax3 - 5.0 * a * ax2 + 8.0 * a * ax - 4.0 * a
    return np.where(ax <= 1.0, inner, np.where(ax <= 2.0, outer, 0.0))


def contributions(in_len: int, out_len: int, antialias: bool) -> tuple[np.ndarray, np.ndarray]:
    """Source indices (0-based, clamped) and normalized weights, one row per output sample."""
    scale = out_len / in_len
    if scale < 1.0 and antialias:
        width = KERNEL_WIDTH / scale

        def kernel(x):
            return scale * cubic(scale * x)

    else:
        width = KERNEL_WIDTH
        kernel = cubic

    x = np.arange(1, out_len + 1, dtype=np.float64)
    u = x / scale + 0.5 * (1.0 - 1.0 / scale)
    left = np.floor(u - width / 2.0)
    taps = int(np.ceil(width)) + 2
    indices = left[:, np.newaxis] + np.arange(taps, dtype=np.float64)[np.newaxis, :]
    weights = kernel(u[:, np.newaxis] - indices)
    weights = weights / weights.sum(axis=1, keepdims=True)
    indices = np.clip(indices, 1, in_len).astype(np.intp) - 1
    return indices, weights


@lru_cache(maxsize=64)
def _resample_matrix(in_len: int, out_len: int, antialias: bool) -> np.ndarray:
    indices, weights = contributions(in_len, out_len, antialias)
    matrix = np.zeros((out_len, in_len), dtype=np.float64)
    rows = np.repeat(np.arange(out_len), indices.shape[1])
    np.add.at(matrix, (rows, indices.ravel()), weights.ravel())
    matrix.flags.writeable = False
    return matrix


def resize_planes(data: np.ndarray, out_w: int, out_h: int, antialias: bool = True, clamp: bool = True) -> np.ndarray:
    """Resize a (..., height, width) array."""
    if out_w < 1 or out_h < 1:
        raise ValueError(f"target dimensions must be positive, got {out_w}x{out_h}")
    in_h, in_w = data.shape[-2:]
    rows = _resample_matrix(in_h, out_h, antialias)
    cols = _resample_matrix(in_w, out_w, antialias)
    out = np.matmul(np.matmul(rows, data), cols.T)
    return np.clip(out, 0.0, 1.0) if clamp else out


def bicubic_resize(img: ImageBuffer, out_w: int, out_h: int, antialias: bool = True) -> ImageBuffer:
    """Bicubic (a = -0.5) resize of every channel to `out_w` x `out_h`."""
    log.debug(f"Resizing {img.width}x{img.height} -> {out_w}x{out_h} (antialias={antialias})")
    return ImageBuffer(resize_planes(img.data, out_w, out_h, antialias))
