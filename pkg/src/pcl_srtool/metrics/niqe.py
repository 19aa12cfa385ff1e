"""Natural image quality evaluator (NIQE).

Pipeline: MSCN normalization with a 7x7 Gaussian window, 18 natural-scene-statistics
features per patch (GGD shape/variance of the MSCN coefficients plus AGGD
shape/mean/left-variance/right-variance of four neighbour products) at two scales, sharp
patch selection, then a Mahalanobis-style distance between the multivariate Gaussian of
the image's patches and a pristine model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import logging
from pathlib import Path
from typing import Sequence

import numpy as np
import scipy.linalg
from scipy.ndimage import correlate
from scipy.special import gammaln

from ..errors import DatasetError, ImageTooSmallError, ModelFormatError, NumericError, SingularCovarianceError
from ..image import ImageBuffer, LumaPlane, resize_planes, to_luma

log = logging.getLogger(__name__)

MODEL_HEADER = "NIQE-MODEL v1"
MODEL_VERSION = "v1"
DEFAULT_PATCH_SIZE = 96
FEATURE_DIM = 36
SHARPNESS_THRESHOLD = 0.75
RIDGE = 1e-10
MIN_CORPUS = 10

NORMALIZATION_WINDOW = 7
NORMALIZATION_SIGMA = 7.0 / 6.0
SHAPE_GRID = np.linspace(0.2, 10.0, 9801)

# (row, column) shifts: horizontal, vertical, main diagonal, anti-diagonal
PRODUCT_SHIFTS = ((0, 1), (1, 0), (1, 1), (-1, 1))

_GGD_RATIO = np.exp(gammaln(1.0 / SHAPE_GRID) + gammaln(3.0 / SHAPE_GRID) - 2.0 * gammaln(2.0 / SHAPE_GRID))
_AGGD_RATIO = np.exp(2.0 * gammaln(2.0 / SHAPE_GRID) - gammaln(1.0 / SHAPE_GRID) - gammaln(3.0 / SHAPE_GRID))


@dataclass(frozen=True, eq=False)
class NiqeModel:
    """Pristine multivariate Gaussian of patch features."""

    mu: np.ndarray
    sigma: np.ndarray
    patch_size: int = DEFAULT_PATCH_SIZE
    feature_dim: int = FEATURE_DIM
    version: str = field(default=MODEL_VERSION)

    def __post_init__(self):
        mu = np.array(self.mu, dtype=np.float64, copy=True)
        sigma = np.array(self.sigma, dtype=np.float64, copy=True)
        if mu.shape != (self.feature_dim,) or sigma.shape != (self.feature_dim, self.feature_dim):
            raise ModelFormatError(f"model expects {self.feature_dim} features, got mu {mu.shape} and sigma {sigma.shape}")
        if not np.allclose(sigma, sigma.T):
            raise ModelFormatError("model covariance is not symmetric")
        if self.patch_size < 8 or self.patch_size % 2:
            raise ModelFormatError(f"patch size must be even and at least 8, got {self.patch_size}")
        mu.flags.writeable = False
        sigma.flags.writeable = False
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)

    @property
    def is_degenerate(self) -> bool:
        return int(np.linalg.matrix_rank(self.sigma)) < self.feature_dim


def normalization_window() -> np.ndarray:
    x = np.arange(NORMALIZATION_WINDOW, dtype=np.float64) - (NORMALIZATION_WINDOW - 1) / 2.0
    taps = np.exp(-(x * x) / (2.0 * NORMALIZATION_SIGMA**2))
    window = np.outer(taps, taps)
    return window / window.sum()


def mscn(plane: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Mean-subtracted contrast-normalized coefficients and the local deviation map."""
    window = normalization_window()
    mu = correlate(plane, window, mode="nearest")
    deviation = np.sqrt(np.abs(correlate(plane * plane, window, mode="nearest") - mu * mu))
    return (plane - mu) / (deviation + 1.0), deviation


def ggd_fit(x: np.ndarray) -> tuple[float, float]:
    """Shape and variance of a zero-mean generalized Gaussian."""
    variance = np.mean(x * x)
    rho = variance / np.mean(np.abs(x)) ** 2
    shape = SHAPE_GRID[np.argmin(np.abs(rho - _GGD_RATIO))]
    return float(shape), float(variance)


def aggd_fit(x: np.ndarray) -> tuple[float, float, float, float]:
    """Shape, mean, left variance and right variance of an asymmetric generalized Gaussian."""
    left_var = np.mean(x[x < 0] ** 2) if np.any(x < 0) else np.nan
    right_var = np.mean(x[x > 0] ** 2) if np.any(x > 0) else np.nan
    left_std, right_std = np.sqrt(left_var), np.sqrt(right_var)
    gamma_hat = left_std / right_std
    r_hat = np.mean(np.abs(x)) ** 2 / np.mean(x * x)
    r_norm = r_hat * (gamma_hat**3 + 1.0) * (gamma_hat + 1.0) / (gamma_hat**2 + 1.0) ** 2
    if not np.isfinite(r_norm):
        return np.nan, np.nan, float(left_var), float(right_var)
    shape = SHAPE_GRID[np.argmin((_AGGD_RATIO - r_norm) ** 2)]
    scale = np.sqrt(np.exp(gammaln(1.0 / shape) - gammaln(3.0 / shape)))
    mean = (right_std - left_std) * scale * np.exp(gammaln(2.0 / shape) - gammaln(1.0 / shape))
    return float(shape), float(mean), float(left_var), float(right_var)


def patch_features(patch: np.ndarray) -> np.ndarray:
    """18 features of one MSCN patch; products wrap around inside the patch."""
    with np.errstate(divide="ignore", invalid="ignore"):
        features = list(ggd_fit(patch))
        for shift in PRODUCT_SHIFTS:
            features.extend(aggd_fit(patch * np.roll(patch, shift, axis=(0, 1))))
    return np.asarray(features)


def _blocks(plane: np.ndarray, size: int) -> list[np.ndarray]:
    rows, cols = plane.shape[0] // size, plane.shape[1] // size
    return [plane[r * size : (r + 1) * size, c * size : (c + 1) * size] for r in range(rows) for c in range(cols)]


def image_features(img: LumaPlane | ImageBuffer, patch_size: int = DEFAULT_PATCH_SIZE) -> tuple[np.ndarray, np.ndarray]:
    """Per-patch 36-feature rows and first-scale sharpness, in raster patch order."""
    plane = to_luma(img).data
    rows, cols = plane.shape[0] // patch_size, plane.shape[1] // patch_size
    if rows < 1 or cols < 1:
        raise ImageTooSmallError(f"NIQE needs at least one {patch_size}x{patch_size} patch, got {plane.shape[1]}x{plane.shape[0]}")
    plane = plane[: rows * patch_size, : cols * patch_size]

    first, deviation = mscn(255.0 * plane)
    half = resize_planes(plane, plane.shape[1] // 2, plane.shape[0] // 2, antialias=True, clamp=False)
    second, _ = mscn(255.0 * half)

    scale1 = np.array([patch_features(p) for p in _blocks(first, patch_size)])
    scale2 = np.array([patch_features(p) for p in _blocks(second, patch_size // 2)])
    sharpness = np.array([p.mean() for p in _blocks(deviation, patch_size)])
    return np.hstack([scale1, scale2]), sharpness


def select_patches(features: np.ndarray, sharpness: np.ndarray, threshold: float = SHARPNESS_THRESHOLD) -> np.ndarray:
    """Rows whose sharpness exceeds `threshold` x peak and whose features are all finite."""
    keep = sharpness > threshold * sharpness.max()
    keep &= np.all(np.isfinite(features), axis=1)
    return features[keep]


def _usable_features(img: LumaPlane | ImageBuffer, patch_size: int) -> np.ndarray:
    features = select_patches(*image_features(img, patch_size))
    if len(features) == 0:
        raise NumericError("no patch with usable natural-scene statistics (image too flat)")
    return features


def _gaussian(features: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mu = features.mean(axis=0)
    if len(features) < 2:
        return mu, np.zeros((features.shape[1], features.shape[1]))
    sigma = np.cov(features, rowvar=False)
    return mu, (sigma + sigma.T) / 2.0


def niqe_distance(mu: np.ndarray, sigma: np.ndarray, model: NiqeModel) -> float:
    """sqrt((mu - mu_m)^T ((sigma + sigma_m) / 2)^-1 (mu - mu_m)) with a small ridge."""
    pooled = (model.sigma + sigma) / 2.0 + RIDGE * np.eye(model.feature_dim)
    try:
        factor = scipy.linalg.cho_factor(pooled)
    except np.linalg.LinAlgError as exc:
        raise SingularCovarianceError(f"pooled NIQE covariance is singular: {exc}") from exc
    diff = model.mu - mu
    quality = float(diff @ scipy.linalg.cho_solve(factor, diff))
    return float(np.sqrt(max(quality, 0.0)))


def niqe(img: LumaPlane | ImageBuffer, model: NiqeModel) -> float:
    """NIQE score of one image against `model`; lower means more natural."""
    features = _usable_features(img, model.patch_size)
    log.debug(f"NIQE using {len(features)} patches of {model.patch_size}px")
    return niqe_distance(*_gaussian(features), model)


def fit_niqe_model(corpus: Sequence[LumaPlane | ImageBuffer], patch_size: int = DEFAULT_PATCH_SIZE) -> NiqeModel:
    """Fit the pristine model from the sharp patches of a corpus.

    Pooled rows are sorted before the moments are taken, so the model does not depend on
    corpus order.
    """
    if len(corpus) < MIN_CORPUS:
        raise DatasetError(f"NIQE fitting needs at least {MIN_CORPUS} images, got {len(corpus)}")
    rows = []
    for index, img in enumerate(corpus):
        if min(img.width, img.height) < 2 * patch_size:
            raise ImageTooSmallError(f"corpus image {index} is {img.width}x{img.height}, needs {2 * patch_size}px per side")
        rows.append(select_patches(*image_features(img, patch_size)))

    pooled = np.vstack(rows)
    if len(pooled) == 0:
        raise NumericError("corpus produced no usable patches")
    pooled = pooled[np.lexsort(pooled.T[::-1])]
    mu, sigma = _gaussian(pooled)

    model = NiqeModel(mu=mu, sigma=sigma, patch_size=patch_size)
    log.info(f"Fitted NIQE model from {len(corpus)} images ({len(pooled)} patches)")
    if model.is_degenerate:
        log.warning("NIQE model covariance is rank deficient; scores will lean on the ridge term")
    return model


def save_niqe_model(model: NiqeModel, path: Path) -> Path:
    lines = [MODEL_HEADER, f"patch_size {model.patch_size}", f"feature_dim {model.feature_dim}"]
    lines.append(" ".join(f"{v:.17g}" for v in model.mu))
    lines.extend(" ".join(f"{v:.17g}" for v in row) for row in model.sigma)
    path = Path(path)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    log.info(f"NIQE model saved to {path}")
    return path


def _keyed_int(line: str, key: str) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != key:
        raise ModelFormatError(f"expected '{key} <int>', got {line!r}")
    try:
        return int(parts[1])
    except ValueError as exc:
        raise ModelFormatError(f"bad {key}: {parts[1]!r}") from exc


def load_niqe_model(path: Path) -> NiqeModel:
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"NIQE model not found: {path}")
    lines = [line.strip() for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]
    if not lines or lines[0] != MODEL_HEADER:
        raise ModelFormatError(f"{path}: missing '{MODEL_HEADER}' header")
    if len(lines) < 4:
        raise ModelFormatError(f"{path}: truncated model file")
    patch_size = _keyed_int(lines[1], "patch_size")
    feature_dim = _keyed_int(lines[2], "feature_dim")
    if len(lines) != 4 + feature_dim:
        raise ModelFormatError(f"{path}: expected {4 + feature_dim} lines, got {len(lines)}")
    try:
        mu = np.array([float(v) for v in lines[3].split()])
        sigma = np.array([[float(v) for v in line.split()] for line in lines[4:]])
    except ValueError as exc:
        raise ModelFormatError(f"{path}: non-numeric value ({exc})") from exc
    return NiqeModel(mu=mu, sigma=sigma, patch_size=patch_size, feature_dim=feature_dim)
