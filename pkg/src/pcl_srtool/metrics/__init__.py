from .distortion import psnr, rmse
from .evaluation import MetricReport, evaluate_pair
from .niqe import NiqeModel, fit_niqe_model, load_niqe_model, niqe, save_niqe_model
from .perceptual import MaScoreProvider, perceptual_index, pirm_region
from .ssim import ssim

__all__ = [
    "MaScoreProvider",
    "MetricReport",
    "NiqeModel",
    "evaluate_pair",
    "fit_niqe_model",
    "load_niqe_model",
    "niqe",
    "perceptual_index",
    "pirm_region",
    "psnr",
    "rmse",
    "save_niqe_model",
    "ssim",
]
