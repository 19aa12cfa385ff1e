from .baseline import bicubic_baseline, divisible_crop, make_bicubic_baseline
from .dataset import DatasetManifest, ImagePair, list_images, scan_dataset
from .evaluate import AggregateReport, align_hr, evaluate_dataset

__all__ = [
    "AggregateReport",
    "DatasetManifest",
    "ImagePair",
    "align_hr",
    "bicubic_baseline",
    "divisible_crop",
    "evaluate_dataset",
    "list_images",
    "make_bicubic_baseline",
    "scan_dataset",
]
