from .buffer import ChannelMode, EvalProtocol, ImageBuffer, LumaPlane
from .color import rgb_to_luma, to_luma
from .geometry import center_crop, crop_border
from .png import load_png, quantize, save_png
from .resize import bicubic_resize, resize_planes

__all__ = [
    "ChannelMode",
    "EvalProtocol",
    "ImageBuffer",
    "LumaPlane",
    "bicubic_resize",
    "center_crop",
    "crop_border",
    "load_png",
    "quantize",
    "resize_planes",
    "rgb_to_luma",
    "save_png",
    "to_luma",
]
