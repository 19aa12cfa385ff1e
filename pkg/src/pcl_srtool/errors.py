"""Error taxonomy shared by the library and the CLI.

Data errors map to exit status 2, numeric failures to exit status 3.
"""


class SrToolError(Exception):
    """Base class for every error raised by pcl-srtool."""

    exit_code: int = 2


class DataError(SrToolError):
    """Input data is missing, malformed or inconsistent."""

    exit_code = 2


class NumericError(SrToolError):
    """A computation produced a value it cannot report."""

    exit_code = 3


class ImageNotFoundError(DataError, FileNotFoundError):
    pass


class UnsupportedImageError(DataError):
    """The file decodes but is not an 8/16-bit gray or RGB(A) PNG."""


class ImageDecodeError(DataError):
    pass


class ShapeMismatchError(DataError, ValueError):
    pass


class ImageTooSmallError(DataError, ValueError):
    pass


class DatasetError(DataError):
    pass


class ModelFormatError(DataError):
    """A NIQE model file does not follow the `NIQE-MODEL v1` layout."""


class ScoreRangeError(DataError, ValueError):
    pass


class DivergedLossError(NumericError):
    """The loss is infinite for the given input (e.g. -ln(0))."""


class SingularCovarianceError(NumericError):
    pass


class NonFiniteGradientError(NumericError):
    pass
