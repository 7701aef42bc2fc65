"""Exception hierarchy shared by all dmekmap modules.

Every error carries a short machine-parsable ``code`` so the CLI can print a
single-line diagnostic and exit nonzero.
"""


class DmekError(Exception):
    """Base class for all dmekmap errors."""

    code = "Error"


class InvalidDimensions(DmekError):
    code = "InvalidDimensions"


class FormatError(DmekError):
    code = "FormatError"


class UnsupportedFormat(DmekError):
    code = "UnsupportedFormat"


class InvalidConfig(DmekError):
    code = "InvalidConfig"


class InfeasibleGeometry(DmekError):
    code = "InfeasibleGeometry"


class NoGroundTruth(DmekError):
    code = "NoGroundTruth"


class ShapeError(DmekError):
    code = "ShapeError"


class StateError(DmekError):
    code = "StateError"


class InvalidDataset(DmekError):
    code = "InvalidDataset"


class FrameError(DmekError):
    code = "FrameError"


class DegenerateFit(DmekError):
    code = "DegenerateFit"


class NumericalFailure(DmekError):
    code = "NumericalFailure"


class NoIntersection(DmekError):
    code = "NoIntersection"


class InsufficientData(DmekError):
    code = "InsufficientData"


class IncompleteScan(DmekError):
    code = "IncompleteScan"


class DatasetMismatch(DmekError):
    code = "DatasetMismatch"


class IoError(DmekError):
    code = "IoError"
