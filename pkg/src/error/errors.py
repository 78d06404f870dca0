class IntrinLipError(Exception):
    """Base class for every error raised by the library."""

    error_type = 'default'


class InvalidSpec(IntrinLipError):
    """A group or map specification could not be parsed or is out of range."""

    error_type = 'invalid_spec'


class InvalidArgument(IntrinLipError):
    error_type = 'invalid_argument'


class DecompositionFailure(IntrinLipError):
    """n·h did not recompose to g; the group instance is broken."""

    error_type = 'internal'


class SearchBudgetExceeded(IntrinLipError):
    error_type = 'internal'


class DegenerateSample(IntrinLipError):
    """Every sampled denominator vanished."""

    error_type = 'degenerate'


class OutsideDomain(IntrinLipError):
    error_type = 'domain'

    def __init__(self, point, message: str = None):
        self.point = point
        super().__init__(message or f"point {point} is outside the map domain")


class AxisMissing(IntrinLipError):
    """A half cone or supergraph needs a registered one-dimensional axis."""

    error_type = 'invalid_argument'


class WrongNormalSide(IntrinLipError):
    error_type = 'invalid_argument'


class NotASubgroup(IntrinLipError):
    error_type = 'premise'


class PremiseFailed(IntrinLipError):
    error_type = 'premise'

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NotConverged(IntrinLipError):
    error_type = 'premise'
