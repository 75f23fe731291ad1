"""Exception hierarchy.

Every error raised by the library derives from :class:`SkewMinError`, which
is itself a ``ValueError`` so that callers validating user input can catch
either.
"""


class SkewMinError(ValueError):
    pass


class NonHermitian(SkewMinError):
    pass


class NonFinite(SkewMinError):
    pass


class NotPSD(SkewMinError):
    pass


class DimensionMismatch(SkewMinError):
    pass


class NonRealTrace(SkewMinError):
    pass


class NonUnitNorm(SkewMinError):
    pass


class NotNormalized(SkewMinError):
    pass


class ParamOutOfRange(SkewMinError):
    pass


class WrongDimension(SkewMinError):
    pass


class BasisNotCommuting(SkewMinError):
    pass


class InternalInconsistency(SkewMinError):
    """Two independent evaluations of the same quantity disagree."""


class NotConverged(SkewMinError):
    pass
