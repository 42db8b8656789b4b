"""Exception types shared across the package."""


class QwrangeError(Exception):
    """Base class for all package errors."""


class NotHermitian(QwrangeError):
    pass


class NoConvergence(QwrangeError):
    pass


class DimensionMismatch(QwrangeError):
    pass


class EmptyInput(QwrangeError):
    pass


class BadDimension(QwrangeError):
    pass


class SpectrumOutOfRange(QwrangeError):
    pass


class DimensionTooSmall(QwrangeError):
    """No admissible vector pair exists (n = 1 with q < 1)."""


class NotTwoByTwo(QwrangeError):
    pass


class ParamOutOfRange(QwrangeError):
    pass


class NotNilpotent(QwrangeError):
    pass


class NotPositive(QwrangeError):
    pass


class NotProjection(QwrangeError):
    pass


class NotUnitary(QwrangeError):
    pass
