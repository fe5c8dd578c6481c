"""Exception hierarchy. Every error raised by the package derives from QSLError."""


class QSLError(Exception):
    pass


class NotHermitian(QSLError, ValueError):
    pass


class NotPSD(QSLError, ValueError):
    pass


class NoConvergence(QSLError, RuntimeError):
    pass


class DimensionMismatch(QSLError, ValueError):
    pass


class OutOfRange(QSLError, ValueError):
    pass


class NotUnitVector(QSLError, ValueError):
    pass


class NotDensityOperator(QSLError, ValueError):
    pass


class NotPure(QSLError, ValueError):
    pass


class NotTwoQubit(QSLError, ValueError):
    pass


class InvariantDrift(QSLError, RuntimeError):
    pass


class UnsupportedCombination(QSLError, ValueError):
    pass


class ZeroSpeed(QSLError, ArithmeticError):
    pass


class NotUnitaryProcess(QSLError, ValueError):
    pass


class NotSeparableProcess(QSLError, ValueError):
    pass


class NotProductInitial(QSLError, ValueError):
    pass


class SupportEscape(QSLError, RuntimeError):
    pass


class UnknownFigure(QSLError, KeyError):
    pass
