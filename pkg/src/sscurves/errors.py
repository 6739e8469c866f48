"""Exception types shared across the package."""


class SSCurvesError(Exception):
    """Base class for all errors raised by this package."""


class ZeroInversion(SSCurvesError, ZeroDivisionError):
    pass


class ZeroPolynomial(SSCurvesError, ValueError):
    pass


class DegreeCapExceeded(SSCurvesError):
    """An extension of F_p beyond the configured degree cap was requested."""


class NotZeroDimensional(SSCurvesError):
    pass


class ResourceBudgetExceeded(SSCurvesError):
    pass


class SingularMatrix(SSCurvesError, ValueError):
    pass


class EngineDisagreement(SSCurvesError):
    """The Groebner and brute-force engines returned different element sets."""


class ClosureViolation(SSCurvesError):
    pass


class PartitionMismatch(SSCurvesError):
    pass


class ParseError(SSCurvesError, ValueError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
