"""Exception hierarchy shared by every stage of the analysis."""


class TsGaussError(ValueError):
    """Base class for all errors raised by :mod:`tsgauss`."""


class AllMissing(TsGaussError):
    pass


class LagTooLarge(TsGaussError):
    pass


class DegenerateSeries(TsGaussError):
    """The series has zero variance, so no test statistic is defined."""


class InsufficientData(TsGaussError):
    pass


class SingularCovariance(TsGaussError):
    """Long-run covariance of the characteristic-function moments is singular."""


class NonpositiveLongRunVariance(TsGaussError):
    pass


class TruncationFailure(TsGaussError):
    pass


class SeriesTooShort(TsGaussError):
    pass


class EmptyInput(TsGaussError):
    pass


class OutOfRange(TsGaussError):
    pass


class NonstationaryCoefficients(TsGaussError):
    pass


class ParseError(TsGaussError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class HttpError(TsGaussError):
    def __init__(self, status: int, url: str):
        self.status = status
        self.url = url
        super().__init__(f"HTTP {status} for {url}")


class UnknownStation(TsGaussError):
    pass


class MissingVariable(TsGaussError):
    pass
