"""Exception hierarchy shared by every singres module."""


class SingresError(Exception):
    """Base class for all domain failures raised by singres."""


class ParseError(SingresError):
    """Malformed input text. ``position`` is a character offset or (line, col)."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)


class ValidationFailed(SingresError):
    def __init__(self, report):
        self.report = report
        lines = "; ".join(f"{v.code}: {v.message}" for v in report)
        super().__init__(f"invalid resolution data: {lines}")


class MissingData(SingresError):
    """An optional field needed by a formula is absent."""


class BoundExceeded(SingresError):
    pass


class NotSeparating(SingresError):
    pass


class OutOfScope(SingresError):
    pass


class UnknownStratum(SingresError):
    pass


class NotAComplex(SingresError):
    pass


class InvalidFiltration(SingresError):
    pass


class HypothesisFailed(SingresError):
    pass


class TruncationTooSmall(SingresError):
    pass


class ZeroPolynomial(SingresError):
    pass


class NonzeroConstantTerm(SingresError):
    pass


class NotConvenient(SingresError):
    pass


class Degenerate(SingresError):
    def __init__(self, message, edges=()):
        self.edges = tuple(edges)
        super().__init__(message)
