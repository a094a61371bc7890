"""Exception types shared across the package."""


class GeometryError(Exception):
    """Base class for all errors raised by diffbody."""


class EmptyInput(GeometryError):
    pass


class DegenerateInput(GeometryError):
    """Point set or body is not full-dimensional."""


class DimensionMismatch(GeometryError):
    pass


class DimensionTooLarge(GeometryError):
    pass


class OriginNotInterior(GeometryError):
    pass


class LambdaOutOfRange(GeometryError):
    pass


class IndexOutOfRange(GeometryError):
    pass


class SampleCountTooSmall(GeometryError):
    pass


class RankFailure(GeometryError):
    """Random generation could not produce a full-dimensional body."""


class ParseError(GeometryError, ValueError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class EngineInconsistency(GeometryError):
    """A proven inequality came out violated; this can only be a bug.

    ``dump`` holds a JSON-serializable diagnostic (body and report).
    """

    def __init__(self, message, dump=None):
        super().__init__(message)
        self.dump = dump
