"""Shared exception types."""


class AlgebraError(Exception):
    """Base class for algebraic failures."""


class RingMismatchError(AlgebraError):
    """Operands belong to different rings or modules."""


class DimensionError(AlgebraError):
    """Shape or index mismatch."""


class HomogeneityError(AlgebraError):
    """Operation requires homogeneous input."""


class RopeSpecError(AlgebraError):
    """Rope data fails its validity conditions."""


class InternalLimitError(AlgebraError):
    """An internal iteration cap was exceeded."""


class ParseError(ValueError):
    """Syntax error with a source location."""

    def __init__(self, msg, line, col):
        super().__init__(f"{line}:{col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col
