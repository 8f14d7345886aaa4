"""
Exception hierarchy for fnlie.
"""

from typing import Optional


class FnlieError(Exception):
    """Base class for every error raised by fnlie."""


class ChartMismatchError(FnlieError):
    """Operands live on different charts, or a coordinate is not on the chart."""


class DimensionError(FnlieError):
    """A point or vector has the wrong number of entries."""


class DegreeError(FnlieError):
    """An operation received a form of an unsupported degree."""


class ProjectabilityError(FnlieError):
    """A tangent valued form on Q does not factor through a base form."""

    def __init__(self, message: str, component: Optional[str] = None, coordinate: Optional[str] = None):
        super().__init__(message)
        self.component = component
        self.coordinate = coordinate


class LinearityError(FnlieError):
    """Input is required to be (real or complex) linear in the fiber."""


class HermitianError(FnlieError):
    """Input is required to be Hermitian."""


class ConsistencyError(FnlieError):
    """Two independent computations of the same quantity disagree.

    This always indicates a bug, never bad input.
    """


class ModelError(FnlieError):
    """Error located in a model file or an eval expression."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line:
            return f"line {self.line}, column {self.column}: {self.message}"
        return self.message


class ModelSyntaxError(ModelError):
    """The text does not follow the model grammar."""


class ModelTypeError(ModelError):
    """A definition has the wrong degree, kind or chart."""


class UnknownNameError(ModelError):
    """A referenced definition does not exist."""


class UnknownSuiteError(FnlieError):
    """The requested verification suite is not published."""
