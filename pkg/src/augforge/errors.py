"""Exception types shared across the package."""


class AugforgeError(Exception):
    """Base class for all errors raised by this package."""


class RejectedInput(AugforgeError, ValueError):
    """Input data violates a documented precondition (bad shape, range, ids)."""


class ShapeMismatch(RejectedInput):
    """Operand shapes are inconsistent."""


class DegenerateBatch(RejectedInput):
    """A batch is too small for the requested operation (e.g. batch norm on 1 row)."""


class InvalidHyperparameter(AugforgeError, ValueError):
    """A configuration value is outside its valid range."""


class StateError(AugforgeError, RuntimeError):
    """Operation called in the wrong order (e.g. backward before forward)."""


class OptimizerDivergence(AugforgeError, FloatingPointError):
    """Non-finite gradients reached the optimizer; message names the parameter block."""


class TrainingFailure(AugforgeError, RuntimeError):
    """Training produced a non-finite loss; carries the failing epoch index."""

    def __init__(self, message, epoch=None):
        super().__init__(message)
        self.epoch = epoch


class EmptyFeatureSet(AugforgeError, ValueError):
    """A filtering step removed every feature column."""


class ConfigError(AugforgeError, ValueError):
    """Invalid experiment configuration; message names the offending field."""


class ParseError(AugforgeError, ValueError):
    """A file could not be parsed; message carries the location (byte/row/column)."""


class ConsistencyError(AugforgeError, ValueError):
    """Two inputs that must agree (e.g. image and label counts) do not."""
