"""Exception types raised across the package."""


class ZeroDivisorError(ArithmeticError):
    """A bicomplex number with a vanishing idempotent component was inverted."""


class DimensionMismatch(ValueError):
    pass


class ZeroArgumentError(ValueError):
    """The activation was evaluated at (or numerically at) the origin.

    ``slot`` is 1 or 2 when raised by the bicomplex activation, ``None`` for
    the complex one.
    """

    def __init__(self, message, slot=None):
        super().__init__(message)
        self.slot = slot


class NotConvergedError(RuntimeError):
    """Training exhausted ``max_epochs`` without a clean epoch.

    The partial result is attached so callers can still export the trace.
    """

    def __init__(self, message, best_epoch_errors=None, weights=None, trace=None):
        super().__init__(message)
        self.best_epoch_errors = best_epoch_errors
        self.weights = weights
        self.trace = trace


class NonPositiveRateError(ValueError):
    pass


class GenerationStalledError(RuntimeError):
    pass


class MissingHiddenError(ValueError):
    """A bound check needs the generator's hidden separator but the file has none."""


class ParseError(ValueError):
    pass
