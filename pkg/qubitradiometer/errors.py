class RadiometerError(Exception):
    """Base class for every error raised by qubitradiometer."""


class DomainError(RadiometerError, ValueError):
    """A function was evaluated outside its mathematical domain."""


class ValidationError(RadiometerError, ValueError):
    """A parameter record violates one of its invariants."""


class FitError(RadiometerError):
    """A regression is degenerate or singular."""


class ProtocolError(RadiometerError):
    """A calibration-protocol precondition does not hold."""


class EstimationError(RadiometerError):
    """The Ramsey estimator cannot produce a population."""


class IntegrationError(RadiometerError):
    """The Gaussian-ansatz integration failed."""


class ConvergenceError(RadiometerError):
    """A regularized result depends on its regularization."""


class ConfigError(RadiometerError):
    """The experiment configuration could not be loaded or validated."""
