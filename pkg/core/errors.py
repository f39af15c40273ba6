from __future__ import annotations


class BaseError(Exception):
    """The base class to all custom errors.

    Any keyword argument is stored on the instance, so callers can attach the
    offending config, residual or exit code for whoever catches the error.
    """

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args)

        for key, value in kwargs.items():
            setattr(self, key, value)


class ConfigError(BaseError, ValueError):
    """Raised when market primitives or command flags are invalid."""


class DomainError(BaseError, ValueError):
    """Raised when a probability kernel receives an input outside its domain."""


class ConvergenceError(BaseError):
    """Raised when a balance residual cannot be bracketed or solved to tolerance."""


class InconsistencyError(BaseError):
    """Raised when a solved equilibrium fails one of its own optimality checks."""


class CommandError(BaseError):
    """Raised when an operation is done over an invalid command."""


class CommandLoadError(BaseError):
    """Raised when an error occurs in loading / unloading a command."""


class ExitCommandError(BaseError):
    """An error class used to leave the running command with an exit code."""

    def __init__(self, *args, exit_code: int = 0, **kwargs) -> None:
        super().__init__(*args, exit_code=exit_code, **kwargs)
