"""Exception hierarchy shared by the lab; the cli maps these onto exit codes."""
from typing import Optional


class LabError(Exception):
    """Base class for every lab failure"""


class DomainError(LabError, ValueError):
    """Input outside an operation's domain"""


class ConfigError(LabError):
    """Malformed configuration or unknown identifier"""


class PrecisionError(LabError, ArithmeticError):
    """Numeric result could not be certified to the requested precision"""

    def __init__(self, message: str, best_value: Optional[float] = None, est_error: Optional[float] = None):
        super().__init__(message)
        self.best_value = best_value
        self.est_error = est_error


class ConvergenceError(PrecisionError):
    """Quadrature or series did not reach its tolerance"""


class AcceptanceFailure(LabError):
    """An acceptance criterion failed"""


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ACCEPTANCE = 2
EXIT_PRECISION = 3
