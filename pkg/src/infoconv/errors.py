"""Exception hierarchy shared by every module of the package."""


class InfoConvError(Exception):
    """Base class for all package errors."""


class ValidationError(InfoConvError, ValueError):
    """Malformed input: bad shapes, non-normalized distributions, bad indices."""


class ConvergenceError(InfoConvError):
    """An iterative solver failed to reach its tolerance.

    Attributes
    ----------
    residual : float
        The last observed residual ``max |pi T - pi|``.
    """

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual={residual:.3e})")
        self.residual = residual


class NumericalConsistencyError(InfoConvError):
    """A computed quantity violated an identity it must satisfy."""


class UndefinedBiasError(InfoConvError):
    """Synergy bias requested for a decomposition with no information mass."""


class UnsupportedTopologyError(InfoConvError):
    """The network topology is outside what an operation supports."""


class UndefinedCorrelationError(InfoConvError):
    """Correlation requested for data with zero variance or too few points."""
