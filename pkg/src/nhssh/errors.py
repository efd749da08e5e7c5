"""Exception hierarchy shared by all modules."""


class NHSSHError(Exception):
    """Base class for all package errors."""


class ParameterError(NHSSHError, ValueError):
    """Invalid input value. ``field`` names the offending argument."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


class EigenConvergenceError(NHSSHError):
    """The eigensolver did not converge; ``partial`` holds whatever was computed."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ExceptionalPointError(NHSSHError):
    """Eigenvalues coalesce (or nearly so); biorthogonal pairing is undefined."""

    def __init__(self, message, separation=None, condition=None):
        super().__init__(message)
        self.separation = separation
        self.condition = condition


class CriticalPointError(NHSSHError):
    """The parameter point sits on a topological phase boundary."""


class TransitionPointError(CriticalPointError):
    """The occupied subspace is ill-defined because the real line gap is closed."""

    def __init__(self, message, gap_re=None):
        super().__init__(message)
        self.gap_re = gap_re


class NoGapError(NHSSHError):
    """Edge-state selection by spectral gap is impossible (gapless real spectrum)."""
