"""Exception hierarchy shared by all modules."""


class FlgError(Exception):
    """Base class for every error raised by atomicflg."""


class InputError(FlgError, ValueError):
    """Malformed instance, placement, permutation or document."""


class FeasibilityError(FlgError, ValueError):
    """A client profile violates the feasibility conditions.

    Distinct from "not an equilibrium", which is reported as a verdict.
    """

    def __init__(self, message, client=None, condition=None):
        super().__init__(message)
        self.client = client
        self.condition = condition


class UncoveredClientError(FlgError, ValueError):
    """Waiting time requested for a client with an empty shopping range."""


class UnsupportedModeError(FlgError):
    """Operation defined only for unweighted instances was given weights."""


class GuardExceeded(FlgError):
    """Exhaustive micro-instance routine called on a too large instance."""


class CertificateError(FlgError):
    """Partial certificate is missing a required placement."""


class InvariantError(FlgError, AssertionError):
    """An internal invariant guaranteed by the theory failed: this is a bug."""
