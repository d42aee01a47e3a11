"""Exception types raised by the bispinor library."""


class BispinorError(Exception):
    """Base class for all library errors."""


class NoIntertwiner(BispinorError):
    """The intertwiner linear system has no nonzero solution."""


class BadSignature(BispinorError):
    """Metric does not have Lorentzian signature (-,+,+,+)."""


class NotLorentz(BispinorError):
    """Matrix does not preserve the Minkowski metric."""


class SpacelikeCurrent(BispinorError):
    """The current vector is spacelike; the invariant j is undefined."""


class NotNonnegative(BispinorError):
    """Matrix has a significantly negative eigenvalue."""


class Infeasible(BispinorError):
    """The nonnegativity condition fails; no factorization exists."""

    def __init__(self, margin: float, reason: str = ""):
        self.margin = margin
        self.reason = reason
        msg = f"infeasible input (margin={margin:.6g})"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class NotUnitary(BispinorError):
    """Gauge matrix is not unitary (orthogonal for the real kind)."""


class DegenerateNormalization(BispinorError):
    """Normalization requires j^0 > 0."""


class ProjectorConstructionFailed(BispinorError):
    """The chosen involutions do not yield valid projectors."""


class NoConvergence(BispinorError):
    """Eigensolver failed to converge."""


class GenerationExhausted(BispinorError):
    """Rejection sampling exceeded the attempt cap."""


class InputError(BispinorError):
    """Malformed input file or JSON object."""
