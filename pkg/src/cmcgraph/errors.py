"""Exception types raised by the library; the CLI maps them to exit codes."""


class CMCError(Exception):
    """Base class for library errors."""


class ParameterError(CMCError, ValueError):
    """Inadmissible family parameters (e.g. Riemannian ``|c| > m - 1``)."""


class DomainError(CMCError, ValueError):
    """A point or finite-difference stencil leaves the domain."""


class SignatureError(CMCError):
    """A Lorentzian graph fails to be spacelike (``|grad f|_g >= 1``)."""


class SingularPointError(CMCError, ValueError):
    """Evaluation at a point where the quantity is undefined (``grad r`` at 0)."""
