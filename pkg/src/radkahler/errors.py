"""Exception types shared across the package."""


class RadKahlerError(Exception):
    """Base class for all errors raised by this package."""


class ZeroPolynomialError(RadKahlerError):
    """An operation that needs a nonzero polynomial received the zero one."""


class EvalAtPoleError(RadKahlerError):
    """Evaluation at y = 0 of a Laurent polynomial with negative valuation."""


class NotInteriorPointError(RadKahlerError):
    """The anchor point does not lie in the positivity region of psi."""


class NonAffineScalarError(RadKahlerError):
    """Symbolic scalar curvature failed to reduce to an affine function of y.

    This cannot happen for profiles produced by ``build_psi``; it guards
    against internal symbolic bugs.
    """


class NonPositiveScaleError(RadKahlerError):
    """Metric rescaling factors must be strictly positive rationals."""


class DimensionTooSmallError(RadKahlerError):
    """The requested operation needs complex dimension n >= 2."""


class WrongDimensionError(RadKahlerError):
    """The requested operation applies only in complex dimension n = 1."""


class DomainNotPositiveError(RadKahlerError):
    """The scan domain is not contained in the positivity region of psi."""


class NotKEError(RadKahlerError):
    """Kahler-Einstein diagnostics need B = D = 0."""


class NotARootError(RadKahlerError):
    """The supplied point is not an exact root of psi."""


class UnknownExampleError(RadKahlerError):
    """No registry entry with the requested id."""


class ReconciliationError(RadKahlerError):
    """The two independent obstruction recursions disagree (internal bug)."""


class NotInDomainError(RadKahlerError):
    """The initial value lies outside the positivity region of psi."""


class StepFailureError(RadKahlerError):
    """The ODE integrator could not meet the requested tolerance."""


class ParseError(RadKahlerError):
    """Malformed parameter or report input."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class FloatLiteralRefusedError(ParseError):
    """Floating-point literals are refused; parameters must be exact."""
