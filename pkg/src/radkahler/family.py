"""The four-parameter family of radial extremal Kahler metrics.

A radial Kahler metric with potential f(r), r = |z|^2, is encoded by the
momentum variable y(r) = r f'(r) and the profile psi(y) = r y'(r) viewed as a
function of y.  Extremality forces psi into the rational family

    psi(y) = y - A*y^(1-n) - B*y^(2-n) - C*y^2 - D*y^3

with real parameters A, B, C, D in complex dimension n.  This module builds
psi from exact rational parameters, classifies the metric, computes the
scalar curvature symbolically (always affine in y), rescales parameters, and
determines the maximal positivity interval of psi around an anchor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    NonAffineScalarError,
    NonPositiveScaleError,
    NotInteriorPointError,
)
from .laurent import LaurentPoly, RationalLike, as_fraction, fraction_str
from .roots import (
    DEFAULT_ISOLATION_WIDTH,
    Interval,
    PositiveRoot,
    isolate_positive_roots,
)


@dataclass(frozen=True)
class ExtremalParams:
    """Exact parameters (A, B, C, D) and complex dimension n of the family."""

    n: int
    A: Fraction = Fraction(0)
    B: Fraction = Fraction(0)
    C: Fraction = Fraction(0)
    D: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"complex dimension n must be an integer >= 1, got {self.n!r}")
        for name in "ABCD":
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    def __str__(self) -> str:
        fields = ", ".join(f"{k}={fraction_str(getattr(self, k))}" for k in "ABCD")
        return f"(n={self.n}, {fields})"

    def to_json_dict(self) -> dict:
        return {"n": self.n, **{k: fraction_str(getattr(self, k)) for k in "ABCD"}}


def build_psi(params: ExtremalParams) -> LaurentPoly:
    """The profile psi(y) = y - A*y^(1-n) - B*y^(2-n) - C*y^2 - D*y^3.

    Exponents that collide for small n (e.g. the B term meets the constant
    at n = 2) are merged exactly.
    """
    n = params.n
    return LaurentPoly(
        [
            (1, Fraction(1)),
            (1 - n, -params.A),
            (2 - n, -params.B),
            (2, -params.C),
            (3, -params.D),
        ]
    )


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

CONST_HOL_SEC_CURV = "const-hol-sec-curv"
KAHLER_EINSTEIN = "kahler-einstein"
CSCK = "csck"
EXTREMAL_PROPER = "extremal"


@dataclass(frozen=True)
class MetricClass:
    """Most specific class of the metric, with its curvature payload.

    * const-hol-sec-curv: A = B = D = 0 (complex space form)
    * kahler-einstein:    B = D = 0, Einstein constant lambda = 2(n+1)C
    * csck:               D = 0, constant scalar curvature s = n(n+1)C
    * extremal:           scalar curvature gamma1*y + gamma2
    """

    tag: str
    einstein_constant: Optional[Fraction] = None
    scalar_constant: Optional[Fraction] = None
    gamma1: Optional[Fraction] = None
    gamma2: Optional[Fraction] = None

    def to_json_dict(self) -> dict:
        data: dict = {"tag": self.tag}
        if self.einstein_constant is not None:
            data["lambda"] = fraction_str(self.einstein_constant)
        if self.scalar_constant is not None:
            data["s"] = fraction_str(self.scalar_constant)
        if self.gamma1 is not None:
            data["gamma1"] = fraction_str(self.gamma1)
            data["gamma2"] = fraction_str(self.gamma2)
        return data


def classify(params: ExtremalParams) -> MetricClass:
    """Pick the most specific metric class for the parameters."""
    n, A, B, C, D = params.n, params.A, params.B, params.C, params.D
    if A == B == D == 0:
        return MetricClass(CONST_HOL_SEC_CURV)
    if B == D == 0:
        return MetricClass(KAHLER_EINSTEIN, einstein_constant=2 * (n + 1) * C)
    if D == 0:
        return MetricClass(CSCK, scalar_constant=n * (n + 1) * C)
    return MetricClass(
        EXTREMAL_PROPER,
        gamma1=(n + 1) * (n + 2) * D,
        gamma2=n * (n + 1) * C,
    )


# ---------------------------------------------------------------------------
# scalar curvature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScalarCurvature:
    """Symbolic scalar curvature s(y) = gamma1*y + gamma2 and sigma(y).

    sigma(y) = (n-1)*psi/y + dpsi/dy is the trace quantity entering the Ricci
    tensor; s comes from the full second-derivative reduction and is checked
    to be exactly affine.
    """

    gamma1: Fraction
    gamma2: Fraction
    s: LaurentPoly
    sigma: LaurentPoly


def scalar_curvature(params: ExtremalParams) -> ScalarCurvature:
    """Compute s(y) = n(n-1)/y - y^(1-n) * d^2[y^(n-1) psi]/dy^2 symbolically."""
    n = params.n
    psi = build_psi(params)
    second = psi.shifted(n - 1).derivative().derivative()
    s = LaurentPoly.monomial(-1, n * (n - 1)) - second.shifted(1 - n)
    if any(e not in (0, 1) for e, _ in s.terms()):
        raise NonAffineScalarError(f"scalar curvature is not affine in y: {s}")
    sigma = (n - 1) * psi.shifted(-1) + psi.derivative()
    return ScalarCurvature(
        gamma1=s.coefficient(1),
        gamma2=s.coefficient(0),
        s=s,
        sigma=sigma,
    )


# ---------------------------------------------------------------------------
# rescaling
# ---------------------------------------------------------------------------


def scale_params(params: ExtremalParams, alpha: RationalLike) -> ExtremalParams:
    """Parameters of the rescaled metric alpha * g.

    Rescaling sends y to alpha*y and psi to alpha*psi(y/alpha), i.e.
    (A, B, C, D) -> (alpha^n A, alpha^(n-1) B, C/alpha, D/alpha^2).
    """
    alpha = as_fraction(alpha)
    if alpha <= 0:
        raise NonPositiveScaleError(f"scale factor must be positive, got {alpha}")
    n = params.n
    return ExtremalParams(
        n=n,
        A=alpha**n * params.A,
        B=alpha ** (n - 1) * params.B,
        C=params.C / alpha,
        D=params.D / alpha**2,
    )


# ---------------------------------------------------------------------------
# positivity domain
# ---------------------------------------------------------------------------

ENDPOINT_ZERO = "zero"
ENDPOINT_INFINITY = "infinity"
ENDPOINT_ROOT = "root"


@dataclass(frozen=True)
class DomainEndpoint:
    """One endpoint of a maximal positivity interval of psi.

    Either 0, +infinity, or a positive root of psi.  Rational roots carry the
    exact value; irrational ones an isolating bracket of width <= 2^-20.
    """

    kind: str
    value: Optional[Fraction] = None
    bracket: Optional[tuple[Fraction, Fraction]] = None

    @classmethod
    def zero(cls) -> "DomainEndpoint":
        return cls(ENDPOINT_ZERO, value=Fraction(0))

    @classmethod
    def infinity(cls) -> "DomainEndpoint":
        return cls(ENDPOINT_INFINITY)

    @classmethod
    def root(cls, isolated: PositiveRoot) -> "DomainEndpoint":
        refined = isolated.refined(DEFAULT_ISOLATION_WIDTH)
        if refined.exact is not None:
            return cls(ENDPOINT_ROOT, value=refined.exact)
        return cls(ENDPOINT_ROOT, bracket=(refined.lo, refined.hi))

    @property
    def is_exact(self) -> bool:
        return self.value is not None

    @property
    def is_finite(self) -> bool:
        return self.kind != ENDPOINT_INFINITY

    def inner_value(self, side: str) -> Optional[Fraction]:
        """A rational bound on the safe side: above for 'lo', below for 'hi'."""
        if self.kind == ENDPOINT_INFINITY:
            return None
        if self.value is not None:
            return self.value
        return self.bracket[1] if side == "lo" else self.bracket[0]

    def to_json_dict(self) -> dict:
        data: dict = {"kind": self.kind}
        if self.value is not None:
            data["value"] = fraction_str(self.value)
        if self.bracket is not None:
            data["bracket"] = [fraction_str(self.bracket[0]), fraction_str(self.bracket[1])]
        return data

    def __str__(self) -> str:
        if self.kind == ENDPOINT_INFINITY:
            return "inf"
        if self.value is not None:
            return fraction_str(self.value)
        return f"[{fraction_str(self.bracket[0])}, {fraction_str(self.bracket[1])}]"


@dataclass(frozen=True)
class PsiDomain:
    """Maximal open interval around the anchor on which psi > 0."""

    lo: DomainEndpoint
    hi: DomainEndpoint

    def interval(self) -> Interval:
        """Rational open interval contained in the domain (inner approximation)."""
        lo = self.lo.inner_value("lo")
        hi = self.hi.inner_value("hi")
        return Interval(lo if lo is not None else Fraction(0), hi)

    def __str__(self) -> str:
        return f"({self.lo}, {self.hi})"


def positivity_domain(params: ExtremalParams, y0: RationalLike) -> PsiDomain:
    """Maximal open subinterval of (0, inf) containing y0 where psi > 0.

    Finite nonzero endpoints are roots of psi; y0 must satisfy psi(y0) > 0.
    """
    y0 = as_fraction(y0)
    psi = build_psi(params)
    if y0 <= 0 or psi.is_zero or psi(y0) <= 0:
        raise NotInteriorPointError(f"psi({y0}) is not positive")
    below: Optional[PositiveRoot] = None
    above: Optional[PositiveRoot] = None
    for root in isolate_positive_roots(psi):
        # y0 is not a root, so brackets can always be pushed off it
        if root.exact is None and root.lo <= y0 <= root.hi:
            root = root.separated_from(y0)
        if root.is_above(y0):
            if above is None or root.lo < above.lo:
                above = root
        else:
            if below is None or root.lo > below.lo:
                below = root
    lo = DomainEndpoint.zero() if below is None else DomainEndpoint.root(below)
    hi = DomainEndpoint.infinity() if above is None else DomainEndpoint.root(above)
    return PsiDomain(lo, hi)
