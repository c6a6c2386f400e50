"""Built-in registry of closed-form radial extremal metrics.

Each entry carries exact parameters, a closed-form potential (or closed-form
trajectory relation) where one exists, and a list of documented claims about
the metric.  ``reproduce`` re-derives every claim with the library and labels
it confirmed or discrepant, keeping the machine-checked value in the detail
string.  Two entries knowingly carry discrepant documentation (a scalar
curvature constant, and a closed form together with the inner radius it
implies); the registry preserves both the documented and the derived values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import UnknownExampleError
from .family import (
    CSCK,
    ENDPOINT_ROOT,
    ENDPOINT_ZERO,
    EXTREMAL_PROPER,
    KAHLER_EINSTEIN,
    ExtremalParams,
    build_psi,
    classify,
    positivity_domain,
    scalar_curvature,
    scale_params,
)
from .laurent import fraction_str
from .profiles import (
    exfond_coefficients,
    integrate_profile,
    log_radius_span,
)
from .resolvability import obstruction_scan, q_sequence
from .roots import Interval

CONFIRMED = "confirmed"
DISCREPANT = "discrepant"

#: tolerance for closed-form round trips (at integration tolerance 1e-9)
ROUNDTRIP_TOL = 1e-8


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    status: str
    detail: str

    @property
    def confirmed(self) -> bool:
        return self.status == CONFIRMED


@dataclass(frozen=True)
class ReproduceReport:
    example: str
    results: tuple[ClaimResult, ...]

    @property
    def any_discrepant(self) -> bool:
        return any(not r.confirmed for r in self.results)

    @property
    def discrepant_claims(self) -> list[str]:
        return [r.claim for r in self.results if not r.confirmed]

    def to_json_dict(self) -> dict:
        return {
            "example": self.example,
            "discrepant": self.any_discrepant,
            "claims": [
                {"claim": r.claim, "status": r.status, "detail": r.detail}
                for r in self.results
            ],
        }


@dataclass(frozen=True)
class ExampleEntry:
    """One registry metric: parameters, closed forms, and documented claims."""

    id: str
    title: str
    params: ExtremalParams
    y_anchor: Fraction
    r_window: Optional[tuple[float, float]] = None
    closed_form_f: Optional[Callable[[float], float]] = None
    y_of_r: Optional[Callable[[float], float]] = None
    claim_ids: tuple[str, ...] = ()

    def psi(self):
        return build_psi(self.params)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def _f_exfond(r: float) -> float:
    return math.log((1.0 - math.sqrt(1.0 - 4.0 * r)) / (2.0 * r))


def _y_exfond(r: float) -> float:
    u = math.sqrt(1.0 - 4.0 * r)
    return (1.0 - u) / (2.0 * u)


def _f_burns_simanca(r: float) -> float:
    return r + math.log(r)


def _f_partbal(r: float) -> float:
    return math.log(r) - math.log(1.0 - r**3)


def _y_partbal(r: float) -> float:
    return (1.0 + 2.0 * r**3) / (1.0 - r**3)


def _f_ricci_flat_neg(r: float) -> float:
    u = math.sqrt(r * r - 1.0)
    return u - math.atan(u)


def _f_eguchi_hanson(r: float) -> float:
    v = math.sqrt(r * r + 1.0)
    return v + math.log(r) - math.log(1.0 + v)


def kenwb_radius_of_y(y: float) -> float:
    """Closed-form trajectory relation r(y) of the exKENWB entry."""
    return math.exp(-2.0 / (y + 2.0)) * ((y - 1.0) / (y + 2.0)) ** (1.0 / 3.0)


def exrinf_log_radius_of_y(y: float) -> float:
    """Derived antiderivative t(y) of 1/psi for the exrinf entry (constant 0)."""
    return (
        math.log(2.0 * y * y + y + 1.0) / 8.0
        - math.log(1.0 - y) / 4.0
        - 3.0 / (4.0 * math.sqrt(7.0)) * math.atan((4.0 * y + 1.0) / math.sqrt(7.0))
    )


#: derived inner log-radius of the exrinf entry, in the constant-0 gauge
EXRINF_T_INF = -3.0 / (4.0 * math.sqrt(7.0)) * math.atan(1.0 / math.sqrt(7.0))

#: documented inner log-radius of the exrinf entry (discrepant with the above)
EXRINF_T_INF_DOCUMENTED = -3.0 / math.sqrt(7.0) * math.atan(1.0 / math.sqrt(7.0))


def exrinf_documented_F(y: float) -> float:
    """Documented closed form log[sqrt(2y^2+y+1) / (1-y)^(1/4)] (discrepant)."""
    return math.log(math.sqrt(2.0 * y * y + y + 1.0) / (1.0 - y) ** 0.25)


# ---------------------------------------------------------------------------
# entries
# ---------------------------------------------------------------------------

_ENTRIES: dict[str, ExampleEntry] = {}


def _register(entry: ExampleEntry) -> None:
    _ENTRIES[entry.id] = entry


_register(
    ExampleEntry(
        id="exfond",
        title="extremal disk metric with explicit monomial immersion",
        params=ExtremalParams(n=2, C=Fraction(-3), D=Fraction(-2)),
        y_anchor=Fraction(1),
        r_window=(0.01, 0.24),
        closed_form_f=_f_exfond,
        y_of_r=_y_exfond,
        claim_ids=(
            "extremal-not-csck",
            "well-behaved",
            "potential-round-trip",
            "immersion-coefficients-positive",
            "hyperbolic-scan-clear",
        ),
    )
)

_register(
    ExampleEntry(
        id="burns-simanca",
        title="Burns-Simanca scalar-flat metric",
        params=ExtremalParams(n=2, B=Fraction(1)),
        y_anchor=Fraction(2),
        r_window=(0.1, 10.0),
        closed_form_f=_f_burns_simanca,
        y_of_r=lambda r: r + 1.0,
        claim_ids=(
            "scalar-flat",
            "not-well-behaved",
            "potential-round-trip",
            "flat-obstruction-k2",
            "hyperbolic-obstruction-k2",
            "projective-scan-clear",
        ),
    )
)

_register(
    ExampleEntry(
        id="partbal",
        title="punctured-disk cscK (not KE) metric",
        params=ExtremalParams(n=2, B=Fraction(2), C=Fraction(-1)),
        y_anchor=Fraction(2),
        r_window=(0.1, 0.9),
        closed_form_f=_f_partbal,
        y_of_r=_y_partbal,
        claim_ids=(
            "csck-not-ke",
            "not-well-behaved",
            "potential-round-trip",
            "scalar-curvature-value",
        ),
    )
)

_register(
    ExampleEntry(
        id="ricci-flat-neg",
        title="Ricci-flat metric, negative-parameter branch",
        params=ExtremalParams(n=2, A=Fraction(-1)),
        y_anchor=Fraction(1),
        r_window=(1.2, 4.0),
        closed_form_f=_f_ricci_flat_neg,
        y_of_r=lambda r: math.sqrt(r * r - 1.0),
        claim_ids=(
            "ricci-flat",
            "well-behaved",
            "inner-radius-one",
            "potential-round-trip",
            "projective-obstruction-k3",
        ),
    )
)

_register(
    ExampleEntry(
        id="eguchi-hanson",
        title="Eguchi-Hanson Ricci-flat metric",
        params=ExtremalParams(n=2, A=Fraction(1)),
        y_anchor=Fraction(2),
        r_window=(0.2, 5.0),
        closed_form_f=_f_eguchi_hanson,
        y_of_r=lambda r: math.sqrt(r * r + 1.0),
        claim_ids=(
            "ricci-flat",
            "not-well-behaved",
            "potential-round-trip",
            "non-integer-multiple-obstructed",
        ),
    )
)

_register(
    ExampleEntry(
        id="exKENWB",
        title="negative KE metric that is not well-behaved",
        params=ExtremalParams(n=2, A=Fraction(4, 3), C=Fraction(-1, 3)),
        y_anchor=Fraction(2),
        claim_ids=(
            "einstein-constant",
            "y-limit-one-at-origin",
            "trajectory-matches-closed-form",
            "displayed-profile-sign",
            "projective-obstruction-k11",
        ),
    )
)

_register(
    ExampleEntry(
        id="exrinf",
        title="positive KE metric with nonzero inner radius",
        params=ExtremalParams(n=2, A=Fraction(-1), C=Fraction(2)),
        y_anchor=Fraction(1, 2),
        claim_ids=(
            "einstein-constant",
            "well-behaved",
            "y-domain-zero-one",
            "closed-form-and-inner-radius",
        ),
    )
)


def example_ids() -> list[str]:
    return sorted(_ENTRIES)


def builtin_profile(example_id: str) -> ExampleEntry:
    try:
        return _ENTRIES[example_id]
    except KeyError:
        raise UnknownExampleError(
            f"unknown example {example_id!r}; known: {', '.join(example_ids())}"
        ) from None


# ---------------------------------------------------------------------------
# claim checks
# ---------------------------------------------------------------------------


def _roundtrip_error(entry: ExampleEntry, tol: float = 1e-9) -> float:
    """Max gauge-aligned deviation between integrated and closed-form f."""
    r_lo, r_hi = entry.r_window
    r0 = math.sqrt(r_lo * r_hi)
    y0 = entry.y_of_r(r0)
    profile = integrate_profile(
        entry.params, y0, math.log(r0), (math.log(r_lo), math.log(r_hi)), tol=tol
    )
    f0 = entry.closed_form_f(r0)
    return max(
        abs(f_num - (entry.closed_form_f(r) - f0))
        for r, f_num in zip(profile.r, profile.f)
    )


def _result(claim: str, ok: bool, detail: str) -> ClaimResult:
    return ClaimResult(claim, CONFIRMED if ok else DISCREPANT, detail)


def _check_claim(entry: ExampleEntry, claim: str) -> ClaimResult:
    params = entry.params
    if claim == "extremal-not-csck":
        cls = classify(params)
        return _result(claim, cls.tag == EXTREMAL_PROPER, f"class tag = {cls.tag}")

    if claim == "scalar-flat":
        sc = scalar_curvature(params)
        ok = sc.gamma1 == 0 and sc.gamma2 == 0
        return _result(claim, ok, f"s(y) = {sc.s}")

    if claim == "csck-not-ke":
        cls = classify(params)
        return _result(
            claim,
            cls.tag == CSCK,
            f"class tag = {cls.tag}, s = {fraction_str(cls.scalar_constant)}"
            if cls.tag == CSCK
            else f"class tag = {cls.tag}",
        )

    if claim == "ricci-flat":
        cls = classify(params)
        ok = cls.tag == KAHLER_EINSTEIN and cls.einstein_constant == 0
        return _result(claim, ok, f"class tag = {cls.tag}")

    if claim == "einstein-constant":
        cls = classify(params)
        documented = {"exKENWB": Fraction(-2), "exrinf": Fraction(12)}[entry.id]
        ok = cls.tag == KAHLER_EINSTEIN and cls.einstein_constant == documented
        got = fraction_str(cls.einstein_constant) if cls.einstein_constant is not None else "?"
        return _result(claim, ok, f"lambda = {got}, documented {fraction_str(documented)}")

    if claim in ("well-behaved", "not-well-behaved"):
        domain = positivity_domain(params, entry.y_anchor)
        well = domain.lo.kind == ENDPOINT_ZERO
        want = claim == "well-behaved"
        return _result(claim, well == want, f"y_inf = {domain.lo}")

    if claim == "potential-round-trip":
        err = _roundtrip_error(entry)
        return _result(claim, err <= ROUNDTRIP_TOL, f"max |f_num - f_closed| = {err:.3e}")

    if claim == "immersion-coefficients-positive":
        coeffs = exfond_coefficients(200)
        ok = all(c > 0 for c in coeffs) and coeffs[:3] == [1, 1, 2]
        head = ", ".join(fraction_str(c) for c in coeffs[:3])
        return _result(claim, ok, f"a_1..a_3 = {head}; all 200 positive = {ok}")

    if claim == "hyperbolic-scan-clear":
        report = obstruction_scan(params, -1, Interval(Fraction(0), None), 15)
        return _result(claim, report.verdict == "clear", f"verdict = {report.verdict}")

    if claim == "flat-obstruction-k2":
        domain = positivity_domain(params, entry.y_anchor).interval()
        report = obstruction_scan(params, 0, domain, 2)
        q2 = q_sequence(params, 0, 2).q(2)
        ok = report.obstructed and report.k == 2 and q2 == Fraction(-1)
        return _result(claim, ok, f"Q_2 = {q2}, verdict = {report.verdict}")

    if claim == "hyperbolic-obstruction-k2":
        domain = positivity_domain(params, entry.y_anchor).interval()
        report = obstruction_scan(params, -1, domain, 2)
        ok = report.obstructed and report.k == 2
        return _result(
            claim,
            ok,
            f"Q_2 = {q_sequence(params, -1, 2).q(2)}, witness = "
            f"{fraction_str(report.witness)} -> {fraction_str(report.value)}"
            if ok
            else f"verdict = {report.verdict}",
        )

    if claim == "projective-scan-clear":
        domain = positivity_domain(params, entry.y_anchor).interval()
        report = obstruction_scan(params, 1, domain, 15)
        return _result(claim, report.verdict == "clear", f"verdict = {report.verdict} up to K=15")

    if claim == "scalar-curvature-value":
        sc = scalar_curvature(params)
        documented = Fraction(-24)
        ok = sc.gamma1 == 0 and sc.gamma2 == documented
        return _result(
            claim,
            ok,
            f"computed s = {fraction_str(sc.gamma2)}, documented {fraction_str(documented)}",
        )

    if claim == "inner-radius-one":
        # t_inf = t0 - int dy/psi down to y ~ 0; closed form gives r_inf = 1
        y0 = entry.y_of_r(2.0)
        t_inf = math.log(2.0) - log_radius_span(params, 1e-8, y0)
        r_inf = math.exp(t_inf)
        ok = abs(r_inf - 1.0) < 1e-6
        return _result(claim, ok, f"r_inf = {r_inf:.9f}")

    if claim == "projective-obstruction-k3":
        report = obstruction_scan(params, 1, Interval(Fraction(0), None), 3)
        ok = report.obstructed and report.k == 3
        return _result(
            claim,
            ok,
            f"verdict = {report.verdict}"
            + (f", witness {fraction_str(report.witness)}" if report.obstructed else ""),
        )

    if claim == "non-integer-multiple-obstructed":
        # 3/2 of the metric: scaled inner endpoint 3/2 forces k_hat = 3
        from .ke import ke_invariants

        scaled = scale_params(params, Fraction(3, 2))
        diag = ke_invariants(scaled, Fraction(2))
        ok = diag.predicted_obstruction_k == 3
        if ok:
            q3 = q_sequence(scaled, 1, 3).q(3)
            value = q3(diag.y_inf.value)
            ok = value < 0
            detail = f"k_hat = 3, Q_3(y_inf) = {fraction_str(value)}"
        else:
            detail = f"predicted k = {diag.predicted_obstruction_k}"
        return _result(claim, ok, detail)

    if claim == "y-limit-one-at-origin":
        domain = positivity_domain(params, entry.y_anchor)
        ok = (
            domain.lo.kind == ENDPOINT_ROOT
            and domain.lo.is_exact
            and domain.lo.value == 1
        )
        return _result(claim, ok, f"y_inf = {domain.lo} (root endpoint: log r -> -inf)")

    if claim == "trajectory-matches-closed-form":
        y0 = 2.0
        r0 = kenwb_radius_of_y(y0)
        t0 = math.log(r0)
        profile = integrate_profile(params, y0, t0, (t0 - 1.5, t0 + 2.0), tol=1e-9)
        err = max(abs(r - kenwb_radius_of_y(y)) for r, y in zip(profile.r, profile.y))
        return _result(claim, err <= ROUNDTRIP_TOL, f"max |r - F(y)| = {err:.3e}")

    if claim == "displayed-profile-sign":
        psi = build_psi(params)
        computed = psi.coefficient(2)
        documented = Fraction(-1, 3)
        ok = computed == documented
        return _result(
            claim,
            ok,
            f"y^2 coefficient: computed {fraction_str(computed)}, "
            f"documented {fraction_str(documented)}",
        )

    if claim == "projective-obstruction-k11":
        report = obstruction_scan(params, 1, Interval(Fraction(1), Fraction(2)), 11)
        ok = report.obstructed and report.k == 11
        return _result(
            claim,
            ok,
            f"verdict = {report.verdict}, k = {report.k}"
            + (f", witness {fraction_str(report.witness)}" if report.obstructed else ""),
        )

    if claim == "y-domain-zero-one":
        domain = positivity_domain(params, entry.y_anchor)
        ok = (
            domain.lo.kind == ENDPOINT_ZERO
            and domain.hi.kind == ENDPOINT_ROOT
            and domain.hi.is_exact
            and domain.hi.value == 1
        )
        return _result(claim, ok, f"domain = {domain}")

    if claim == "closed-form-and-inner-radius":
        # (a) documented F(y) should be an antiderivative of 1/psi: compare slopes
        psi_f = build_psi(params).eval_float
        ys = [0.1, 0.3, 0.5, 0.7]
        h = 1e-6
        slope_err = max(
            abs((exrinf_documented_F(y + h) - exrinf_documented_F(y - h)) / (2 * h) - 1.0 / psi_f(y))
            for y in ys
        )
        documented_slope_ok = slope_err < 1e-3
        # (b) documented r_inf against the quadrature of 1/psi (constant-0 gauge)
        t_inf = exrinf_log_radius_of_y(0.5) - log_radius_span(params, 1e-9, 0.5)
        derived_ok = abs(t_inf - EXRINF_T_INF) < 1e-6
        documented_rinf_ok = abs(t_inf - EXRINF_T_INF_DOCUMENTED) < 1e-6
        ok = documented_slope_ok and documented_rinf_ok
        assert derived_ok, "derived antiderivative failed its own quadrature check"
        return _result(
            claim,
            ok,
            f"documented F slope error = {slope_err:.3e}; derived t_inf = {t_inf:.6f}, "
            f"documented {EXRINF_T_INF_DOCUMENTED:.6f}",
        )

    raise UnknownExampleError(f"no check implemented for claim {claim!r}")  # pragma: no cover


def reproduce(example_id: str) -> ReproduceReport:
    """Re-run every documented claim of a registry entry."""
    entry = builtin_profile(example_id)
    results = tuple(_check_claim(entry, claim) for claim in entry.claim_ids)
    return ReproduceReport(example=entry.id, results=results)
