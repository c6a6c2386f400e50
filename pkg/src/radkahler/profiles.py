"""Numeric reconstruction of radial metrics from their profile psi.

With t = log r the momentum y(t) solves dy/dt = psi(y), and the potential
follows from df/dt = y.  This module integrates that system with an adaptive
high-order scheme, recovers (t, r, y, f, s) trajectories, reports domain
endpoints, and computes the exact interior derivative data g_k(r0) =
Q_k(y0) / r0^k.

This is the only module that touches floating point; every sign decision in
the package stays with the exact kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import quad, solve_ivp

from .errors import NotInDomainError, StepFailureError
from .family import (
    ENDPOINT_ZERO,
    DomainEndpoint,
    ExtremalParams,
    PsiDomain,
    build_psi,
    positivity_domain,
    scalar_curvature,
)
from .laurent import LaurentPoly, RationalLike, as_fraction
from .resolvability import check_sign, q_sequence

#: default integration tolerance (both absolute and relative)
DEFAULT_TOL = 1e-9

#: numeric guards: stop before y collapses to 0 or blows up
_Y_FLOOR = 1e-12
_Y_CEILING = 1e9


@dataclass(frozen=True)
class MetricProfile:
    """Sampled trajectory (t, r, y, f, s) of a radial metric.

    The potential is gauged to f = 0 at the anchor time; r = e^t throughout;
    s is the scalar curvature evaluated along the trajectory.
    """

    params: ExtremalParams
    tol: float
    t: tuple[float, ...]
    r: tuple[float, ...]
    y: tuple[float, ...]
    f: tuple[float, ...]
    s: tuple[float, ...]
    gamma1: float
    gamma2: float

    def __len__(self) -> int:
        return len(self.t)

    def rows(self) -> list[tuple[float, float, float, float, float]]:
        return list(zip(self.t, self.r, self.y, self.f, self.s))


def integrate_profile(
    params: ExtremalParams,
    y0: float,
    t0: float,
    t_range: tuple[float, float],
    tol: float = DEFAULT_TOL,
    t_eval: Optional[Sequence[float]] = None,
) -> MetricProfile:
    """Integrate dy/dt = psi(y), df/dt = y through (t0, y0) over t_range.

    The trajectory is clipped where psi drops below ``tol`` (domain endpoints
    that are roots of psi are reached only asymptotically) and where y leaves
    the numerically safe range.
    """
    psi = build_psi(params)
    psif = psi.eval_float
    if not psif(y0) > 0:
        raise NotInDomainError(f"psi({y0}) <= 0: not inside a metric domain")
    t_lo, t_hi = t_range
    if not t_lo <= t0 <= t_hi:
        raise ValueError(f"t0={t0} must lie in t_range=({t_lo}, {t_hi})")

    curvature = scalar_curvature(params)
    s_poly = curvature.s

    def rhs(_t, state):
        y = state[0]
        return (psif(y), y)

    def near_root(_t, state):
        return psif(state[0]) - tol

    def near_floor(_t, state):
        return state[0] - _Y_FLOOR

    def near_ceiling(_t, state):
        return _Y_CEILING - state[0]

    for ev in (near_root, near_floor, near_ceiling):
        ev.terminal = True

    def leg(span, points):
        if span[0] == span[1]:
            return [], [], []
        sol = solve_ivp(
            rhs,
            span,
            (y0, 0.0),
            method="DOP853",
            rtol=tol,
            atol=tol,
            dense_output=False,
            t_eval=points,
            events=(near_root, near_floor, near_ceiling),
        )
        if sol.status == -1:
            raise StepFailureError(f"integration failed on {span}: {sol.message}")
        return list(sol.t), list(sol.y[0]), list(sol.y[1])

    if t_eval is not None:
        t_eval = sorted(t_eval)
        back_pts = [t for t in t_eval if t < t0][::-1] or None
        fwd_pts = [t for t in t_eval if t >= t0] or None
    else:
        back_pts = fwd_pts = None

    tb, yb, fb = leg((t0, t_lo), back_pts)
    tf, yf, ff = leg((t0, t_hi), fwd_pts)

    ts = tb[::-1] + tf
    ys = yb[::-1] + yf
    fs = fb[::-1] + ff
    if not ts:
        ts, ys, fs = [t0], [y0], [0.0]
    rs = [math.exp(t) for t in ts]
    ss = [s_poly.eval_float(y) for y in ys]
    return MetricProfile(
        params=params,
        tol=tol,
        t=tuple(ts),
        r=tuple(rs),
        y=tuple(ys),
        f=tuple(fs),
        s=tuple(ss),
        gamma1=float(curvature.gamma1),
        gamma2=float(curvature.gamma2),
    )


def extremality_residual(profile: MetricProfile) -> float:
    """max |s - (gamma1*y + gamma2)| along the trajectory.

    The identity holds symbolically; a nonzero residual is rounding and
    integration noise and must stay within 10x the integration tolerance.
    """
    if not len(profile):
        raise ValueError("empty profile")
    return max(
        abs(s - (profile.gamma1 * y + profile.gamma2))
        for y, s in zip(profile.y, profile.s)
    )


# ---------------------------------------------------------------------------
# domain endpoints
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DomainEndpoints:
    """y-interval endpoints of the metric through an anchor, with boundary notes.

    ``well_behaved`` records whether y -> 0 at the inner boundary.  Finite
    nonzero endpoints are roots of psi and are approached only as
    log r -> -inf/+inf; endpoints 0 and +inf may be reached at finite radius
    when psi stays away from zero there.
    """

    y_inf: DomainEndpoint
    y_sup: DomainEndpoint
    well_behaved: bool
    note_inf: str
    note_sup: str

    def to_json_dict(self) -> dict:
        return {
            "y_inf": self.y_inf.to_json_dict(),
            "y_sup": self.y_sup.to_json_dict(),
            "well_behaved": self.well_behaved,
            "note_inf": self.note_inf,
            "note_sup": self.note_sup,
        }


def _boundary_note(psi: LaurentPoly, endpoint: DomainEndpoint, side: str) -> str:
    if endpoint.kind == ENDPOINT_ZERO:
        val = psi.valuation
        if val >= 1:
            return "psi -> 0 as y -> 0: boundary reached only as log r -> -inf"
        return "psi stays away from 0 as y -> 0: finite inner radius possible"
    if endpoint.kind == "infinity":
        return "y unbounded above; psi eventually monotone in the tail"
    grows = "-inf" if side == "inf" else "+inf"
    return f"psi vanishes at the endpoint: reached only as log r -> {grows}"


def domain_endpoints(params: ExtremalParams, y0: RationalLike) -> DomainEndpoints:
    """Positivity endpoints (y_inf, y_sup) around y0 plus well-behavedness."""
    domain: PsiDomain = positivity_domain(params, y0)
    psi = build_psi(params)
    well_behaved = domain.lo.kind == ENDPOINT_ZERO
    return DomainEndpoints(
        y_inf=domain.lo,
        y_sup=domain.hi,
        well_behaved=well_behaved,
        note_inf=_boundary_note(psi, domain.lo, "inf"),
        note_sup=_boundary_note(psi, domain.hi, "sup"),
    )


def log_radius_span(
    params: ExtremalParams, y_from: float, y_to: float, epsabs: float = 1e-12
) -> float:
    """Integral of dt = dy / psi(y) between two momentum values (float)."""
    psif = build_psi(params).eval_float
    value, _err = quad(lambda y: 1.0 / psif(y), y_from, y_to, epsabs=epsabs, limit=400)
    return value


# ---------------------------------------------------------------------------
# exact interior data
# ---------------------------------------------------------------------------


def interior_series(
    params: ExtremalParams,
    eps: int,
    r0: RationalLike,
    y0: RationalLike,
    K: int,
) -> list[Fraction]:
    """Exact derivative data g_k(r0) = Q_k(y0) / r0^k for k = 1..K.

    (r0, y0) is an anchor declaring y(r0) = y0; psi(y0) must be positive.
    The sign pattern of the output equals the sign pattern of Q_k(y0).
    """
    check_sign(eps)
    r0 = as_fraction(r0)
    y0 = as_fraction(y0)
    if r0 <= 0:
        raise ValueError("anchor radius r0 must be positive")
    psi = build_psi(params)
    if psi.is_zero or y0 <= 0 or psi(y0) <= 0:
        raise NotInDomainError(f"psi({y0}) <= 0: anchor outside the metric domain")
    seq = q_sequence(params, eps, K)
    return [seq.q(k)(y0) / r0**k for k in range(1, K + 1)]


def exfond_coefficients(K: int) -> list[Fraction]:
    """Monomial-immersion coefficients a_k of the exfond registry entry.

    The entry's potential satisfies 1 - e^(-f) = sum_k a_k r^k with
    a_k = 4^k |binom(1/2, k)| / 2; all coefficients are strictly positive,
    which is what makes the explicit monomial immersion possible.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    out = []
    binom = Fraction(1)  # binom(1/2, 0)
    for k in range(1, K + 1):
        binom *= (Fraction(1, 2) - (k - 1)) / k
        out.append(Fraction(4) ** k * abs(binom) / 2)
    return out
