"""Kahler-Einstein diagnostics: rationality data and stability scans.

For a KE profile (B = D = 0) whose metric is not well-behaved, the inner
endpoint y_inf is a root of psi and the number

    n_tilde = psi'(y_inf) = n - (lambda/2) * y_inf

controls a projective-inducibility obstruction: at a root of psi the
projective obstruction sequence evaluates to the falling factorial
Q_k(y_inf) = y_inf (y_inf - 1) ... (y_inf - k + 1), and the combination
Q_k + n_tilde * Q_k' evaluates to the analogous rising product in
y_inf + n_tilde.  Whenever y_inf or n_tilde fails to be an integer a
specific index k_hat is forced negative just right of y_inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NotARootError, NotInDomainError, NotKEError
from .family import (
    CONST_HOL_SEC_CURV,
    ENDPOINT_ROOT,
    ENDPOINT_ZERO,
    KAHLER_EINSTEIN,
    DomainEndpoint,
    ExtremalParams,
    PsiDomain,
    build_psi,
    classify,
    positivity_domain,
    scale_params,
)
from .laurent import RationalLike, as_fraction, fraction_str
from .resolvability import ObstructionReport, obstruction_scan
from .roots import Interval


@dataclass(frozen=True)
class KEDiagnostics:
    """Endpoint rationality data of a KE profile around an anchor.

    ``predicted_obstruction_k`` is set when an exact negativity of the
    projective obstruction sequence near y_inf is forced:

    * y_inf not an integer: k_hat = floor(y_inf) + 2 (falling factorial
      acquires exactly one negative factor);
    * y_inf a positive integer but n_tilde not an integer:
      k_hat = y_inf + floor(n_tilde) + 2 (the derivative turns negative).
    """

    params: ExtremalParams
    einstein_constant: Fraction
    well_behaved: bool
    y_inf: DomainEndpoint
    n_tilde: Optional[Fraction]
    n_tilde_bracket: Optional[tuple[Fraction, Fraction]]
    y_inf_integral: bool
    n_tilde_integral: bool
    predicted_obstruction_k: Optional[int]

    def to_json_dict(self) -> dict:
        data: dict = {
            "params": self.params.to_json_dict(),
            "lambda": fraction_str(self.einstein_constant),
            "well_behaved": self.well_behaved,
            "y_inf": self.y_inf.to_json_dict(),
            "y_inf_integral": self.y_inf_integral,
            "n_tilde_integral": self.n_tilde_integral,
            "predicted_obstruction_k": self.predicted_obstruction_k,
        }
        if self.n_tilde is not None:
            data["n_tilde"] = fraction_str(self.n_tilde)
        if self.n_tilde_bracket is not None:
            data["n_tilde_bracket"] = [fraction_str(b) for b in self.n_tilde_bracket]
        return data


def _floor_of_bracketed_root(endpoint: DomainEndpoint) -> int:
    """Floor of an irrationally bracketed endpoint (refined past integers)."""
    lo, hi = endpoint.bracket
    while math.floor(lo) != math.floor(hi):
        # the root is irrational, so shrinking eventually clears any integer
        mid = (lo + hi) / 2
        if mid - lo < Fraction(1, 2**80):  # pragma: no cover - defensive
            raise ArithmeticError("failed to separate endpoint bracket from an integer")
        lo, hi = (lo, mid) if math.floor(lo) == math.floor(mid) else (mid, hi)
    return math.floor(lo)


def ke_invariants(params: ExtremalParams, y0: RationalLike) -> KEDiagnostics:
    """Rationality/integrality data of the KE profile through psi(y0) > 0.

    Requires B = D = 0.  When the inner endpoint is an exact rational root,
    n_tilde is computed both as psi'(y_inf) and as n - (lambda/2) y_inf and
    the two must agree exactly.
    """
    cls = classify(params)
    if cls.tag not in (KAHLER_EINSTEIN, CONST_HOL_SEC_CURV):
        raise NotKEError(f"need B = D = 0, got B={params.B}, D={params.D}")
    n = params.n
    lam = 2 * (n + 1) * params.C
    domain: PsiDomain = positivity_domain(params, y0)
    lo = domain.lo

    if lo.kind == ENDPOINT_ZERO:
        return KEDiagnostics(
            params=params,
            einstein_constant=lam,
            well_behaved=True,
            y_inf=lo,
            n_tilde=Fraction(n),
            n_tilde_bracket=None,
            y_inf_integral=True,
            n_tilde_integral=True,
            predicted_obstruction_k=None,
        )

    assert lo.kind == ENDPOINT_ROOT
    psi = build_psi(params)
    if lo.is_exact:
        y_inf = lo.value
        n_tilde = psi.derivative()(y_inf)
        assert n_tilde == n - lam / 2 * y_inf, "endpoint slope identity violated"
        y_int = y_inf.denominator == 1
        nt_int = n_tilde.denominator == 1
        if not y_int:
            k_hat = math.floor(y_inf) + 2
        elif not nt_int:
            k_hat = int(y_inf) + math.floor(n_tilde) + 2
        else:
            k_hat = None
        return KEDiagnostics(
            params=params,
            einstein_constant=lam,
            well_behaved=False,
            y_inf=lo,
            n_tilde=n_tilde,
            n_tilde_bracket=None,
            y_inf_integral=y_int,
            n_tilde_integral=nt_int,
            predicted_obstruction_k=k_hat,
        )

    # irrational endpoint: report n_tilde as an interval via n - (lambda/2) y
    blo, bhi = lo.bracket
    cands = sorted((n - lam / 2 * blo, n - lam / 2 * bhi))
    nt_exact = Fraction(n) if lam == 0 else None
    k_hat = _floor_of_bracketed_root(lo) + 2
    return KEDiagnostics(
        params=params,
        einstein_constant=lam,
        well_behaved=False,
        y_inf=lo,
        n_tilde=nt_exact,
        n_tilde_bracket=(cands[0], cands[1]),
        y_inf_integral=False,
        n_tilde_integral=nt_exact is not None and nt_exact.denominator == 1,
        predicted_obstruction_k=k_hat,
    )


def falling_factorial_check(params: ExtremalParams, y_root: RationalLike, K: int) -> bool:
    """Verify the two exact product identities at a rational root of psi.

    For every 2 <= k <= K, with n_tilde = psi'(y_root):

    * Q_k(y_root) = y_root (y_root - 1) ... (y_root - k + 1)
    * Q_k(y_root) + n_tilde Q_k'(y_root)
        = (y_root + n_tilde - k + 1) ... (y_root + n_tilde)

    where Q is the projective (eps = +1) obstruction sequence.
    """
    from .resolvability import q_sequence

    y_root = as_fraction(y_root)
    psi = build_psi(params)
    if psi.is_zero or y_root <= 0 or psi(y_root) != 0:
        raise NotARootError(f"psi({y_root}) != 0")
    if K < 2:
        raise ValueError("K must be >= 2")
    n_tilde = psi.derivative()(y_root)
    seq = q_sequence(params, 1, K)
    for k in range(2, K + 1):
        falling = Fraction(1)
        for j in range(k):
            falling *= y_root - j
        qk = seq.q(k)
        if qk(y_root) != falling:
            return False
        rising = Fraction(1)
        for i in range(k):
            rising *= y_root + n_tilde - i
        if qk(y_root) + n_tilde * qk.derivative()(y_root) != rising:
            return False
    return True


@dataclass(frozen=True)
class StabilityEntry:
    """Obstruction verdict for one rescaling factor alpha."""

    alpha: Fraction
    einstein_constant: Optional[Fraction]
    report: ObstructionReport

    def to_json_dict(self) -> dict:
        data: dict = {"alpha": fraction_str(self.alpha)}
        if self.einstein_constant is not None:
            data["lambda"] = fraction_str(self.einstein_constant)
        data.update(self.report.to_json_dict())
        return data


def stability_scan(
    params: ExtremalParams,
    alphas: list[RationalLike],
    domain_anchor: RationalLike,
    K: int,
) -> list[StabilityEntry]:
    """Projective obstruction scans of alpha*g over a rational alpha grid.

    The y-domain of alpha*g is the base positivity domain scaled by alpha.
    A finite grid can only exhibit instability, never certify stability.
    """
    anchor = as_fraction(domain_anchor)
    base = positivity_domain(params, anchor).interval()
    out = []
    for alpha in alphas:
        alpha = as_fraction(alpha)
        scaled = scale_params(params, alpha)
        domain = Interval(alpha * base.lo, None if base.hi is None else alpha * base.hi)
        report = obstruction_scan(scaled, 1, domain, K)
        is_ke = scaled.B == 0 and scaled.D == 0
        out.append(
            StabilityEntry(
                alpha=alpha,
                einstein_constant=2 * (scaled.n + 1) * scaled.C if is_ke else None,
                report=report,
            )
        )
    return out
