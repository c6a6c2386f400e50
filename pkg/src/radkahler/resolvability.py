"""Obstruction sequences for immersions into complex space forms.

For an ambient sign eps in {-1, 0, +1} (hyperbolic, flat, projective) the
sequence of Laurent polynomials

    Q_1(y) = y,    Q_{k+1}(y) = (eps*y - k) Q_k(y) + Q_k'(y) psi(y)

encodes the successive derivatives of the resolvability generating function
of a radial metric: inducibility into the sign-eps space form forces every
Q_k to be nonnegative on the metric's y-interval when n >= 2, and forces the
positivity of a determinant built from the Q_k when n = 1.  This module
computes the sequence exactly, cross-checks it against an independent
companion recursion, verifies closed-form degree/coefficient laws, and runs
the sign scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    DimensionTooSmallError,
    DomainNotPositiveError,
    ReconciliationError,
    WrongDimensionError,
)
from .family import ExtremalParams, build_psi
from .laurent import LaurentPoly, fraction_str
from .roots import (
    Interval,
    PositivityCertificate,
    certify_sign_on_interval,
    count_positive_roots_in,
)

VALID_SIGNS = (-1, 0, 1)


def check_sign(eps: int) -> int:
    if eps not in VALID_SIGNS:
        raise ValueError(f"ambient sign must be -1, 0 or +1, got {eps!r}")
    return eps


# ---------------------------------------------------------------------------
# the Q recursion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QSequence:
    """Cached entries Q_1 .. Q_K for fixed parameters and ambient sign."""

    params: ExtremalParams
    eps: int
    entries: tuple[LaurentPoly, ...]

    def q(self, k: int) -> LaurentPoly:
        """1-based access: q(1) = y."""
        if not 1 <= k <= len(self.entries):
            raise IndexError(f"k must be in 1..{len(self.entries)}, got {k}")
        return self.entries[k - 1]

    def __len__(self) -> int:
        return len(self.entries)


def q_sequence(params: ExtremalParams, eps: int, K: int) -> QSequence:
    """Compute Q_1 .. Q_K exactly by the defining recursion."""
    check_sign(eps)
    if K < 1:
        raise ValueError("K must be >= 1")
    psi = build_psi(params)
    step = LaurentPoly({1: eps}) if eps else LaurentPoly.zero()
    entries = [LaurentPoly.y()]
    for k in range(1, K):
        q = entries[-1]
        entries.append((step - k) * q + q.derivative() * psi)
    return QSequence(params, eps, tuple(entries))


def detect_space_form(params: ExtremalParams, eps: int) -> bool:
    """True iff Q_2 vanishes identically, i.e. psi(y) = y - eps*y^2.

    A vanishing Q_2 pins the metric to the constant-curvature model of the
    ambient sign itself.
    """
    check_sign(eps)
    return build_psi(params) == LaurentPoly({1: 1, 2: -eps})


def zero_index(params: ExtremalParams, eps: int, K: int) -> Optional[int]:
    """Smallest k <= K with Q_k identically zero, if any.

    The recursion maps the zero polynomial to itself, so every later entry
    vanishes too (asserted).
    """
    seq = q_sequence(params, eps, K)
    first = None
    for k in range(1, K + 1):
        if seq.q(k).is_zero:
            first = k
            break
    if first is not None:
        assert all(seq.q(j).is_zero for j in range(first, K + 1))
    return first


# ---------------------------------------------------------------------------
# companion recursion (independent route to Q_k)
# ---------------------------------------------------------------------------


def _prefactor(eps: int, k: int) -> LaurentPoly:
    """y * prod_{j=1}^{k-1} (eps*y - j); the empty product is 1."""
    acc = LaurentPoly.y()
    for j in range(1, k):
        acc = acc * LaurentPoly({1: eps, 0: -j})
    return acc


def p_from_q(params: ExtremalParams, eps: int, k: int) -> LaurentPoly:
    """Companion polynomial P_k with Q_k = y*prod(eps*y - j) + psi*P_k/y^((k-2)n).

    P_k is built by its own recursion and the reconstruction is reconciled
    against the direct Q recursion; a mismatch means an implementation bug.
    """
    check_sign(eps)
    if k < 1:
        raise ValueError("k must be >= 1")
    n = params.n
    psi = build_psi(params)
    u = psi.shifted(n - 1)  # y^(n-1) psi, an ordinary polynomial
    du = u.derivative()
    p = LaurentPoly.zero()  # P_1
    for j in range(1, k):
        # step j -> j+1
        correction = (
            du.shifted(1) * p
            + psi.shifted(n) * p.derivative()
            - ((j - 1) * n - 1) * psi.shifted(n - 1) * p
        )
        p = (
            LaurentPoly({1: eps, 0: -j}).shifted(n) * p
            + _prefactor(eps, j).derivative().shifted((j - 1) * n)
            + correction
        )
    if not p.is_zero and p.valuation < 0:
        raise ReconciliationError(f"P_{k} is not an ordinary polynomial: {p}")
    reconstructed = _prefactor(eps, k) + psi * p.shifted(-(k - 2) * n)
    expected = q_sequence(params, eps, k).q(k)
    if reconstructed != expected:
        raise ReconciliationError(
            f"companion reconstruction of Q_{k} disagrees with the direct recursion"
        )
    return p


# ---------------------------------------------------------------------------
# closed-form extremes
# ---------------------------------------------------------------------------

LEADING = "leading"
LOWER = "lower"


@dataclass(frozen=True)
class ExtremePrediction:
    """Predicted extreme exponent and coefficient of Q_k, or a degeneration.

    ``degenerate`` means the generic closed form evaluates to zero, so the
    stated exponent carries no term; only the vanishing of that coefficient
    is then predicted.
    """

    which: str
    exponent: int
    coefficient: Optional[Fraction]

    @property
    def degenerate(self) -> bool:
        return self.coefficient is None


def extremes_closed_form(
    params: ExtremalParams, eps: int, k: int, which: str
) -> ExtremePrediction:
    """Closed-form top/bottom term of Q_k for n >= 2.

    leading: degree 2k-1 with -D^(k-1) prod_{j=2}^{k-1}(1-2j) when D != 0;
             degree k with (-1)^(k-1) (k-1)! prod_{j=1}^{k-1}(C - eps/j)
             when D = 0 (degenerate if that product vanishes).
    lower:   valuation n(1-k)+1 with -A^(k-1) (k-2)! prod_{j=1}^{k-2}(n - 1/j)
             when A != 0; valuation n+k-nk with
             -B^(k-1) (k-2)! prod_{j=1}^{k-2}(n - (j+1)/j) when A = 0 and
             B != 0 (degenerate if zero); degenerate when A = B = 0.
    """
    check_sign(eps)
    if params.n < 2:
        raise DimensionTooSmallError("closed-form extremes need n >= 2")
    if k < 2:
        raise ValueError("closed-form extremes are stated for k >= 2")
    if which == LEADING:
        if params.D != 0:
            coeff = -params.D ** (k - 1)
            for j in range(2, k):
                coeff *= 1 - 2 * j
            return ExtremePrediction(LEADING, 2 * k - 1, coeff)
        coeff = Fraction((-1) ** (k - 1) * math.factorial(k - 1))
        for j in range(1, k):
            coeff *= params.C - Fraction(eps, j)
        return ExtremePrediction(LEADING, k, coeff if coeff else None)
    if which == LOWER:
        n = params.n
        if params.A != 0:
            coeff = -params.A ** (k - 1) * math.factorial(k - 2)
            for j in range(1, k - 1):
                coeff *= n - Fraction(1, j)
            return ExtremePrediction(LOWER, n * (1 - k) + 1, coeff)
        if params.B != 0:
            coeff = -params.B ** (k - 1) * math.factorial(k - 2)
            for j in range(1, k - 1):
                coeff *= n - Fraction(j + 1, j)
            return ExtremePrediction(LOWER, n + k - n * k, coeff if coeff else None)
        return ExtremePrediction(LOWER, n + k - n * k, None)
    raise ValueError(f"which must be '{LEADING}' or '{LOWER}', got {which!r}")


# ---------------------------------------------------------------------------
# positivity scan (n >= 2)
# ---------------------------------------------------------------------------

CLEAR = "clear"
OBSTRUCTED = "obstructed"
IDENTICALLY_ZERO_FROM = "identically-zero-from"


@dataclass(frozen=True)
class ObstructionReport:
    """Outcome of a nonnegativity scan of Q_1 .. Q_K over a y-interval.

    The scan finds necessary-condition violations only: ``clear`` means no
    obstruction up to K, never that the metric is resolvable.
    """

    verdict: str
    domain: Interval
    K: int
    k: Optional[int] = None
    witness: Optional[Fraction] = None
    value: Optional[Fraction] = None

    @property
    def obstructed(self) -> bool:
        return self.verdict == OBSTRUCTED

    def to_json_dict(self) -> dict:
        data: dict = {
            "verdict": self.verdict,
            "domain": {
                "lo": fraction_str(self.domain.lo),
                "hi": None if self.domain.hi is None else fraction_str(self.domain.hi),
            },
            "K": self.K,
        }
        if self.k is not None:
            data["k"] = self.k
        if self.witness is not None:
            data["witness"] = fraction_str(self.witness)
            data["value"] = fraction_str(self.value)
        return data


def _check_domain_positive(params: ExtremalParams, domain: Interval) -> None:
    psi = build_psi(params)
    if psi.is_zero:
        raise DomainNotPositiveError("psi vanishes identically")
    mid = (domain.lo + domain.hi) / 2 if domain.hi is not None else domain.lo + 1
    if psi(mid) <= 0 or count_positive_roots_in(psi, domain) > 0:
        raise DomainNotPositiveError(f"psi is not positive throughout {domain}")


def obstruction_scan(
    params: ExtremalParams, eps: int, domain: Interval, K: int
) -> ObstructionReport:
    """Smallest k <= K whose Q_k goes negative somewhere on the domain.

    Requires n >= 2 and a domain inside the positivity region of psi.  When
    some Q_k vanishes identically the remaining entries vanish too and the
    scan reports the truncation index instead.
    """
    check_sign(eps)
    if params.n < 2:
        raise DimensionTooSmallError("the positivity scan applies for n >= 2")
    _check_domain_positive(params, domain)
    seq = q_sequence(params, eps, K)
    for k in range(1, K + 1):
        qk = seq.q(k)
        if qk.is_zero:
            assert all(seq.q(j).is_zero for j in range(k, K + 1))
            return ObstructionReport(IDENTICALLY_ZERO_FROM, domain, K, k=k)
        cert = certify_sign_on_interval(qk, domain)
        if cert.is_negative:
            return ObstructionReport(
                OBSTRUCTED, domain, K, k=k, witness=cert.witness, value=cert.value
            )
    return ObstructionReport(CLEAR, domain, K)


# ---------------------------------------------------------------------------
# determinant test (n = 1)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Dim1Report:
    """Per-order verdicts for the n = 1 determinant positivity test."""

    eps: int
    domain: Interval
    orders: tuple[int, ...]
    certificates: tuple[PositivityCertificate, ...]
    first_violation: Optional[int]

    @property
    def clear(self) -> bool:
        return self.first_violation is None

    def to_json_dict(self) -> dict:
        rows = []
        for order, cert in zip(self.orders, self.certificates):
            row: dict = {"I": order, "verdict": cert.verdict}
            if cert.witness is not None:
                row["witness"] = fraction_str(cert.witness)
                row["value"] = fraction_str(cert.value)
            rows.append(row)
        return {
            "eps": self.eps,
            "orders": rows,
            "first_violation": self.first_violation,
        }


def _falling_factorial(beta: int, i: int) -> int:
    """beta! / (beta - i)!, zero when i > beta."""
    if i > beta:
        return 0
    out = 1
    for j in range(beta - i + 1, beta + 1):
        out *= j
    return out


def _hankel_matrix(seq: QSequence, order: int) -> list[list[LaurentPoly]]:
    matrix = []
    for alpha in range(1, order + 1):
        row = []
        for beta in range(1, order + 1):
            entry = LaurentPoly.zero()
            for i in range(alpha + 1):
                ff = _falling_factorial(beta, i)
                if ff:
                    entry = entry + math.comb(alpha, i) * ff * seq.q(alpha + beta - i)
            row.append(entry)
        matrix.append(row)
    return matrix


def laurent_det(matrix: list[list[LaurentPoly]]) -> LaurentPoly:
    """Determinant over the Laurent ring by cofactor expansion (small orders)."""
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    det = LaurentPoly.zero()
    for col in range(size):
        pivot = matrix[0][col]
        if pivot.is_zero:
            continue
        minor = [[row[c] for c in range(size) if c != col] for row in matrix[1:]]
        term = pivot * laurent_det(minor)
        det = det + term if col % 2 == 0 else det - term
    return det


def det_test_dim1(
    params: ExtremalParams, eps: int, Imax: int, domain: Interval
) -> Dim1Report:
    """Certify sign(eps)^I * det(M_I) >= 0 on the domain for each I <= Imax.

    M_I is the I x I matrix with entries
    sum_i binom(alpha, i) * beta!/(beta-i)! * Q_(alpha+beta-i), built from the
    mixed r-derivatives of the resolvability generating function in complex
    dimension one.
    """
    check_sign(eps)
    if params.n != 1:
        raise WrongDimensionError("the determinant test applies only for n = 1")
    if Imax < 1:
        raise ValueError("Imax must be >= 1")
    _check_domain_positive(params, domain)
    seq = q_sequence(params, eps, 2 * Imax)
    certificates = []
    first_violation = None
    for order in range(1, Imax + 1):
        det = laurent_det(_hankel_matrix(seq, order))
        signed = det if eps >= 0 or order % 2 == 0 else -det
        cert = certify_sign_on_interval(signed, domain)
        certificates.append(cert)
        if cert.is_negative and first_violation is None:
            first_violation = order
    return Dim1Report(
        eps=eps,
        domain=domain,
        orders=tuple(range(1, Imax + 1)),
        certificates=tuple(certificates),
        first_violation=first_violation,
    )
