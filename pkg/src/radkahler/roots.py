"""Real-root isolation and exact sign certification over (0, +inf).

Laurent polynomials are reduced to ordinary polynomials by clearing the
valuation, i.e. multiplying by ``y**(-valuation)``.  Powers of y are strictly
positive on y > 0, so this preserves signs and root sets on the half line,
which is the only domain the radial analysis ever needs.

Root counting uses Sturm chains with exact rational arithmetic; isolating
brackets are refined by sign bisection on the squarefree part.  Every verdict
returned here is exact: a negativity report always carries a rational witness
together with the exact value at that witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ZeroPolynomialError
from .laurent import LaurentPoly, as_fraction, fraction_str

#: default isolating-bracket width, refinable by callers
DEFAULT_ISOLATION_WIDTH = Fraction(1, 2**20)

#: largest integer we are willing to factor when hunting rational roots
_FACTOR_CAP = 10**12


# ---------------------------------------------------------------------------
# intervals and certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """Open interval (lo, hi); ``hi=None`` means +infinity."""

    lo: Fraction
    hi: Optional[Fraction]

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", as_fraction(self.hi))
            if self.lo >= self.hi:
                raise ValueError(f"empty interval ({self.lo}, {self.hi})")

    def contains(self, x: Fraction) -> bool:
        return x > self.lo and (self.hi is None or x < self.hi)

    def __str__(self) -> str:
        hi = "inf" if self.hi is None else fraction_str(self.hi)
        return f"({fraction_str(self.lo)}, {hi})"


NONNEGATIVE = "nonnegative"
NEGATIVE_WITNESS = "negative-witness"
IDENTICALLY_ZERO = "identically-zero"


@dataclass(frozen=True)
class PositivityCertificate:
    """Exact sign verdict for a polynomial on an open interval.

    ``negative-witness`` verdicts carry a rational point strictly inside the
    queried interval and the exact (strictly negative) value there.
    """

    verdict: str
    witness: Optional[Fraction] = None
    value: Optional[Fraction] = None

    @classmethod
    def nonnegative(cls) -> "PositivityCertificate":
        return cls(NONNEGATIVE)

    @classmethod
    def negative(cls, witness: Fraction, value: Fraction) -> "PositivityCertificate":
        if value >= 0:
            raise ValueError("witness value must be strictly negative")
        return cls(NEGATIVE_WITNESS, witness, value)

    @classmethod
    def identically_zero(cls) -> "PositivityCertificate":
        return cls(IDENTICALLY_ZERO)

    @property
    def is_nonnegative(self) -> bool:
        return self.verdict == NONNEGATIVE

    @property
    def is_negative(self) -> bool:
        return self.verdict == NEGATIVE_WITNESS


@dataclass(frozen=True)
class PositiveRoot:
    """Isolating bracket (lo, hi) for one real root in (0, +inf).

    ``exact`` is set when the root is a known rational, in which case it lies
    strictly inside the bracket.  Bracket endpoints are never roots.
    """

    lo: Fraction
    hi: Fraction
    exact: Optional[Fraction] = None
    _poly: Optional[LaurentPoly] = field(default=None, compare=False, repr=False)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def refined(self, width: Fraction) -> "PositiveRoot":
        """Shrink the bracket to at most ``width`` by sign bisection."""
        width = as_fraction(width)
        if width <= 0:
            raise ValueError("width must be positive")
        if self.exact is not None:
            half = min(width, self.width) / 2
            lo = max(self.lo, self.exact - half)
            hi = min(self.hi, self.exact + half)
            return PositiveRoot(lo, hi, self.exact, self._poly)
        lo, hi = self.lo, self.hi
        poly = self._poly
        sign_lo = 1 if poly(lo) > 0 else -1
        while hi - lo > width:
            mid = (lo + hi) / 2
            v = poly(mid)
            if v == 0:
                half = (hi - lo) / 4
                return PositiveRoot(mid - half, mid + half, mid, poly).refined(width)
            if (1 if v > 0 else -1) == sign_lo:
                lo = mid
            else:
                hi = mid
        return PositiveRoot(lo, hi, None, poly)

    def separated_from(self, point: Fraction) -> "PositiveRoot":
        """Refine until ``point`` lies strictly outside the closed bracket.

        The bracketed root must differ from ``point``; bisection around the
        root eventually pushes both endpoints past any other value.
        """
        root = self
        while True:
            if root.exact is not None:
                if root.exact == point:
                    raise ValueError("cannot separate a bracket from its own root")
                half = min(abs(root.exact - point) / 2, root.width / 2)
                lo = max(root.lo, root.exact - half)
                hi = min(root.hi, root.exact + half)
                root = PositiveRoot(lo, hi, root.exact, root._poly)
            if root.hi < point or root.lo > point:
                return root
            root = root.refined(root.width / 4)

    def is_above(self, point: Fraction) -> bool:
        """True if the bracketed root is strictly greater than ``point``."""
        if self.exact is not None:
            return self.exact > point
        r = self.separated_from(point) if self.lo <= point <= self.hi else self
        return r.lo > point


# ---------------------------------------------------------------------------
# ordinary-polynomial helpers (valuation >= 0)
# ---------------------------------------------------------------------------


def _require_ordinary(p: LaurentPoly) -> None:
    if not p.is_zero and p.valuation < 0:
        raise ValueError("ordinary polynomial expected (no negative exponents)")


def poly_divmod(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Exact division with remainder for ordinary polynomials."""
    _require_ordinary(num)
    _require_ordinary(den)
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    quot = LaurentPoly.zero()
    rem = num
    d_deg = den.degree
    d_lead = den.leading_coefficient
    while not rem.is_zero and rem.degree >= d_deg:
        shift = rem.degree - d_deg
        factor = rem.leading_coefficient / d_lead
        term = LaurentPoly.monomial(shift, factor)
        quot = quot + term
        rem = rem - term * den
    return quot, rem


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic greatest common divisor of two ordinary polynomials."""
    _require_ordinary(a)
    _require_ordinary(b)
    while not b.is_zero:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a.is_zero:
        return a
    return a / a.leading_coefficient


def squarefree_part(p: LaurentPoly) -> LaurentPoly:
    """p divided by gcd(p, p'): same roots, all simple."""
    _require_ordinary(p)
    if p.is_zero:
        raise ZeroPolynomialError("squarefree part of the zero polynomial")
    g = poly_gcd(p, p.derivative())
    if g.is_zero or g.degree == 0:
        return p
    q, r = poly_divmod(p, g)
    assert r.is_zero
    return q


def sturm_chain(p: LaurentPoly) -> list[LaurentPoly]:
    """Canonical signed-remainder chain p, p', -rem(...), ..."""
    _require_ordinary(p)
    chain = [p, p.derivative()]
    while not chain[-1].is_zero and chain[-1].degree > 0:
        _, r = poly_divmod(chain[-2], chain[-1])
        if r.is_zero:
            break
        chain.append(-r)
    if chain[-1].is_zero:
        chain.pop()
    return chain


def _sign_variations(values: Sequence[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_variations(chain: Sequence[LaurentPoly], x: Fraction) -> int:
    return _sign_variations([q(x) for q in chain])


def count_roots_halfopen(chain: Sequence[LaurentPoly], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b]; endpoints must not be roots of chain[0]."""
    return sturm_variations(chain, a) - sturm_variations(chain, b)


def cauchy_root_bound(p: LaurentPoly) -> Fraction:
    """Strict bound: every real root of ``p`` has absolute value < the bound."""
    _require_ordinary(p)
    if p.is_zero:
        raise ZeroPolynomialError("root bound of the zero polynomial")
    lead = abs(p.leading_coefficient)
    top = p.degree
    worst = max((abs(c) for e, c in p.terms() if e != top), default=Fraction(0))
    return 1 + worst / lead


# ---------------------------------------------------------------------------
# rational-root extraction
# ---------------------------------------------------------------------------


def _factorize(value: int) -> Optional[dict[int, int]]:
    """Trial-division factorization, or None when the value exceeds the cap."""
    value = abs(value)
    if value == 0 or value > _FACTOR_CAP:
        return None
    factors: dict[int, int] = {}
    for p in (2, 3):
        while value % p == 0:
            factors[p] = factors.get(p, 0) + 1
            value //= p
    f = 5
    while f * f <= value:
        while value % f == 0:
            factors[f] = factors.get(f, 0) + 1
            value //= f
        f += 2 if f % 6 == 1 else 4
    if value > 1:
        factors[value] = factors.get(value, 0) + 1
    return factors


def _divisors(factors: dict[int, int]) -> list[int]:
    divisors = [1]
    for prime, mult in factors.items():
        divisors = [d * prime**k for d in divisors for k in range(mult + 1)]
    return divisors


def _rational_roots(p: LaurentPoly) -> Optional[list[Fraction]]:
    """All rational roots of an ordinary polynomial, or None if infeasible.

    Rational-root theorem on the primitive integer form; gives up (None) when
    the boundary coefficients are too large to factor quickly.
    """
    _require_ordinary(p)
    if p.is_zero:
        raise ZeroPolynomialError("rational roots of the zero polynomial")
    if p.degree == 0:
        return []
    denom_lcm = 1
    for _, c in p.terms():
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = {e: int(c * denom_lcm) for e, c in p.terms()}
    content = 0
    for v in ints.values():
        content = math.gcd(content, abs(v))
    val = min(ints)
    ints = {e - val: v // content for e, v in ints.items()}
    a0 = ints[0]
    ad = ints[max(ints)]
    f0 = _factorize(a0)
    fd = _factorize(ad)
    if f0 is None or fd is None:
        return None
    roots = set()
    for num in _divisors(f0):
        for den in _divisors(fd):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and p(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _deflate(p: LaurentPoly, root: Fraction) -> LaurentPoly:
    """Divide out every (y - root) factor."""
    linear = LaurentPoly({1: 1, 0: -root})
    while p(root) == 0:
        p, r = poly_divmod(p, linear)
        assert r.is_zero
    return p


# ---------------------------------------------------------------------------
# isolation
# ---------------------------------------------------------------------------


def isolate_positive_roots(
    p: LaurentPoly, width: Fraction = DEFAULT_ISOLATION_WIDTH
) -> list[PositiveRoot]:
    """Disjoint isolating brackets for every root of ``p`` in (0, +inf).

    Rational roots are reported with the ``exact`` field set.  Brackets are
    sorted increasingly, pairwise disjoint, and each contains exactly one
    root of ``p``.
    """
    if p.is_zero:
        raise ZeroPolynomialError("cannot isolate roots of the zero polynomial")
    width = as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    q = p.shifted(-p.valuation)
    if q.degree == 0:
        return []
    s = squarefree_part(q)

    exact_roots: list[Fraction] = []
    known = _rational_roots(s)
    if known is not None:
        exact_roots.extend(r for r in known if r > 0)
        for r in known:
            s = _deflate(s, r)

    brackets = _isolate_irrational(s, exact_roots, width)
    roots = list(brackets)
    for r in sorted(exact_roots):
        gap = width
        for other in exact_roots:
            if other != r:
                gap = min(gap, abs(other - r) / 2)
        for b in brackets:
            gap = min(gap, b.lo - r if b.lo > r else r - b.hi)
        assert gap > 0, "exact root not separated from its neighbours"
        half = min(width, gap) / 2
        roots.append(PositiveRoot(max(r - half, r / 2), r + half, r, None))
    roots.sort(key=lambda root: root.lo)
    for left, right in zip(roots, roots[1:]):
        assert left.hi <= right.lo, "isolating brackets must be disjoint"
    return roots


def _isolate_irrational(
    s: LaurentPoly, exact_roots: list[Fraction], width: Fraction
) -> list[PositiveRoot]:
    """Isolate the positive roots of squarefree ``s``, deflating stray rationals.

    ``exact_roots`` collects any rational root discovered mid-bisection (only
    possible when the rational pre-pass was infeasible).
    """
    results: list[PositiveRoot] = []
    if s.is_zero or s.degree == 0:
        return results
    while True:
        restart = False
        chain = sturm_chain(s)
        bound = cauchy_root_bound(s)
        zero = Fraction(0)
        total = count_roots_halfopen(chain, zero, bound)
        if total == 0:
            return results
        work = [(zero, bound, total)]
        found: list[tuple[Fraction, Fraction]] = []
        while work:
            a, b, count = work.pop()
            if count == 0:
                continue
            if count == 1:
                found.append((a, b))
                continue
            mid = (a + b) / 2
            if s(mid) == 0:
                exact_roots.append(mid)
                s = _deflate(s, mid)
                restart = True
                break
            left = count_roots_halfopen(chain, a, mid)
            work.append((a, mid, left))
            work.append((mid, b, count - left))
        if restart:
            results = []
            continue
        for a, b in found:
            root = PositiveRoot(a, b, None, s).refined(width)
            for r in exact_roots:
                if root.exact is None and root.lo <= r <= root.hi:
                    root = root.separated_from(r)
            results.append(root)
        return results


# ---------------------------------------------------------------------------
# sign certification
# ---------------------------------------------------------------------------


def certify_sign_on_interval(p: LaurentPoly, interval: Interval) -> PositivityCertificate:
    """Exact verdict on the sign of ``p`` over an open subinterval of [0, +inf).

    Clears the valuation, isolates the roots inside the interval, and samples
    the sign once per root gap; between consecutive roots the sign of a
    polynomial is constant, so finitely many exact evaluations decide.
    """
    if interval.lo < 0:
        raise ValueError("interval must lie in [0, +inf)")
    if p.is_zero:
        return PositivityCertificate.identically_zero()

    q = p.shifted(-p.valuation)
    if q.degree == 0:
        if q.trailing_coefficient < 0:
            w = _point_inside(interval)
            return PositivityCertificate.negative(w, p(w))
        return PositivityCertificate.nonnegative()

    if interval.hi is None:
        bound = max(cauchy_root_bound(q), interval.lo) + 1
        if q.leading_coefficient < 0:
            return PositivityCertificate.negative(bound, p(bound))
        if interval.lo + 1 >= bound:
            # no roots at or beyond lo; the sign is the (positive) leading sign
            return PositivityCertificate.nonnegative()
        hi_eff = bound
    else:
        hi_eff = interval.hi

    lo = interval.lo
    roots = [r for r in isolate_positive_roots(q) if _root_in_open(r, lo, hi_eff)]
    for sample in _gap_samples(lo, hi_eff, roots):
        value = p(sample)
        if value < 0:
            return PositivityCertificate.negative(sample, value)
        assert value != 0, "gap sample unexpectedly hit a root"
    return PositivityCertificate.nonnegative()


def _point_inside(interval: Interval) -> Fraction:
    if interval.hi is None:
        return interval.lo + 1
    return (interval.lo + interval.hi) / 2


def _root_in_open(root: PositiveRoot, lo: Fraction, hi: Fraction) -> bool:
    """True if the isolated root lies in (lo, hi); refines straddling brackets."""
    if root.exact is not None:
        return lo < root.exact < hi
    r = root
    for endpoint in (lo, hi):
        if r.exact is None and r.lo <= endpoint <= r.hi:
            r = r.separated_from(endpoint)
    if r.exact is not None:
        return lo < r.exact < hi
    return r.lo > lo and r.hi < hi


def _gap_samples(lo: Fraction, hi: Fraction, roots: list[PositiveRoot]) -> list[Fraction]:
    """One rational sample strictly between consecutive roots (and the interval ends)."""
    edges: list[tuple[Fraction, Fraction]] = [(lo, lo)]
    for root in sorted(roots, key=lambda r: r.lo):
        r = root
        for endpoint in (lo, hi):
            if r.exact is None and r.lo <= endpoint <= r.hi:
                r = r.separated_from(endpoint)
        if r.exact is not None:
            edges.append((r.exact, r.exact))
        else:
            edges.append((r.lo, r.hi))
    edges.append((hi, hi))
    samples = []
    for (_, left_hi), (right_lo, _) in zip(edges, edges[1:]):
        if left_hi < right_lo:
            samples.append((left_hi + right_lo) / 2)
        else:
            # two isolating brackets sharing a (non-root) endpoint
            assert left_hi == right_lo and left_hi not in (lo, hi)
            samples.append(left_hi)
    return samples


def count_positive_roots_in(p: LaurentPoly, interval: Interval) -> int:
    """Number of distinct roots of ``p`` strictly inside the interval."""
    if p.is_zero:
        raise ZeroPolynomialError("root count of the zero polynomial")
    q = p.shifted(-p.valuation)
    if q.degree == 0:
        return 0
    hi = interval.hi
    if hi is None:
        hi = max(cauchy_root_bound(q), interval.lo) + 1
    return sum(1 for r in isolate_positive_roots(q) if _root_in_open(r, interval.lo, hi))


def certify_strictly_negative_on_right(
    p: LaurentPoly, y0: Fraction
) -> tuple[Fraction, PositivityCertificate]:
    """Certify p < 0 on (y0, y0 + delta) for some rational delta > 0.

    Starts from an eighth of the gap to the next root of ``p`` above y0
    (1 when there is none) and halves until the window certifies.  Raises
    ``ValueError`` when p is in fact positive immediately right of y0.
    """
    if p.is_zero:
        raise ZeroPolynomialError("the zero polynomial is nowhere negative")
    y0 = as_fraction(y0)
    q = p.shifted(-p.valuation)
    delta = Fraction(1)
    if q.degree > 0:
        above = [r for r in isolate_positive_roots(q) if r.is_above(y0)]
        if above:
            first = min(_lower_edge(r, y0) for r in above)
            delta = (first - y0) / 8
    while True:
        window = Interval(y0, y0 + delta)
        if count_positive_roots_in(p, window) == 0:
            cert = certify_sign_on_interval(-p, window)
            if cert.is_nonnegative:
                return delta, cert
            raise ValueError(f"polynomial is positive on a right neighbourhood of {y0}")
        delta = delta / 2


def _lower_edge(root: PositiveRoot, y0: Fraction) -> Fraction:
    if root.exact is not None:
        return root.exact
    r = root
    if r.lo <= y0 <= r.hi:
        r = r.separated_from(y0)
    if r.exact is not None:
        return r.exact
    return r.lo


def refine_isolation(p: LaurentPoly, width: Fraction) -> list[PositiveRoot]:
    """Isolate and refine all positive roots of ``p`` to brackets of ``width``."""
    return [r.refined(width) for r in isolate_positive_roots(p, width)]
