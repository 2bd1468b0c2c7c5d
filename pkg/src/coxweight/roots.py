"""Exact isolation of positive real roots of univariate rational polynomials.

Uses Sturm chains for counting, Yun's algorithm for multiplicities and
plain bisection for refinement.  All arithmetic is over Fraction; decimal
output happens only at the presentation layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .polynomials import Polynomial


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_eval(coeffs, x):
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _rem(a, b):
    a = list(a)
    while len(a) >= len(b):
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a = _strip(a)
        if not a:
            break
    return a


def _gcd(a, b):
    a, b = _strip(a), _strip(b)
    while b:
        a, b = b, _rem(a, b)
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def _exact_div(a, b):
    """Quotient of a by b, assuming exact divisibility."""
    a = _strip(a)
    b = _strip(b)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a = _strip(a)
    assert not a, "division was not exact"
    return q


def _sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _strip([x - y for x, y in zip(a, b)])


def squarefree_decomposition(coeffs):
    """Yun's algorithm: list of (squarefree factor, multiplicity)."""
    p = _strip(coeffs)
    if len(p) <= 1:
        return []
    lead = p[-1]
    p = [c / lead for c in p]
    dp = derivative(p)
    a = _gcd(p, dp)
    b = _exact_div(p, a)
    d = _sub(_exact_div(dp, a), derivative(b))
    out = []
    i = 1
    while len(b) > 1:
        a = _gcd(b, d) if d else list(b)
        if len(a) > 1:
            out.append((a, i))
        b = _exact_div(b, a)
        d = _sub(_exact_div(d, a) if d else [], derivative(b))
        i += 1
    return out


def sturm_chain(coeffs):
    chain = [_strip(coeffs), _strip(derivative(coeffs))]
    while chain[-1]:
        r = _rem(chain[-2], chain[-1])
        chain.append([-c for c in r])
    chain.pop()
    return chain


def _sign_variations(chain, x):
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_half_open(chain, a, b):
    """Number of distinct roots in (a, b] of the squarefree chain head."""
    return _sign_variations(chain, a) - _sign_variations(chain, b)


def cauchy_bound(coeffs):
    coeffs = _strip(coeffs)
    lead = abs(coeffs[-1])
    return Fraction(1) + max(abs(c) for c in coeffs) / lead


_CANDIDATE_LIMIT = 10 ** 7


def _rational_root_candidates(coeffs):
    """Rational roots found by clearing denominators and testing divisors.

    Skipped (returns an empty set) when the cleared coefficients are too
    large for divisor enumeration; roots then stay bracketed by intervals,
    which every consumer handles.
    """
    coeffs = _strip(coeffs)
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // _int_gcd(lcm, c.denominator)
        if lcm > _CANDIDATE_LIMIT:
            return set()
    ints = [int(c * lcm) for c in coeffs]
    shift = 0
    while ints and ints[0] == 0:
        ints.pop(0)
        shift += 1
    if not ints:
        return set()
    if abs(ints[0]) > _CANDIDATE_LIMIT or abs(ints[-1]) > _CANDIDATE_LIMIT:
        return set()
    roots = set()
    for p in _divisors(abs(ints[0])):
        for q in _divisors(abs(ints[-1])):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if poly_eval(coeffs, cand) == 0:
                    roots.add(cand)
    if shift:
        roots.add(Fraction(0))
    return roots


def _int_gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


@dataclass
class IsolatedRoot:
    """One distinct positive real root, either exact or bracketed.

    ``low == high`` means the root is the exact rational ``low``.
    Otherwise the bracketing squarefree factor changes sign on
    [low, high] and the interval contains exactly one root of the
    original polynomial.
    """

    low: Fraction
    high: Fraction
    multiplicity: int
    factor: list = field(repr=False, default_factory=list)

    @property
    def is_exact(self):
        return self.low == self.high

    @property
    def value(self):
        if not self.is_exact:
            raise ValueError("root is not known exactly")
        return self.low

    def width(self):
        return self.high - self.low

    def midpoint(self):
        return (self.low + self.high) / 2

    def refine(self, width):
        """Shrink the bracket until it is no wider than ``width``."""
        if self.is_exact:
            return self
        lo, hi = self.low, self.high
        flo = poly_eval(self.factor, lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            fmid = poly_eval(self.factor, mid)
            if fmid == 0:
                self.low = self.high = mid
                return self
            if (flo > 0) != (fmid > 0):
                hi = mid
            else:
                lo, flo = mid, fmid
        self.low, self.high = lo, hi
        return self

    def contains(self, x):
        return self.low <= x <= self.high

    def decimal(self, digits=6):
        self.refine(Fraction(1, 10 ** (digits + 1)))
        mid = self.value if self.is_exact else self.midpoint()
        return _format_decimal(mid, digits)


def _format_decimal(x, digits):
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = int(round(x * 10 ** digits))
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"


def _isolate_squarefree_positive(factor):
    """Disjoint sign-change brackets (or exact points) for positive roots."""
    chain = sturm_chain(factor)
    bound = cauchy_bound(factor)
    exact = {r for r in _rational_root_candidates(factor) if r > 0}
    results = []
    stack = [(Fraction(0), bound)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots_half_open(chain, lo, hi)
        if n == 0:
            continue
        if n == 1:
            hit = next((r for r in exact if lo < r <= hi), None)
            if hit is not None:
                results.append((hit, hit))
                continue
            # shrink until both endpoints are off-root and signs differ;
            # a midpoint that is itself the root is reported exactly
            exact_hit = None
            while True:
                flo = poly_eval(factor, lo)
                fhi = poly_eval(factor, hi)
                if flo != 0 and fhi != 0 and (flo > 0) != (fhi > 0):
                    break
                mid = (lo + hi) / 2
                if poly_eval(factor, mid) == 0:
                    exact_hit = mid
                    break
                if count_roots_half_open(chain, lo, mid) == 1:
                    hi = mid
                else:
                    lo = mid
            if exact_hit is not None:
                results.append((exact_hit, exact_hit))
            else:
                results.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(results)


def isolate_positive_roots(poly):
    """All distinct positive real roots of ``poly`` with multiplicities.

    ``poly`` may be a univariate Polynomial or a dense coefficient list.
    Roots come back sorted increasingly with pairwise disjoint intervals.
    """
    if isinstance(poly, Polynomial):
        coeffs = poly.univariate_coefficients()
    else:
        coeffs = [Fraction(c) for c in poly]
    coeffs = _strip(coeffs)
    if not coeffs:
        raise ValueError("zero polynomial has every number as a root")
    roots = []
    for factor, multiplicity in squarefree_decomposition(coeffs):
        for lo, hi in _isolate_squarefree_positive(factor):
            roots.append(IsolatedRoot(lo, hi, multiplicity, factor))
    # disjointness across factors: brackets of distinct roots may overlap
    while True:
        roots.sort(key=lambda r: (r.low, r.high))
        overlapping = [(a, b) for a, b in zip(roots, roots[1:])
                       if a.high > b.low]
        if not overlapping:
            break
        for a, b in overlapping:
            for r in (a, b):
                if not r.is_exact:
                    r.refine(r.width() / 2)
    return roots


def count_distinct_positive_roots(poly):
    return len(isolate_positive_roots(poly))


def smallest_positive_root(poly):
    roots = isolate_positive_roots(poly)
    return roots[0] if roots else None
