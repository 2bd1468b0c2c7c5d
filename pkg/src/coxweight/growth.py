"""Growth series of Coxeter groups: exact rational functions, convergence
regions, and classification of numeric multiparameters.

The reciprocal growth series is assembled from the alternating sum of
reciprocal spherical-subgroup polynomials, using the finite-subgroup
palindrome identity W_T(t) = t_{w_T} W_T(1/t) to clear the inverted
variables.  Ratios of the form W^T(t)/W(t) use the spherical-side
recursion as the production path and are cross-checked against the
complementary recursion through subsystem series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import UnsupportedOperationError
from .polynomials import Polynomial, RationalFunction
from .roots import isolate_positive_roots
from .words import CoxeterSystem


def _sign(T):
    return -1 if len(T) % 2 else 1


def _sum_fractions(terms):
    """Sum (numerator, denominator) polynomial pairs, grouping equal
    denominators first; spherical polynomials repeat heavily."""
    by_denominator = {}
    for num, den in terms:
        if den in by_denominator:
            by_denominator[den] = by_denominator[den] + num
        else:
            by_denominator[den] = num
    total = RationalFunction.constant(0)
    for den, num in by_denominator.items():
        total = total + RationalFunction(num, den)
    return total


class GrowthData:
    """Exact growth data of one system: spherical polynomials and 1/W."""

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self.spherical_polys = {}
        self.longest_monomials = {}
        poset = system.spherical_subsets()
        for T in poset:
            poly, top = _spherical_poly_and_top(system, T)
            self.spherical_polys[T] = poly
            self.longest_monomials[T] = top
        self.inverse_series = _sum_fractions(
            (_sign(T) * self.longest_monomials[T], self.spherical_polys[T])
            for T in poset)
        self._wt_cache = {}

    @property
    def finite(self):
        return frozenset(self.system.generators) in self.spherical_polys

    def growth_series(self) -> RationalFunction:
        return 1 / self.inverse_series

    def series_coefficients(self, order):
        return self.growth_series().series_coefficients(order)


def _spherical_poly_and_top(system, T):
    """(W_T(t), t_{w_T}) by exhaustive enumeration of the finite W_T."""
    return _enumerated_poly(system.subsystem(T))


@lru_cache(maxsize=None)
def _enumerated_poly(sub: CoxeterSystem):
    ball = sub.enumerate_all()
    total = Polynomial.constant(0)
    top = None
    for level in ball.elements:
        for e in level:
            mono = Polynomial.monomial(sub.monomial_exponents(e))
            total = total + mono
            top = mono
    return total, top


@lru_cache(maxsize=None)
def growth_data(system: CoxeterSystem) -> GrowthData:
    return GrowthData(system)


def spherical_growth_poly(system, T) -> Polynomial:
    """W_T(t) for spherical T (sum of class monomials over W_T)."""
    data = growth_data(system)
    key = frozenset(T)
    try:
        return data.spherical_polys[key]
    except KeyError:
        from .errors import NotSphericalError
        raise NotSphericalError(
            f"{sorted(key)} does not generate a finite subgroup") from None


def inverse_growth_series(system) -> RationalFunction:
    """1/W(t) as an exact rational function."""
    return growth_data(system).inverse_series


def growth_series(system) -> RationalFunction:
    return growth_data(system).growth_series()


def cofactor_series(system, T) -> RationalFunction:
    """X_T(t) = W(t) / W_T(t): the minimal-coset-representative series.

    W_T's series comes from the subsystem recursion, so T may generate an
    infinite subgroup.
    """
    sub_inverse = inverse_growth_series(system.subsystem(T))
    return sub_inverse / inverse_growth_series(system)


def wT_over_W(system, T, cross_check=True) -> RationalFunction:
    """W^T(t)/W(t) for spherical T, where W^T = {w : In(w) = T}.

    Production path: the alternating sum of reciprocal spherical
    polynomials over supersets of T, evaluated via the palindrome
    identity.  Optionally cross-checked against the complementary
    recursion through the series of the subsystems on S - T'.
    """
    data = growth_data(system)
    key = frozenset(T)
    cached = data._wt_cache.get(key)
    if cached is not None:
        return cached
    if key not in data.spherical_polys:
        from .errors import NotSphericalError
        raise NotSphericalError(f"{sorted(key)} is not spherical")
    # 1/W_U(1/t) = t_{w_U} / W_U(t) clears every inverted variable
    total = _sum_fractions(
        (_sign(U - key) * data.longest_monomials[U],
         data.spherical_polys[U])
        for U in data.spherical_polys if key <= U)
    if cross_check:
        alt = RationalFunction.constant(0)
        gens = set(system.generators)
        for Tp in _subsets(key):
            sub = system.subsystem(gens - set(Tp))
            alt = alt + _sign(key - Tp) * inverse_growth_series(sub)
        assert alt == total, (
            "the two recursions for W^T/W disagree; "
            f"T={sorted(key)} on {system!r}")
    data._wt_cache[key] = total
    return total


def _subsets(s):
    items = sorted(s)
    for mask in range(1 << len(items)):
        yield frozenset(items[i] for i in range(len(items))
                        if mask >> i & 1)


# -- numeric evaluation ---------------------------------------------------------


def check_q(system, q):
    """Validate a multiparameter map class-label -> positive Fraction."""
    out = {}
    for label in system.class_labels:
        if label not in q:
            raise ValueError(f"missing parameter for class {label!r}")
        value = Fraction(q[label])
        if value <= 0:
            raise ValueError(f"parameter {label!r} must be positive")
        out[label] = value
    return out


def invert_q(q):
    return {label: 1 / value for label, value in q.items()}


def evaluate_series(rf: RationalFunction, q) -> Fraction:
    assignment = {label: Fraction(v) for label, v in q.items()}
    for name in rf.variables():
        if name not in assignment:
            raise ValueError(f"no value for variable {name!r}")
    return rf.evaluate(assignment)


def spherical_poly_value(system, T, q) -> Fraction:
    return spherical_growth_poly(system, T).evaluate(q)


# -- radius of convergence and regions --------------------------------------------


@dataclass
class RegionClass:
    """Where a positive multiparameter sits relative to the convergence
    region of the growth series and its reciprocal image."""

    tag: str  # interior_R | boundary_R | interior_Rinv | boundary_Rinv
              # | intermediate | all
    witness: dict

    def formula_side(self):
        if self.tag in ("interior_R", "boundary_R", "all"):
            return "R"
        if self.tag in ("interior_Rinv", "boundary_Rinv"):
            return "Rinv"
        return None


def radius_of_convergence(system):
    """Smallest positive root of the numerator of 1/W, or None if W is finite.

    Only defined for single-class systems (a genuinely one-variable
    series); multivariate systems must use classify_region instead.
    """
    if len(system.class_labels) != 1:
        raise UnsupportedOperationError(
            "radius of convergence needs a single parameter class; "
            "use classify_region for multiparameter systems")
    data = growth_data(system)
    if data.finite:
        return None
    numerator = data.inverse_series.numerator
    roots = isolate_positive_roots(numerator)
    assert roots, "infinite W must have a positive numerator root"
    return roots[0]


def _ray_polynomial(system, q):
    """The univariate polynomial u -> numerator(1/W)(u * q)."""
    numerator = inverse_growth_series(system).numerator
    u = Polynomial.variable("u")
    assignment = {label: Fraction(value) * u for label, value in q.items()}
    specialized = numerator.substitute(assignment)
    if isinstance(specialized, Fraction):
        specialized = Polynomial.constant(specialized)
    return specialized


def _ray_status(system, q):
    """(roots strictly inside (0,1), root exactly at 1?) along u -> u*q."""
    ray = _ray_polynomial(system, q)
    at_one = ray.evaluate({"u": Fraction(1)}) == 0
    roots = isolate_positive_roots(ray)
    inside = 0
    for r in roots:
        if r.is_exact:
            if r.value < 1:
                inside += 1
            continue
        # resolve the bracket to one side of 1; the only bracket allowed
        # to keep straddling is the one isolating an exact root at 1
        while r.low < 1 and r.high >= 1:
            if at_one and r.low < 1 < r.high:
                break
            r.refine(r.width() / 4)
        if r.high < 1:
            inside += 1
    return inside, at_one


def classify_region(system, q) -> RegionClass:
    """Classify a positive rational multiparameter against the regions."""
    q = check_q(system, q)
    data = growth_data(system)
    if data.finite:
        return RegionClass("all", {"finite": True, "q": dict(q)})
    inside, at_one = _ray_status(system, q)
    if inside == 0:
        witness = {"q": dict(q), "roots_in_unit_interval": 0}
        if at_one:
            return RegionClass("boundary_R", witness)
        return RegionClass("interior_R", witness)
    qinv = invert_q(q)
    inside_inv, at_one_inv = _ray_status(system, qinv)
    if inside_inv == 0:
        witness = {"q": dict(q), "roots_in_unit_interval_for_inverse": 0}
        if at_one_inv:
            return RegionClass("boundary_Rinv", witness)
        return RegionClass("interior_Rinv", witness)
    return RegionClass(
        "intermediate",
        {"q": dict(q),
         "roots_in_unit_interval": inside,
         "roots_in_unit_interval_for_inverse": inside_inv})


def oracle_histogram_matches(system, order) -> bool:
    """Growth coefficients against the ball census, monomial by monomial."""
    series = growth_data(system).series_coefficients(order)
    counted = {}
    ball = system.enumerate_ball(order)
    for level in ball.elements:
        for e in level:
            exps = system.monomial_exponents(e)
            key = tuple(sorted(exps.items()))
            counted[key] = counted.get(key, 0) + 1
    names = growth_data(system).growth_series().variables()
    series_keyed = {}
    for e, c in series.items():
        key = tuple(sorted((n, p) for n, p in zip(names, e) if p))
        series_keyed[key] = c
    return counted == series_keyed
