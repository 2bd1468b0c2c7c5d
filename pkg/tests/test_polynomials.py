import random
from fractions import Fraction

import pytest

from coxweight.polynomials import (
    PoleError,
    Polynomial,
    RationalFunction,
    poly_exact_div,
    poly_gcd,
)


def P(text_vars, terms):
    return Polynomial(tuple(sorted(text_vars)), terms)


def var(name):
    return Polynomial.variable(name)


def test_basic_construction_and_pruning():
    t = var("t")
    p = 1 + t - t
    assert p.is_constant() and p.constant_value() == 1
    assert p.variables == ()


def test_canonical_text():
    t = var("t")
    p = (1 - t) * (1 - 8 * t + t * t)
    assert p.to_text() == "1 - 9*t + 9*t^2 - t^3"
    t1, t2 = var("t1"), var("t2")
    q = 1 - t1 * t2
    assert q.to_text() == "1 - t1*t2"


def test_exact_division_and_gcd_univariate():
    t = var("t")
    a = (1 + t) ** 3 * (1 - t)
    b = (1 + t) ** 2
    assert poly_exact_div(a, b) == (1 + t) * (1 - t)
    g = poly_gcd(a, (1 + t) * (1 - 8 * t + t ** 2))
    assert g == 1 + t


def test_gcd_multivariate():
    t1, t2 = var("t1"), var("t2")
    common = 1 + t1 + t2
    a = common * (1 - t1 * t2)
    b = common * (1 + t1)
    g = poly_gcd(a, b)
    # monic normalization: leading coefficient 1 under lex order
    assert g == common
    assert poly_exact_div(a, g) == 1 - t1 * t2


def test_rational_function_reduction_examples():
    t = var("t")
    # (1-t)/(1+t) + 2t/(1+t) = 1
    f = RationalFunction(1 - t, 1 + t) + RationalFunction(2 * t, 1 + t)
    assert f == RationalFunction.constant(1)

    t1, t2 = var("t1"), var("t2")
    # (1-t1*t2)/((1+t1)(1+t2)) * (1+t1) = (1-t1*t2)/(1+t2)
    g = RationalFunction(1 - t1 * t2, (1 + t1) * (1 + t2)) * (1 + t1)
    assert g == RationalFunction(1 - t1 * t2, 1 + t2)

    # 1 / ((1+t)/(1-t)) = (1-t)/(1+t)
    h = 1 / RationalFunction(1 + t, 1 - t)
    assert h == RationalFunction(1 - t, 1 + t)


def test_substitute_inverse_variable():
    t = var("t")
    f = RationalFunction(1 - t, 1 + t)
    inv = f.substitute({"t": RationalFunction(Polynomial.constant(1), t)})
    assert inv == RationalFunction(t - 1, t + 1)
    assert inv == -f


def test_palindrome_reversal():
    t = var("t")
    f = 1 + 2 * t + 2 * t ** 2 + t ** 3
    rf = RationalFunction(f)
    reversed_ = rf.substitute(
        {"t": RationalFunction(Polynomial.constant(1), t)}) * t ** 3
    assert reversed_ == RationalFunction(t ** 3 + 2 * t ** 2 + 2 * t + 1)


def test_evaluate_and_pole():
    t = var("t")
    f = RationalFunction(1 - t, 1 + t)
    assert f.evaluate({"t": Fraction(1)}) == 0
    with pytest.raises(PoleError):
        f.evaluate({"t": Fraction(-1)})


def test_series_geometric():
    t = var("t")
    # (1+t)/(1-t) = 1 + 2t + 2t^2 + 2t^3 + ...
    f = RationalFunction(1 + t, 1 - t)
    coeffs = f.series_coefficients(3)
    assert coeffs == {(0,): 1, (1,): 2, (2,): 2, (3,): 2}


def test_series_two_variables():
    t1, t2 = var("t1"), var("t2")
    f = RationalFunction(Polynomial.constant(1), 1 - t1 * t2)
    coeffs = f.series_coefficients(4)
    assert coeffs == {(0, 0): 1, (1, 1): 1, (2, 2): 1}


def test_series_of_polynomial_is_itself():
    t = var("t")
    p = 3 - 2 * t + 7 * t ** 5
    assert RationalFunction(p).series_coefficients(5) == {
        (0,): 3, (1,): -2, (5,): 7}


def test_series_requires_nonzero_constant_term():
    t = var("t")
    with pytest.raises(PoleError):
        RationalFunction(Polynomial.constant(1), t).series_coefficients(2)


def _random_rational_function(rng, names):
    def rand_poly():
        p = Polynomial.constant(rng.randint(-3, 3))
        for _ in range(rng.randint(0, 3)):
            term = Polynomial.constant(rng.randint(-2, 2))
            for name in names:
                term = term * var(name) ** rng.randint(0, 2)
            p = p + term
        return p

    den = Polynomial.constant(0)
    while den.is_zero():
        den = rand_poly()
    return RationalFunction(rand_poly(), den)


def test_ring_axioms_fuzz():
    rng = random.Random(20240817)
    for trial in range(25):
        names = ("t",) if trial % 2 else ("t1", "t2")
        a = _random_rational_function(rng, names)
        b = _random_rational_function(rng, names)
        c = _random_rational_function(rng, names)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a


def test_reduction_is_exact():
    rng = random.Random(7)
    t = var("t")
    for _ in range(15):
        f = _random_rational_function(rng, ("t",))
        if f.is_zero():
            continue
        # numerator == reduced numerator * (original denominator / reduced)
        product = f * f.denominator
        assert product == RationalFunction(f.numerator)


def test_series_convolved_with_denominator_gives_numerator():
    rng = random.Random(99)
    for _ in range(10):
        f = _random_rational_function(rng, ("t",))
        try:
            coeffs = f.series_coefficients(8)
        except PoleError:
            continue
        series_poly = sum(
            (c * var("t") ** (e[0] if e else 0) for e, c in coeffs.items()),
            Polynomial.constant(0))
        diff = f.numerator - series_poly * f.denominator
        assert diff.is_zero() or all(sum(e) > 8 for e in diff.terms)
