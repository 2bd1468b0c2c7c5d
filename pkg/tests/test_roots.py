import math
import random
from fractions import Fraction

import pytest

from coxweight.polynomials import Polynomial
from coxweight.roots import (
    isolate_positive_roots,
    poly_eval,
    squarefree_decomposition,
)


def coeffs(*cs):
    return [Fraction(c) for c in cs]


def test_quadratic_thresholds():
    # 1 - 8t + t^2 has roots 4 - sqrt(15) and 4 + sqrt(15)
    roots = isolate_positive_roots(coeffs(1, -8, 1))
    assert len(roots) == 2
    lo_root, hi_root = roots
    for r in roots:
        r.refine(Fraction(1, 10 ** 8))
    # cross-check against the quadratic formula evaluated in floats
    assert lo_root.low < 4 - math.sqrt(15) < lo_root.high
    assert hi_root.low < 4 + math.sqrt(15) < hi_root.high
    assert lo_root.multiplicity == hi_root.multiplicity == 1


def test_double_root_detected_exactly():
    # (1-t)^2
    roots = isolate_positive_roots(coeffs(1, -2, 1))
    assert len(roots) == 1
    assert roots[0].is_exact and roots[0].value == 1
    assert roots[0].multiplicity == 2


def test_no_positive_roots():
    assert isolate_positive_roots(coeffs(1, 1)) == []


def test_rational_roots_found_exactly():
    # (2t-1)(t-3) = 3 - 7t + 2t^2
    roots = isolate_positive_roots(coeffs(3, -7, 2))
    assert [r.value for r in roots] == [Fraction(1, 2), Fraction(3)]


def test_polynomial_input():
    t = Polynomial.variable("t")
    roots = isolate_positive_roots((1 - t) * (1 - 8 * t + t ** 2))
    assert len(roots) == 3
    middle = [r for r in roots if r.is_exact]
    assert len(middle) == 1 and middle[0].value == 1


def test_squarefree_decomposition():
    # t(1-t)^2(2-t)^3: factors by multiplicity
    t = Polynomial.variable("t")
    p = (t * (1 - t) ** 2 * (2 - t) ** 3).univariate_coefficients()
    decomp = squarefree_decomposition(p)
    mults = sorted(m for _, m in decomp)
    assert mults == [1, 2, 3]
    for factor, mult in decomp:
        roots = {Fraction(0): 1, Fraction(1): 2, Fraction(2): 3}
        for r, m in roots.items():
            if poly_eval(factor, r) == 0:
                assert m == mult


def test_sturm_count_matches_isolation_with_multiplicity():
    rng = random.Random(4242)
    for _ in range(30):
        # random product of linear and irreducible quadratic factors
        t = Polynomial.variable("t")
        p = Polynomial.constant(rng.choice([1, 2, -1]))
        expected_distinct_positive = set()
        for _ in range(rng.randint(1, 4)):
            kind = rng.random()
            if kind < 0.6:
                root = Fraction(rng.randint(-4, 8), rng.randint(1, 4))
                mult = rng.randint(1, 2)
                p = p * (t - root) ** mult
                if root > 0:
                    expected_distinct_positive.add(root)
            else:
                p = p * (t ** 2 + rng.randint(1, 3))
        roots = isolate_positive_roots(p)
        got = set()
        for r in roots:
            assert r.is_exact, "all roots in this fuzz family are rational"
            got.add(r.value)
        assert got == expected_distinct_positive


def test_interval_roots_are_bracketed_by_sign_change():
    # golden-ratio-flavoured: 1 - 3q + q^2 (pentagon threshold)
    roots = isolate_positive_roots(coeffs(1, -3, 1))
    assert len(roots) == 2
    for r in roots:
        assert not r.is_exact
        flo = poly_eval(r.factor, r.low)
        fhi = poly_eval(r.factor, r.high)
        assert flo != 0 and fhi != 0 and (flo > 0) != (fhi > 0)
        r.refine(Fraction(1, 10 ** 10))
        assert r.width() <= Fraction(1, 10 ** 10)


def test_intervals_disjoint_and_sorted():
    # roots 1/3 (exact), and sqrt-ish neighbours from 1-8t+t^2
    t = Polynomial.variable("t")
    p = (3 * t - 1) * (1 - 8 * t + t ** 2)
    roots = isolate_positive_roots(p)
    assert len(roots) == 3
    for a, b in zip(roots, roots[1:]):
        assert a.high <= b.low


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        isolate_positive_roots([])


def test_decimal_rendering():
    roots = isolate_positive_roots(coeffs(1, -8, 1))
    assert roots[0].decimal(5) == "0.12702"
    assert roots[1].decimal(5) == "7.87298"
