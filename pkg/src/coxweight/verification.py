"""Named verification checks behind the `verify` command.

Each check is a small, fast, self-contained assertion of one of the
package's mathematical invariants, returning (name, passed, detail).
The suites group them by area; `all` runs everything.  Output ordering
is deterministic (sorted by check name within a suite).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .builtin_systems import builtin_complex, builtin_system
from .complexes import chamber, h_polynomial, nerve, relative_betti_numbers
from .errors import IntermediateRegionError
from .growth import (
    classify_region,
    evaluate_series,
    inverse_growth_series,
    oracle_histogram_matches,
    radius_of_convergence,
    wT_over_W,
)
from .hecke import (
    QParams,
    hecke_multiply,
    idempotent_a,
    idempotent_h,
    inner_product,
    j_iso,
    star,
    verify_solomon,
)
from .polynomials import Polynomial, RationalFunction
from .rightangled import (
    betti_calculus,
    chi_of_expression,
    example_existence,
    flag_complex,
    verify_hpoly_identity,
)
from .weighted import (
    SIGMA,
    betti_formula,
    direct_betti_finite,
    euler_characteristic,
    ruin_homology_finite,
)


class Check:
    def __init__(self, suite, name, run):
        self.suite = suite
        self.name = name
        self.run = run


_CHECKS = []


def _check(suite, name):
    def decorate(fn):
        _CHECKS.append(Check(suite, name, fn))
        return fn
    return decorate


def _ok(detail=""):
    return True, detail


def _fail(detail):
    return False, detail


# -- words ------------------------------------------------------------------------


@_check("coxeter", "ball-histograms-match-growth-coefficients")
def _growth_oracle():
    battery = {"a2": 8, "b3": 8, "dihedral-infinite": 8, "pentagon": 8}
    for name, order in battery.items():
        if not oracle_histogram_matches(builtin_system(name), order):
            return _fail(f"mismatch for {name}")
    return _ok()


@_check("coxeter", "descent-sets-are-spherical")
def _descents_spherical():
    for name in ("b3", "triangle-(3,3,3)", "pentagon"):
        system = builtin_system(name)
        ball = system.enumerate_ball(5)
        for level in ball.elements:
            for e in level:
                if not system.is_spherical(system.descent_set(e)):
                    return _fail(f"{name}: {e!r}")
    return _ok()


@_check("coxeter", "length-changes-by-exactly-one")
def _length_steps():
    rng = random.Random(101)
    from .words import Element
    for name in ("b2", "h3", "triangle-(3,3,3)"):
        system = builtin_system(name)
        for _ in range(10):
            w = system.normal_form(
                [rng.choice(system.generators)
                 for _ in range(rng.randint(0, 6))])
            for s in system.generators:
                ws = system.multiply(w, Element((s,)))
                if abs(ws.length - w.length) != 1:
                    return _fail(f"{name}: {w!r} * {s}")
    return _ok()


@_check("coxeter", "finite-orders-match-classification")
def _orders():
    expected = {"a2": 6, "b2": 8, "b3": 48, "h3": 120}
    for name, order in expected.items():
        system = builtin_system(name)
        if sum(system.enumerate_all().histogram) != order:
            return _fail(name)
    return _ok()


# -- growth -----------------------------------------------------------------------


@_check("growth", "dihedral-reciprocal-series")
def _dihedral_series():
    t1, t2 = Polynomial.variable("t1"), Polynomial.variable("t2")
    expected = RationalFunction(1 - t1 * t2, (1 + t1) * (1 + t2))
    if inverse_growth_series(builtin_system("dihedral-infinite")) != expected:
        return _fail("series mismatch")
    return _ok()


@_check("growth", "dodecahedral-thresholds")
def _dodecahedral_thresholds():
    system = builtin_system("dodecahedral")
    t = Polynomial.variable("t")
    expected = RationalFunction((1 - t) * (1 - 8 * t + t ** 2), (1 + t) ** 3)
    if inverse_growth_series(system) != expected:
        return _fail("series mismatch")
    rho = radius_of_convergence(system)
    rho.refine(Fraction(1, 10 ** 6))
    if not ((4 - rho.low) ** 2 > 15 > (4 - rho.high) ** 2):
        return _fail("radius bracket misses 4 - sqrt(15)")
    tags = {Fraction(1, 10): "interior_R", Fraction(5): "intermediate",
            Fraction(8): "interior_Rinv"}
    for value, tag in tags.items():
        got = classify_region(system, {"t": value}).tag
        if got != tag:
            return _fail(f"q={value}: {got} != {tag}")
    return _ok()


@_check("growth", "descent-ratio-partition")
def _partition():
    from itertools import combinations
    for name in ("a2", "dihedral-infinite"):
        system = builtin_system(name)
        gens = list(system.generators)
        spherical = set(system.spherical_subsets())
        for r in range(len(gens) + 1):
            for U in combinations(gens, r):
                total = RationalFunction.constant(0)
                for k in range(len(U) + 1):
                    for T in combinations(U, k):
                        if frozenset(T) in spherical:
                            total = total + wT_over_W(system, T)
                rest = set(gens) - set(U)
                if total != inverse_growth_series(system.subsystem(rest)):
                    return _fail(f"{name}, U={U}")
    return _ok()


@_check("growth", "product-systems-multiply")
def _product():
    one = inverse_growth_series(builtin_system("dihedral-infinite"))
    two = inverse_growth_series(builtin_system("product-dihedral-2"))
    s1 = one.substitute({"t1": RationalFunction.variable("t1"),
                         "t2": RationalFunction.variable("t2")})
    s2 = one.substitute({"t1": RationalFunction.variable("t3"),
                         "t2": RationalFunction.variable("t4")})
    return _ok() if two == s1 * s2 else _fail("factorization fails")


# -- complexes -----------------------------------------------------------------------


@_check("complexes", "chambers-are-contractible")
def _contractible():
    for name in ("a2", "b2", "dihedral-infinite", "pentagon"):
        K = chamber(builtin_system(name))
        b = relative_betti_numbers(K, set())
        if b[0] != 1 or any(b[1:]):
            return _fail(name)
    return _ok()


@_check("complexes", "euler-relation-for-pairs")
def _euler_pairs():
    for name in ("a2", "pentagon"):
        system = builtin_system(name)
        K = chamber(system)
        for U in (set(), {system.generators[0]}):
            b = relative_betti_numbers(K, U)
            inside = K.mirror_union_faces(U)
            chi = sum((-1) ** (len(f) - 1)
                      for f in K.base.faces if f and f not in inside)
            if sum((-1) ** i * x for i, x in enumerate(b)) != chi:
                return _fail(f"{name} U={sorted(U)}")
    return _ok()


@_check("complexes", "sphere-nerve-h-vectors-palindromic")
def _palindromic():
    from .builtin_systems import cycle_graph, icosahedron_graph
    cases = [(flag_complex(*cycle_graph(m)), 2) for m in (4, 6, 9)]
    cases.append((flag_complex(*icosahedron_graph()), 3))
    for L, n in cases:
        h = h_polynomial(L, n).univariate_coefficients()
        if h != h[::-1] or any(c < 0 for c in h):
            return _fail(str(h))
    return _ok()


@_check("complexes", "right-angled-nerves-are-flag")
def _flag():
    for name in ("square", "pentagon", "dodecahedral"):
        if not nerve(builtin_system(name)).is_flag():
            return _fail(name)
    return _ok()


# -- hecke ----------------------------------------------------------------------------


@_check("hecke", "product-associativity-symbolic")
def _assoc():
    rng = random.Random(5)
    from .hecke import HeckeElement
    for name in ("a2", "b2", "dihedral-infinite"):
        system = builtin_system(name)
        q = QParams.symbolic_for(system)
        for _ in range(2):
            xs = []
            for _ in range(3):
                x = HeckeElement(system)
                for _ in range(2):
                    word = [rng.choice(system.generators)
                            for _ in range(rng.randint(0, 3))]
                    x = x + HeckeElement.basis(system, word).scale(
                        Fraction(rng.randint(-2, 2)))
                xs.append(x)
            x, y, z = xs
            if hecke_multiply(hecke_multiply(x, y, q), z, q) \
                    != hecke_multiply(x, hecke_multiply(y, z, q), q):
                return _fail(name)
    return _ok()


@_check("hecke", "adjunction-of-star")
def _adjoint():
    rng = random.Random(6)
    from .hecke import HeckeElement
    for name in ("a2", "dihedral-infinite"):
        system = builtin_system(name)
        q = QParams.numeric(
            system, {label: Fraction(rng.randint(1, 5), rng.randint(1, 5))
                     for label in system.class_labels})
        for _ in range(4):
            def rand():
                x = HeckeElement(system)
                for _ in range(2):
                    word = [rng.choice(system.generators)
                            for _ in range(rng.randint(0, 4))]
                    x = x + HeckeElement.basis(system, word).scale(
                        Fraction(rng.randint(-3, 3)))
                return x
            x, y, z = rand(), rand(), rand()
            if inner_product(hecke_multiply(x, y, q), z, q) \
                    != inner_product(y, hecke_multiply(star(x), z, q), q):
                return _fail(name)
    return _ok()


@_check("hecke", "idempotent-complement-and-swap")
def _idempotents():
    for name in ("a2", "b2"):
        system = builtin_system(name)
        q = QParams.symbolic_for(system)
        from .hecke import HeckeElement
        for s in system.generators:
            a = idempotent_a(system, {s}, q)
            h = idempotent_h(system, {s}, q)
            if a + h != HeckeElement.unit(system):
                return _fail(f"{name}: a+h != 1")
        numeric = QParams.uniform(system, Fraction(5, 3)) \
            if len(system.class_labels) == 1 else QParams.numeric(
                system, {label: Fraction(5, 3)
                         for label in system.class_labels})
        for T in system.spherical_subsets():
            if j_iso(idempotent_a(system, T, numeric), numeric) \
                    != idempotent_h(system, T, numeric.inverse()):
                return _fail(f"{name}: j(a) != h at {sorted(T)}")
    return _ok()


@_check("hecke", "nested-idempotent-absorption")
def _absorb():
    for name in ("a2", "b2"):
        system = builtin_system(name)
        q = QParams.numeric(system, {label: Fraction(2)
                                     for label in system.class_labels})
        poset = system.spherical_subsets()
        for T in poset:
            for U in poset:
                if U < T:
                    aT = idempotent_a(system, T, q)
                    if hecke_multiply(idempotent_a(system, U, q), aT, q) \
                            != aT:
                        return _fail(f"{name}: {sorted(U)} < {sorted(T)}")
    return _ok()


@_check("hecke", "regular-module-decomposition")
def _solomon():
    rng = random.Random(7)
    for name in ("a1", "a2", "b2", "a1xa1"):
        system = builtin_system(name)
        q = QParams.numeric(
            system, {label: Fraction(rng.randint(1, 7), rng.randint(1, 7))
                     for label in system.class_labels})
        report = verify_solomon(system, q)
        if not report.passed:
            failure = report.first_failure()
            return _fail(f"{name}: {failure.name}: {failure.detail}")
    return _ok()


@_check("hecke", "solomon-classical-dimensions")
def _solomon_classical():
    report = verify_solomon(builtin_system("a2"),
                            QParams.uniform(builtin_system("a2"), 1))
    expected = {"empty": Fraction(1, 6), "s": Fraction(1, 3),
                "t": Fraction(1, 3), "s,t": Fraction(1, 6)}
    if report.dims != expected:
        return _fail(str(report.dims))
    return _ok()


# -- weighted -----------------------------------------------------------------------


@_check("weighted", "direct-equals-formula-finite")
def _direct_vs_formula():
    rng = random.Random(8)
    for name in ("a2", "b2", "a1xa1"):
        system = builtin_system(name)
        q = {label: Fraction(rng.randint(1, 8), rng.randint(1, 8))
             for label in system.class_labels}
        for Z in (SIGMA, builtin_complex("circle", system)):
            if direct_betti_finite(system, Z, q).degrees \
                    != betti_formula(system, Z, q).degrees:
                return _fail(name)
    return _ok()


@_check("weighted", "euler-census-matches-series")
def _euler_census():
    for name in ("a2", "dihedral-infinite", "pentagon"):
        system = builtin_system(name)
        q = {label: Fraction(2, 3) for label in system.class_labels}
        lhs = euler_characteristic(system, SIGMA, q)
        rhs = euler_characteristic(system, chamber(system), q)
        if lhs != rhs:
            return _fail(name)
    return _ok()


@_check("weighted", "interior-R-concentration")
def _interior_R():
    for name in ("dihedral-infinite", "pentagon"):
        system = builtin_system(name)
        q = {label: Fraction(1, 5) for label in system.class_labels}
        report = betti_formula(system, SIGMA, q)
        inv = evaluate_series(inverse_growth_series(system), q)
        if report.degrees != {0: inv}:
            return _fail(name)
    return _ok()


@_check("weighted", "intermediate-region-refused")
def _intermediate():
    try:
        betti_formula(builtin_system("dodecahedral"), SIGMA,
                      {"t": Fraction(3)})
    except IntermediateRegionError:
        return _ok()
    return _fail("no error raised")


@_check("weighted", "ruin-concentration")
def _ruins():
    for name in ("a2", "b2"):
        system = builtin_system(name)
        gens = set(system.generators)
        q = {label: Fraction(3, 2) for label in system.class_labels}
        for T in system.spherical_subsets():
            hom = ruin_homology_finite(system, gens, T, q)
            if set(hom) != {len(T)}:
                return _fail(f"{name} T={sorted(T)}: {hom}")
    return _ok()


@_check("weighted", "duality-on-sphere-nerves")
def _duality():
    system = builtin_system("square")
    low = betti_formula(system, SIGMA, {"t": Fraction(1, 3)})
    high = betti_formula(system, SIGMA, {"t": Fraction(3)})
    if low.degrees.get(0) != high.degrees.get(2):
        return _fail("square duality fails")
    return _ok()


# -- right-angled -------------------------------------------------------------------


@_check("rightangled", "h-polynomial-identity")
def _hpoly():
    from .builtin_systems import cycle_graph, icosahedron_graph
    for graph, n in ((cycle_graph(5), 2), (icosahedron_graph(), 3)):
        if not verify_hpoly_identity(flag_complex(*graph), n)["holds"]:
            return _fail(f"n={n}")
    return _ok()


@_check("rightangled", "calculus-chi-consistency")
def _calculus_chi():
    for expr in (("points", 4), ("octahedron", 3),
                 ("cone", ("points", 3)),
                 ("join", ("points", 3), ("points", 3))):
        table = betti_calculus(expr)
        chi = chi_of_expression(expr)
        for piece in table.alternating_sum_piecewise().pieces:
            if piece != chi:
                return _fail(str(expr))
    return _ok()


@_check("rightangled", "gluing-example-thresholds")
def _existence():
    report = example_existence(4, 10)
    if report["half_capped_numerator"] != [1, -15, 34, -15, 1]:
        return _fail("capped numerator")
    if report["glued_numerator"] != [1, -26, 62, -26, 1]:
        return _fail("glued numerator")
    return _ok()


SUITES = ("coxeter", "growth", "complexes", "hecke", "weighted",
          "rightangled")


def run_suite(suite="all"):
    """Run one suite (or all); returns a list of result dicts sorted by name."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(
            f"unknown suite {suite!r}; choose from {('all',) + SUITES}")
    rows = []
    selected = [c for c in _CHECKS if suite in ("all", c.suite)]
    for check in sorted(selected, key=lambda c: (c.suite, c.name)):
        try:
            passed, detail = check.run()
        except Exception as exc:  # a crash is a failure with its reason
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append({
            "name": f"{check.suite}/{check.name}",
            "passed": bool(passed),
            "detail": detail,
        })
    return rows
