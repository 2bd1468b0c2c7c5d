"""Cross-cutting surface contracts: golden outputs, the builtin catalog,
boundary-of-region evaluation and the ideal identities behind the
decomposition report."""

import json
import pathlib
from fractions import Fraction

from fastapi.testclient import TestClient

from coxweight.builtin_systems import builtin_names, builtin_system
from coxweight.growth import classify_region, evaluate_series, \
    inverse_growth_series
from coxweight.hecke import (
    FiniteHeckeSpace,
    QParams,
    _all_subsets,
    hecke_multiply,
    idempotent_a,
    idempotent_h,
)
from coxweight.linalg import span_equal
from coxweight.service import create_app
from coxweight.weighted import SIGMA, betti_formula

GOLDEN = pathlib.Path(__file__).parent / "golden"


def test_existence_golden_file():
    client = TestClient(create_app())
    body = client.post("/example-existence", json={"m": 10}).json()
    expected = json.loads(
        (GOLDEN / "example_existence_m10.json").read_text())
    got = {
        "schema_version": body["schema_version"],
        "m": body["m"],
        "half_capped_numerator": body["half_capped_numerator"],
        "glued_numerator": body["glued_numerator"],
        "half_capped_root_decimals":
            [r["decimal"] for r in body["half_capped_roots"]],
        "glued_root_decimals":
            [r["decimal"] for r in body["glued_roots"]],
        "chi_half_capped": body["chi_half_capped"],
        "chi_glued": body["chi_glued"],
    }
    assert got == expected


def test_builtin_catalog_covers_battery():
    required = {
        "a1", "a2", "b3", "h3", "dihedral-infinite",
        "product-dihedral-2", "product-dihedral-3", "k-points-3",
        "pentagon", "dodecahedral", "triangle-(3,3,3)", "square",
        "a1xa1", "b2",
    }
    assert required <= set(builtin_names())


def test_boundary_of_region_evaluates_closed_forms():
    dinf = builtin_system("dihedral-infinite")
    q = {"t1": Fraction(2), "t2": Fraction(1, 2)}
    assert classify_region(dinf, q).tag == "boundary_R"
    report = betti_formula(dinf, SIGMA, q)
    # on the boundary 1/W(q) = 0: every Betti number vanishes there
    assert report.degrees == {}
    assert report.euler == 0

    # reciprocal boundary of the free product of three involutions: the
    # closed-form value there agrees with the piecewise calculus
    kp = builtin_system("k-points-3")
    assert classify_region(kp, {"t": Fraction(2)}).tag == "boundary_Rinv"
    boundary = betti_formula(kp, SIGMA, {"t": Fraction(2)})
    from coxweight.rightangled import betti_calculus
    table = betti_calculus(("points", 3))
    assert boundary.degrees == {1: table.degree(1).evaluate(Fraction(2))}
    assert boundary.degrees == {1: Fraction(1)}


def test_alternating_ideal_spans_match_g_subspaces():
    # right translates of a_{S-T} h_T span G_T on finite groups
    for name in ("a2", "b2", "a1xa1"):
        system = builtin_system(name)
        q = QParams.numeric(system, {label: Fraction(3, 2)
                                     for label in system.class_labels})
        space = FiniteHeckeSpace(system, q)
        gens = set(system.generators)
        for T in _all_subsets(gens):
            generator = hecke_multiply(
                idempotent_a(system, gens - T, q),
                idempotent_h(system, T, q), q)
            ideal = space.left_ideal_basis(generator)
            g_sub = space.subspace("G", T)
            assert span_equal(ideal, g_sub.basis), (name, sorted(T))


def test_duality_octahedral_tower():
    # nerves are octahedron boundaries of dimensions 1 and 2
    for name, n in (("product-dihedral-2", 2), ("product-dihedral-3", 3)):
        system = builtin_system(name)
        q = {label: Fraction(1, 2) for label in system.class_labels}
        qinv = {label: Fraction(2) for label in system.class_labels}
        low = betti_formula(system, SIGMA, q)
        high = betti_formula(system, SIGMA, qinv)
        assert set(low.degrees) == {0}
        assert set(high.degrees) == {n}
        assert low.degrees[0] == high.degrees[n]
        assert low.degrees[0] == evaluate_series(
            inverse_growth_series(system), q)
