"""Exact growth series, Hecke algebras and weighted Betti numbers of
Coxeter systems, with a FastAPI service and a CLI client on top."""

from .complexes import (
    MirroredComplex,
    SimplicialComplex,
    chamber,
    f_polynomial,
    h_polynomial,
    nerve,
    relative_betti_numbers,
)
from .errors import (
    BudgetExceededError,
    CoxweightError,
    FormatError,
    InfiniteGroupError,
    IntermediateRegionError,
    NotSphericalError,
    UnsupportedOperationError,
)
from .growth import (
    classify_region,
    cofactor_series,
    growth_series,
    inverse_growth_series,
    radius_of_convergence,
    spherical_growth_poly,
    wT_over_W,
)
from .hecke import (
    FiniteHeckeSpace,
    HeckeElement,
    QParams,
    hecke_multiply,
    idempotent_a,
    idempotent_h,
    j_iso,
    star,
    verify_solomon,
)
from .polynomials import PoleError, Polynomial, RationalFunction
from .rightangled import (
    betti_calculus,
    chi_q,
    example_existence,
    flag_complex,
    racg_from_graph,
    verify_hpoly_identity,
)
from .roots import IsolatedRoot, isolate_positive_roots
from .weighted import (
    SIGMA,
    BettiReport,
    betti_formula,
    cochain_dims,
    direct_betti_finite,
    euler_characteristic,
    ruin_homology_finite,
)
from .words import CoxeterSystem, Element, parse_system

__version__ = "0.1.0"

__all__ = [
    "BettiReport", "BudgetExceededError", "CoxeterSystem", "CoxweightError",
    "Element", "FiniteHeckeSpace", "FormatError", "HeckeElement",
    "InfiniteGroupError", "IntermediateRegionError", "IsolatedRoot",
    "MirroredComplex", "NotSphericalError", "PoleError", "Polynomial",
    "QParams", "RationalFunction", "SIGMA", "SimplicialComplex",
    "UnsupportedOperationError", "betti_calculus", "betti_formula",
    "chamber", "chi_q", "classify_region", "cochain_dims",
    "cofactor_series", "direct_betti_finite", "euler_characteristic",
    "example_existence", "f_polynomial", "flag_complex", "growth_series",
    "h_polynomial", "hecke_multiply", "idempotent_a", "idempotent_h",
    "inverse_growth_series", "isolate_positive_roots", "j_iso", "nerve",
    "parse_system", "racg_from_graph", "radius_of_convergence",
    "relative_betti_numbers", "ruin_homology_finite",
    "spherical_growth_poly", "star", "verify_hpoly_identity",
    "verify_solomon", "wT_over_W",
]
