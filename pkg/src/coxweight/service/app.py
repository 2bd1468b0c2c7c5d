"""FastAPI service exposing the exact-arithmetic computations.

Every numeric field in a response is an exact rational string; decimal
renderings are derived views.  Domain errors map to HTTP 422 with a
machine-readable body (the intermediate-region refusal included).
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..builtin_systems import (
    builtin_complex,
    builtin_complex_names,
    builtin_names,
    builtin_system,
)
from ..complexes import MirroredComplex, SimplicialComplex
from ..errors import CoxweightError
from ..growth import (
    classify_region,
    growth_data,
    inverse_growth_series,
    radius_of_convergence,
)
from ..hecke import QParams
from ..rightangled import chi_q, example_existence, flag_complex, \
    verify_hpoly_identity
from ..roots import _format_decimal
from ..verification import run_suite
from ..weighted import (
    SIGMA,
    betti_formula,
    direct_betti_finite,
    euler_characteristic,
)
from ..words import parse_system
from . import schemas as S


def _load_system(spec: S.SystemSpec):
    if spec.builtin is not None:
        return builtin_system(spec.builtin)
    return parse_system(spec.description)


def _load_complex(spec, system):
    if spec is None:
        return SIGMA
    if spec.builtin is not None:
        return builtin_complex(spec.builtin, system)
    data = spec.description
    base = SimplicialComplex.from_facets(
        data["vertices"], [tuple(f) for f in data["facets"]])
    mirrors = {s: frozenset(vs) for s, vs in data["mirrors"].items()}
    return MirroredComplex(base, mirrors)


def _parse_q(system, q):
    """Accept {label: 'p/q'}, a positional list matched to class order,
    or a single value for single-class systems."""
    labels = system.class_labels
    if isinstance(q, str):
        q = [q]
    if isinstance(q, (list, tuple)):
        if len(q) != len(labels):
            raise ValueError(
                f"expected {len(labels)} parameters for classes "
                f"{list(labels)}, got {len(q)}")
        return {label: Fraction(str(v)) for label, v in zip(labels, q)}
    return {label: Fraction(str(v)) for label, v in q.items()}


def _rational(value, precision=6):
    return S.RationalValue(
        exact=str(Fraction(value)),
        decimal=_format_decimal(Fraction(value), precision))


def _root_row(root, precision=6):
    root.refine(Fraction(1, 10 ** (precision + 1)))
    return S.RootRow(
        exact=str(root.value) if root.is_exact else None,
        low=str(root.low),
        high=str(root.high),
        decimal=root.decimal(precision),
        multiplicity=root.multiplicity)


def create_app() -> FastAPI:
    app = FastAPI(
        title="coxweight",
        description="Exact growth series, Hecke algebra and weighted "
                    "Betti number computations for Coxeter systems.")

    @app.exception_handler(CoxweightError)
    async def _domain_error(request: Request, exc: CoxweightError):
        return JSONResponse(
            status_code=422,
            content={"error": exc.payload()})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=422,
            content={"error": {"type": "invalid-value",
                               "message": str(exc)}})

    @app.get("/", response_model=S.ServiceInfo)
    def info():
        return S.ServiceInfo(
            name="coxweight",
            schema_version=S.SCHEMA_VERSION,
            endpoints=sorted(
                r.path for r in app.routes if r.path.startswith("/")))

    @app.get("/systems", response_model=S.SystemsResponse)
    def systems():
        return S.SystemsResponse(systems=builtin_names(),
                                 complexes=builtin_complex_names())

    @app.post("/growth", response_model=S.GrowthResponse,
              response_model_exclude_none=True)
    def growth(req: S.GrowthRequest):
        system = _load_system(req.system)
        inv = inverse_growth_series(system)
        series = None
        if req.series_order is not None:
            data = growth_data(system)
            names = data.growth_series().variables()
            series = []
            for e, c in sorted(
                    data.series_coefficients(req.series_order).items(),
                    key=lambda kv: (sum(kv[0]), kv[0])):
                series.append({
                    "exponents": {n: p for n, p in zip(names, e) if p},
                    "coefficient": str(c)})
        return S.GrowthResponse(
            variables=list(inv.variables()),
            numerator=inv.numerator.to_text(),
            denominator=inv.denominator.to_text(),
            series=series)

    @app.post("/rho", response_model=S.RhoResponse,
              response_model_exclude_none=True)
    def rho(req: S.RhoRequest):
        system = _load_system(req.system)
        root = radius_of_convergence(system)
        if root is None:
            return S.RhoResponse(kind="infinite-radius",
                                 note="finite group: the series is a "
                                      "polynomial")
        root.refine(Fraction(1, 10 ** (req.precision + 1)))
        return S.RhoResponse(
            kind="root",
            exact=str(root.value) if root.is_exact else None,
            low=str(root.low),
            high=str(root.high),
            decimal=root.decimal(req.precision),
            interval_width=str(root.width()),
            multiplicity=root.multiplicity,
            reciprocal_low=str(1 / root.high),
            reciprocal_high=str(1 / root.low))

    @app.post("/region", response_model=S.RegionResponse)
    def region(req: S.RegionRequest):
        system = _load_system(req.system)
        q = _parse_q(system, req.q)
        rc = classify_region(system, q)
        witness = {k: (str(v) if isinstance(v, Fraction) else
                       {kk: str(vv) for kk, vv in v.items()}
                       if isinstance(v, dict) else v)
                   for k, v in rc.witness.items()}
        return S.RegionResponse(
            tag=rc.tag,
            q={label: str(v) for label, v in q.items()},
            witness=witness)

    @app.post("/betti", response_model=S.BettiResponse)
    def betti(req: S.BettiRequest):
        system = _load_system(req.system)
        q = _parse_q(system, req.q)
        Z = _load_complex(req.complex, system)
        if req.method == "direct":
            report = direct_betti_finite(system, Z, q)
        else:
            report = betti_formula(system, Z, q)
            if req.method == "auto" \
                    and system.is_spherical(system.generators):
                cross = direct_betti_finite(system, Z, q)
                assert cross.degrees == report.degrees, \
                    "formula and direct computations disagree"
        return S.BettiResponse(
            degrees={str(i): _rational(v, req.precision)
                     for i, v in sorted(report.degrees.items())},
            region=report.region.tag,
            method=report.method,
            euler=_rational(report.euler, req.precision),
            cochain_dims=[str(c) for c in report.cochain],
            q={label: str(v) for label, v in q.items()})

    @app.post("/euler", response_model=S.EulerResponse)
    def euler(req: S.EulerRequest):
        system = _load_system(req.system)
        q = _parse_q(system, req.q)
        Z = _load_complex(req.complex, system)
        value = euler_characteristic(system, Z, q)
        return S.EulerResponse(
            value=_rational(value, req.precision),
            q={label: str(v) for label, v in q.items()})

    @app.post("/ball", response_model=S.BallResponse,
              response_model_exclude_none=True)
    def ball(req: S.BallRequest):
        system = _load_system(req.system)
        result = system.enumerate_ball(
            req.max_length, max_elements=req.budget,
            max_seconds=req.time_limit)
        elements = None
        if req.include_elements:
            elements = [[e.serialize() for e in level]
                        for level in result.elements]
        return S.BallResponse(
            histogram=list(result.histogram),
            complete=result.complete,
            total=sum(result.histogram),
            elements=elements)

    @app.post("/normal-form", response_model=S.NormalFormResponse)
    def normal_form(req: S.NormalFormRequest):
        system = _load_system(req.system)
        e = system.normal_form(req.word)
        return S.NormalFormResponse(
            word=e.serialize(),
            length=e.length,
            descents=sorted(system.descent_set(e)))

    @app.post("/hecke/check", response_model=S.CheckTableResponse)
    def hecke_check(req: S.HeckeCheckRequest):
        from ..hecke import verify_solomon
        import random as _random

        rows = [S.CheckRow(**row) for row in run_suite("hecke")]
        rng = _random.Random(req.seed)
        for name in (req.systems or ("a2",)):
            system = builtin_system(name)
            if req.q is not None:
                q = QParams.numeric(system, _parse_q(system, req.q))
            else:
                q = QParams.numeric(
                    system,
                    {label: Fraction(rng.randint(1, 9), rng.randint(1, 9))
                     for label in system.class_labels})
            report = verify_solomon(system, q)
            for check in report.checks:
                rows.append(S.CheckRow(
                    name=f"solomon[{name}]/{check.name}",
                    passed=check.passed,
                    detail=check.detail if not check.passed else ""))
        return S.CheckTableResponse(
            passed=all(r.passed for r in rows), checks=rows)

    @app.post("/hpoly", response_model=S.HpolyResponse)
    def hpoly(req: S.HpolyRequest):
        L = flag_complex(req.graph.vertices,
                         {frozenset(e) for e in req.graph.edges})
        n = req.n if req.n is not None else L.dimension + 1
        report = verify_hpoly_identity(L, n)
        from ..complexes import f_polynomial
        return S.HpolyResponse(
            f_coefficients=[str(c) for c in
                            f_polynomial(L).univariate_coefficients()],
            h_coefficients=[str(c) for c in report["h_coefficients"]],
            identity_holds=report["holds"],
            inverse_numerator=report["inverse_series"].numerator.to_text(),
            inverse_denominator=report["inverse_series"]
            .denominator.to_text())

    @app.post("/chi", response_model=S.ChiResponse)
    def chi(req: S.ChiRequest):
        L = flag_complex(req.graph.vertices,
                         {frozenset(e) for e in req.graph.edges})
        value = chi_q(L)
        return S.ChiResponse(
            numerator=value.numerator.to_text(),
            denominator=value.denominator.to_text())

    @app.post("/example-existence", response_model=S.ExistenceResponse)
    def existence(req: S.ExistenceRequest):
        report = example_existence(req.k, req.m)
        return S.ExistenceResponse(
            m=req.m,
            half_capped_numerator=[
                str(c) for c in report["half_capped_numerator"]],
            glued_numerator=[str(c) for c in report["glued_numerator"]],
            half_capped_roots=[_root_row(r)
                               for r in report["half_capped_roots"]],
            glued_roots=[_root_row(r) for r in report["glued_roots"]],
            chi_glued=report["chi_glued"].to_text(),
            chi_half_capped=report["chi_half_capped"].to_text())

    @app.post("/verify", response_model=S.CheckTableResponse)
    def verify(req: S.VerifyRequest):
        rows = [S.CheckRow(**row) for row in run_suite(req.suite)]
        return S.CheckTableResponse(
            passed=all(r.passed for r in rows), checks=rows)

    @app.post("/scan", response_model=S.ScanResponse)
    def scan(req: S.ScanRequest):
        system = _load_system(req.system)
        if len(system.class_labels) != 1:
            raise ValueError("scan supports single-class systems")
        label = system.class_labels[0]
        lo = Fraction(req.q_min)
        hi = Fraction(req.q_max)
        if not 0 < lo <= hi:
            raise ValueError("need 0 < q_min <= q_max")
        rows = []
        for k in range(req.steps + 1):
            q = lo + (hi - lo) * Fraction(k, req.steps) if req.steps \
                else lo
            rc = classify_region(system, {label: q})
            row = S.ScanRow(q=str(q), region=rc.tag)
            try:
                report = betti_formula(system, SIGMA, {label: q})
                row.degrees = {str(i): str(v)
                               for i, v in sorted(report.degrees.items())}
            except CoxweightError as exc:
                row.error = exc.kind
            rows.append(row)
        return S.ScanResponse(rows=rows)

    return app
