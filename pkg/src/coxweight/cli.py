"""Command-line client for the computation service.

Every command goes through the HTTP layer: either against an in-process
application instance (the default) or a remote server given with
--server.  Structured output (--format json) round-trips exact rationals
as strings; the human renderer always shows the exact value next to any
decimal.
"""

from __future__ import annotations

import asyncio
import csv as _csv
import io
import json
import sys

import click
import httpx


class ServiceClient:
    def __init__(self, server=None):
        self.server = server

    def request(self, method, path, payload=None):
        if self.server:
            with httpx.Client(base_url=self.server, timeout=600) as client:
                response = client.request(method, path, json=payload)
        else:
            from .service import create_app

            app = create_app()

            async def go():
                transport = httpx.ASGITransport(app=app)
                async with httpx.AsyncClient(
                        transport=transport,
                        base_url="http://coxweight.local",
                        timeout=None) as client:
                    return await client.request(method, path, json=payload)

            response = asyncio.run(go())
        body = response.json()
        if response.status_code != 200:
            error = body.get("error", body)
            click.echo(json.dumps({"error": error}, indent=2), err=True)
            sys.exit(1)
        return body

    def post(self, path, payload):
        return self.request("POST", path, payload)

    def get(self, path):
        return self.request("GET", path)


def _system_payload(system, system_file):
    if system_file:
        with open(system_file) as fh:
            return {"description": json.load(fh)}
    return {"builtin": system}


def _q_payload(q):
    if "=" in q:
        out = {}
        for part in q.split(","):
            label, _, value = part.partition("=")
            out[label.strip()] = value.strip()
        return out
    return [part.strip() for part in q.split(",")]


def _complex_payload(complex_):
    if complex_ is None:
        return None
    if complex_.endswith(".json"):
        with open(complex_) as fh:
            return {"description": json.load(fh)}
    return {"builtin": complex_}


def _graph_payload(graph, graph_file):
    if graph_file:
        with open(graph_file) as fh:
            data = json.load(fh)
        return {"vertices": data["vertices"],
                "edges": [list(e) for e in data["edges"]]}
    from .builtin_systems import cycle_graph, icosahedron_graph

    if graph == "icosahedron":
        vertices, edges = icosahedron_graph()
    elif graph.startswith("cycle-"):
        vertices, edges = cycle_graph(int(graph.split("-")[1]))
    elif graph.startswith("path-"):
        n = int(graph.split("-")[1])
        vertices = [f"v{i}" for i in range(n)]
        edges = {frozenset((vertices[i], vertices[i + 1]))
                 for i in range(n - 1)}
    elif graph.startswith("octahedron-"):
        n = int(graph.split("-")[1])
        vertices = [f"x{i}{sign}" for i in range(n) for sign in "pm"]
        edges = set()
        for i, a in enumerate(vertices):
            for b in vertices[i + 1:]:
                if a[:-1] != b[:-1]:
                    edges.add(frozenset((a, b)))
    else:
        raise click.UsageError(
            "unknown named graph; use icosahedron, cycle-N, path-N, "
            "octahedron-N or --graph-file")
    return {"vertices": list(vertices),
            "edges": [sorted(e) for e in edges]}


def _emit(ctx, body, human, csv_rows=None):
    fmt = ctx.obj["format"]
    if fmt == "json":
        click.echo(json.dumps(body, indent=2))
    elif fmt == "csv":
        if csv_rows is None:
            raise click.UsageError("no CSV rendering for this command")
        header, rows = csv_rows
        buffer = io.StringIO()
        writer = _csv.writer(buffer)
        writer.writerow(header)
        writer.writerows(rows)
        click.echo(buffer.getvalue().rstrip("\n"))
    else:
        human()


@click.group()
@click.option("--server", default=None,
              help="Base URL of a running service; default is in-process.")
@click.option("--format", "format_", default="human",
              type=click.Choice(["human", "json", "csv"]))
@click.pass_context
def main(ctx, server, format_):
    """Exact computations for Coxeter systems over a service API."""
    ctx.ensure_object(dict)
    ctx.obj["client"] = ServiceClient(server)
    ctx.obj["format"] = format_


_SYSTEM_OPTIONS = [
    click.option("--system", default=None,
                 help="Name of a builtin system (see `systems`)."),
    click.option("--system-file", default=None, type=click.Path(exists=True),
                 help="JSON file with generators/matrix/classes."),
]


def _with_system(fn):
    for option in reversed(_SYSTEM_OPTIONS):
        fn = option(fn)
    return fn


def _require_system(system, system_file):
    if (system is None) == (system_file is None):
        raise click.UsageError("provide exactly one of --system "
                               "or --system-file")


@main.command()
@click.pass_context
def systems(ctx):
    """List builtin systems and mirrored complexes."""
    body = ctx.obj["client"].get("/systems")

    def human():
        click.echo("systems:   " + " ".join(body["systems"]))
        click.echo("complexes: " + " ".join(body["complexes"]))

    _emit(ctx, body, human,
          (["kind", "name"],
           [("system", n) for n in body["systems"]]
           + [("complex", n) for n in body["complexes"]]))


@main.command()
@_with_system
@click.option("--series", default=None, type=int,
              help="Also expand this many series coefficients.")
@click.pass_context
def growth(ctx, system, system_file, series):
    """Reciprocal growth series as an exact rational function."""
    _require_system(system, system_file)
    payload = {"system": _system_payload(system, system_file)}
    if series is not None:
        payload["series_order"] = series
    body = ctx.obj["client"].post("/growth", payload)

    def human():
        click.echo(f"variables:   {', '.join(body['variables'])}")
        click.echo(f"numerator:   {body['numerator']}")
        click.echo(f"denominator: {body['denominator']}")
        if body.get("series"):
            click.echo("series coefficients:")
            for row in body["series"]:
                exps = " ".join(f"{k}^{v}" for k, v in
                                row["exponents"].items()) or "1"
                click.echo(f"  {exps}: {row['coefficient']}")

    rows = None
    if body.get("series"):
        rows = (["monomial", "coefficient"],
                [(json.dumps(r["exponents"]), r["coefficient"])
                 for r in body["series"]])
    _emit(ctx, body, human, rows)


@main.command()
@_with_system
@click.option("--precision", default=6, type=int)
@click.pass_context
def rho(ctx, system, system_file, precision):
    """Radius of convergence of a single-class system."""
    _require_system(system, system_file)
    body = ctx.obj["client"].post("/rho", {
        "system": _system_payload(system, system_file),
        "precision": precision})

    def human():
        if body["kind"] == "infinite-radius":
            click.echo("radius of convergence: infinite "
                       "(finite group, polynomial series)")
            return
        if body.get("exact"):
            click.echo(f"radius of convergence: {body['exact']} (exact)")
        else:
            click.echo("radius of convergence in "
                       f"[{body['low']}, {body['high']}]"
                       f" (width {body['interval_width']})")
        click.echo(f"decimal: {body['decimal']} "
                   f"(+/- {body['interval_width']})")
        if body.get("reciprocal_low"):
            click.echo(f"reciprocal threshold in "
                       f"[{body['reciprocal_low']}, "
                       f"{body['reciprocal_high']}]")

    _emit(ctx, body, human)


@main.command()
@_with_system
@click.option("--q", required=True,
              help="Positive rationals: '2', '2,1/3' or 't1=2,t2=1/3'.")
@click.pass_context
def region(ctx, system, system_file, q):
    """Classify a multiparameter against the convergence regions."""
    _require_system(system, system_file)
    body = ctx.obj["client"].post("/region", {
        "system": _system_payload(system, system_file),
        "q": _q_payload(q)})

    def human():
        click.echo(f"q: {body['q']}")
        click.echo(f"region: {body['tag']}")

    _emit(ctx, body, human)


@main.command()
@_with_system
@click.option("--q", required=True)
@click.option("--complex", "complex_", default=None,
              help="Builtin mirrored complex name or a .json file; "
                   "the default is the canonical contractible development.")
@click.option("--method", default="auto",
              type=click.Choice(["auto", "formula", "direct"]))
@click.option("--precision", default=6, type=int)
@click.pass_context
def betti(ctx, system, system_file, q, complex_, method, precision):
    """Weighted Betti numbers at a rational multiparameter."""
    _require_system(system, system_file)
    payload = {"system": _system_payload(system, system_file),
               "q": _q_payload(q), "method": method,
               "precision": precision}
    spec = _complex_payload(complex_)
    if spec is not None:
        payload["complex"] = spec
    body = ctx.obj["client"].post("/betti", payload)

    def human():
        click.echo(f"q: {body['q']}  region: {body['region']}  "
                   f"method: {body['method']}")
        for degree, value in sorted(body["degrees"].items(),
                                    key=lambda kv: int(kv[0])):
            click.echo(f"  b^{degree} = {value['exact']} "
                       f"({value['decimal']})")
        if not body["degrees"]:
            click.echo("  all Betti numbers vanish")
        click.echo(f"euler: {body['euler']['exact']} "
                   f"({body['euler']['decimal']})")

    rows = (["degree", "exact", "decimal"],
            [(d, v["exact"], v["decimal"])
             for d, v in sorted(body["degrees"].items(),
                                key=lambda kv: int(kv[0]))])
    _emit(ctx, body, human, rows)


@main.command()
@_with_system
@click.option("--q", required=True)
@click.option("--complex", "complex_", default=None)
@click.option("--precision", default=6, type=int)
@click.pass_context
def euler(ctx, system, system_file, q, complex_, precision):
    """Weighted Euler characteristic at a rational multiparameter."""
    _require_system(system, system_file)
    payload = {"system": _system_payload(system, system_file),
               "q": _q_payload(q), "precision": precision}
    spec = _complex_payload(complex_)
    if spec is not None:
        payload["complex"] = spec
    body = ctx.obj["client"].post("/euler", payload)

    def human():
        click.echo(f"q: {body['q']}")
        click.echo(f"euler characteristic: {body['value']['exact']} "
                   f"({body['value']['decimal']})")

    _emit(ctx, body, human)


@main.command()
@_with_system
@click.option("--max-length", required=True, type=int)
@click.option("--budget", default=None, type=int,
              help="Element-count budget.")
@click.option("--time-limit", default=None, type=float,
              help="Wall-clock budget in seconds.")
@click.option("--elements", is_flag=True,
              help="Include the canonical words themselves.")
@click.pass_context
def ball(ctx, system, system_file, max_length, budget, time_limit,
         elements):
    """Enumerate all elements up to a length, with budgets."""
    _require_system(system, system_file)
    body = ctx.obj["client"].post("/ball", {
        "system": _system_payload(system, system_file),
        "max_length": max_length, "budget": budget,
        "time_limit": time_limit, "include_elements": elements})

    def human():
        click.echo(f"histogram: {body['histogram']}")
        click.echo(f"total: {body['total']}  "
                   f"complete group: {body['complete']}")
        if body.get("elements"):
            for length, level in enumerate(body["elements"]):
                click.echo(f"  length {length}: "
                           + ", ".join(w or "e" for w in level))

    _emit(ctx, body, human,
          (["length", "count"],
           list(enumerate(body["histogram"]))))


@main.command()
@_with_system
@click.option("--word", required=True,
              help="Space-separated letters, e.g. 's t s'.")
@click.pass_context
def nf(ctx, system, system_file, word):
    """Canonical form and descent set of a word."""
    _require_system(system, system_file)
    body = ctx.obj["client"].post("/normal-form", {
        "system": _system_payload(system, system_file), "word": word})

    def human():
        click.echo(f"canonical word: {body['word'] or 'e'}")
        click.echo(f"length: {body['length']}")
        click.echo(f"descents: {' '.join(body['descents']) or '(none)'}")

    _emit(ctx, body, human)


@main.command()
@click.option("--check", is_flag=True, required=True,
              help="Run the Hecke identity suite.")
@click.option("--system", "systems_", multiple=True,
              help="Finite systems for the decomposition checks.")
@click.option("--q", default=None)
@click.option("--seed", default=0, type=int)
@click.pass_context
def hecke(ctx, check, systems_, q, seed):
    """Pass/fail table for the deformed-algebra identities."""
    payload = {"seed": seed}
    if systems_:
        payload["systems"] = list(systems_)
    if q is not None:
        payload["q"] = _q_payload(q)
    body = ctx.obj["client"].post("/hecke/check", payload)
    _emit_check_table(ctx, body)


def _emit_check_table(ctx, body):
    def human():
        for row in body["checks"]:
            mark = "PASS" if row["passed"] else "FAIL"
            detail = f"  [{row['detail']}]" if row["detail"] else ""
            click.echo(f"{mark}  {row['name']}{detail}")
        click.echo(f"=> {'all passed' if body['passed'] else 'FAILURES'}")

    _emit(ctx, body, human,
          (["name", "passed", "detail"],
           [(r["name"], r["passed"], r["detail"])
            for r in body["checks"]]))
    if not body["passed"]:
        sys.exit(1)


@main.command()
@click.option("--graph", default=None,
              help="Named graph: icosahedron, cycle-N, path-N, "
                   "octahedron-N.")
@click.option("--graph-file", default=None, type=click.Path(exists=True))
@click.option("--n", default=None, type=int,
              help="Dimension normalization (defaults to dim + 1).")
@click.pass_context
def hpoly(ctx, graph, graph_file, n):
    """f/h-polynomials of a flag complex and the growth-series identity."""
    if (graph is None) == (graph_file is None):
        raise click.UsageError("provide exactly one of --graph "
                               "or --graph-file")
    payload = {"graph": _graph_payload(graph, graph_file)}
    if n is not None:
        payload["n"] = n
    body = ctx.obj["client"].post("/hpoly", payload)

    def human():
        click.echo(f"f-coefficients: {body['f_coefficients']}")
        click.echo(f"h-coefficients: {body['h_coefficients']}")
        click.echo(f"identity holds: {body['identity_holds']}")
        click.echo(f"1/W numerator:   {body['inverse_numerator']}")
        click.echo(f"1/W denominator: {body['inverse_denominator']}")

    _emit(ctx, body, human)


@main.command()
@click.option("--graph", default=None)
@click.option("--graph-file", default=None, type=click.Path(exists=True))
@click.pass_context
def chi(ctx, graph, graph_file):
    """Weighted Euler characteristic of a flag complex, symbolically."""
    if (graph is None) == (graph_file is None):
        raise click.UsageError("provide exactly one of --graph "
                               "or --graph-file")
    body = ctx.obj["client"].post(
        "/chi", {"graph": _graph_payload(graph, graph_file)})

    def human():
        click.echo(f"numerator:   {body['numerator']}")
        click.echo(f"denominator: {body['denominator']}")

    _emit(ctx, body, human)


@main.command(name="example-existence")
@click.option("--m", default=10, type=int)
@click.pass_context
def example_existence_cmd(ctx, m):
    """The glued flag 3-sphere: threshold numerators and isolated roots."""
    body = ctx.obj["client"].post("/example-existence", {"m": m})

    def human():
        click.echo(f"m = {body['m']}")
        click.echo(f"capped-half numerator: "
                   f"{body['half_capped_numerator']}")
        click.echo(f"glued numerator:       {body['glued_numerator']}")
        click.echo("capped-half roots:")
        for r in body["half_capped_roots"]:
            click.echo(f"  [{r['low']}, {r['high']}] ~ {r['decimal']}")
        click.echo("glued roots:")
        for r in body["glued_roots"]:
            click.echo(f"  [{r['low']}, {r['high']}] ~ {r['decimal']}")

    rows = (["family", "low", "high", "decimal"],
            [("half", r["low"], r["high"], r["decimal"])
             for r in body["half_capped_roots"]]
            + [("glued", r["low"], r["high"], r["decimal"])
               for r in body["glued_roots"]])
    _emit(ctx, body, human, rows)


@main.command()
@click.option("--suite", default="all",
              help="all, coxeter, growth, complexes, hecke, weighted "
                   "or rightangled.")
@click.pass_context
def verify(ctx, suite):
    """Run the named invariant checks and print a pass/fail table."""
    body = ctx.obj["client"].post("/verify", {"suite": suite})
    _emit_check_table(ctx, body)


@main.command()
@_with_system
@click.option("--q-min", required=True)
@click.option("--q-max", required=True)
@click.option("--steps", default=20, type=int)
@click.pass_context
def scan(ctx, system, system_file, q_min, q_max, steps):
    """Sample formula Betti numbers along a parameter ray (plot-ready CSV)."""
    _require_system(system, system_file)
    body = ctx.obj["client"].post("/scan", {
        "system": _system_payload(system, system_file),
        "q_min": q_min, "q_max": q_max, "steps": steps})

    def human():
        for row in body["rows"]:
            if row.get("degrees") is not None:
                values = " ".join(f"b{d}={v}"
                                  for d, v in row["degrees"].items())
            else:
                values = f"({row['error']})"
            click.echo(f"q={row['q']:>12}  {row['region']:>15}  {values}")

    rows = (["q", "region", "degrees", "error"],
            [(r["q"], r["region"],
              json.dumps(r.get("degrees")) if r.get("degrees") else "",
              r.get("error") or "")
             for r in body["rows"]])
    _emit(ctx, body, human, rows)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
