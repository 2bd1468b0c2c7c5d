"""Named Coxeter systems and mirrored complexes used by the CLI and tests."""

from __future__ import annotations

from .complexes import MirroredComplex, SimplicialComplex
from .errors import FormatError
from .words import INF, CoxeterSystem


def _matrix(n, pairs, default=INF):
    m = [[default] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
    for (i, j), v in pairs.items():
        m[i][j] = v
        m[j][i] = v
    return m


def icosahedron_graph():
    """Vertex labels and edge set of the icosahedron 1-skeleton.

    Built as a pentagonal antiprism capped by two poles; 12 vertices,
    30 edges, every vertex of valence 5.
    """
    top = [f"u{i}" for i in range(5)]
    bottom = [f"l{i}" for i in range(5)]
    vertices = ["p+"] + top + bottom + ["p-"]
    edges = set()
    for i in range(5):
        edges.add(frozenset(("p+", top[i])))
        edges.add(frozenset(("p-", bottom[i])))
        edges.add(frozenset((top[i], top[(i + 1) % 5])))
        edges.add(frozenset((bottom[i], bottom[(i + 1) % 5])))
        edges.add(frozenset((top[i], bottom[i])))
        edges.add(frozenset((top[(i + 1) % 5], bottom[i])))
    return vertices, edges


def cycle_graph(n):
    vertices = [f"s{i}" for i in range(n)]
    edges = {frozenset((vertices[i], vertices[(i + 1) % n]))
             for i in range(n)}
    return vertices, edges


def right_angled_system(vertices, edges, single_class=True):
    """Right-angled system of a simple graph: 2 on edges, infinity off them."""
    n = len(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    m = [[INF] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
    for e in edges:
        a, b = tuple(e)
        m[index[a]][index[b]] = 2
        m[index[b]][index[a]] = 2
    classes = {v: "t" for v in vertices} if single_class else None
    return CoxeterSystem(vertices, m, classes)


def _a1():
    return CoxeterSystem(["s"], [[1]])


def _a2():
    return CoxeterSystem(["s", "t"], _matrix(2, {(0, 1): 3}))


def _b2():
    return CoxeterSystem(["s", "t"], _matrix(2, {(0, 1): 4}))


def _b3():
    return CoxeterSystem(
        ["s1", "s2", "s3"],
        _matrix(3, {(0, 1): 4, (1, 2): 3, (0, 2): 2}))


def _a3():
    return CoxeterSystem(
        ["s1", "s2", "s3"],
        _matrix(3, {(0, 1): 3, (1, 2): 3, (0, 2): 2}))


def _h3():
    return CoxeterSystem(
        ["s1", "s2", "s3"],
        _matrix(3, {(0, 1): 5, (1, 2): 3, (0, 2): 2}))


def _a1xa1():
    return CoxeterSystem(["s", "t"], _matrix(2, {(0, 1): 2}))


def _dihedral_infinite():
    return CoxeterSystem(["s", "t"], _matrix(2, {}))


def _product_dihedral(n):
    gens = []
    pairs = {}
    for k in range(n):
        gens += [f"a{k + 1}", f"b{k + 1}"]
    size = 2 * n
    for i in range(size):
        for j in range(i + 1, size):
            same_factor = i // 2 == j // 2
            pairs[(i, j)] = INF if same_factor else 2
    return CoxeterSystem(gens, _matrix(size, pairs))


def _k_points(k):
    vertices = [f"s{i}" for i in range(k)]
    return right_angled_system(vertices, set())


def _pentagon():
    return right_angled_system(*cycle_graph(5))


def _square():
    return right_angled_system(*cycle_graph(4))


def _dodecahedral():
    return right_angled_system(*icosahedron_graph())


def _triangle_333():
    return CoxeterSystem(
        ["s1", "s2", "s3"],
        _matrix(3, {(0, 1): 3, (1, 2): 3, (0, 2): 3}))


_SYSTEM_BUILDERS = {
    "a1": _a1,
    "a2": _a2,
    "a3": _a3,
    "b2": _b2,
    "b3": _b3,
    "h3": _h3,
    "a1xa1": _a1xa1,
    "dihedral-infinite": _dihedral_infinite,
    "product-dihedral-2": lambda: _product_dihedral(2),
    "product-dihedral-3": lambda: _product_dihedral(3),
    "product-dihedral-4": lambda: _product_dihedral(4),
    "k-points-3": lambda: _k_points(3),
    "k-points-4": lambda: _k_points(4),
    "k-points-5": lambda: _k_points(5),
    "pentagon": _pentagon,
    "square": _square,
    "dodecahedral": _dodecahedral,
    "triangle-(3,3,3)": _triangle_333,
}

_ALIASES = {
    "dihedral-inf": "dihedral-infinite",
    "triangle-333": "triangle-(3,3,3)",
}


def builtin_names():
    return sorted(_SYSTEM_BUILDERS)


def builtin_system(name):
    key = _ALIASES.get(name, name)
    try:
        return _SYSTEM_BUILDERS[key]()
    except KeyError:
        raise FormatError(
            f"unknown builtin system {name!r}; "
            f"available: {', '.join(builtin_names())}") from None


# -- mirrored complexes -------------------------------------------------------

def interval_complex(system):
    """An edge with one mirrored endpoint per generator of a rank-1 system.

    For the rank-1 system this is the chamber; kept as a named builtin
    because it is the smallest interesting mirror structure.
    """
    (s,) = system.generators
    base = SimplicialComplex.from_facets(["v0", "v1"], [("v0", "v1")])
    return MirroredComplex(base, {s: frozenset(["v1"])})


def circle_complex(system):
    """Two-edge path whose endpoints are mirrored by the first two generators.

    The associated reflection development for a rank-2 system is a circle.
    """
    if system.rank < 2:
        raise FormatError("circle complex needs a rank-2 system")
    s, t = system.generators[:2]
    base = SimplicialComplex.from_facets(
        ["v0", "v1", "v2"], [("v0", "v1"), ("v1", "v2")])
    return MirroredComplex(base, {s: frozenset(["v0"]),
                                  t: frozenset(["v2"])})


_COMPLEX_BUILDERS = {
    "interval": interval_complex,
    "circle": circle_complex,
}


def builtin_complex(name, system):
    try:
        builder = _COMPLEX_BUILDERS[name]
    except KeyError:
        raise FormatError(
            f"unknown builtin complex {name!r}; "
            f"available: {', '.join(sorted(_COMPLEX_BUILDERS))}") from None
    return builder(system)


def builtin_complex_names():
    return sorted(_COMPLEX_BUILDERS)
