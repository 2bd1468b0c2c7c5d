"""Simplicial complexes, mirror structures, nerves, chambers and f/h-polynomials.

Cohomology here is always over the rationals, computed by exact sparse
Gaussian elimination on simplicial (co)boundary matrices.  Faces are
oriented by sorted vertex position; incidence signs come from position
parity.
"""

from __future__ import annotations

from .errors import FormatError
from .polynomials import Polynomial
from .words import CoxeterSystem


class SimplicialComplex:
    """Finite abstract simplicial complex; faces include the empty face."""

    def __init__(self, vertices, faces):
        self.vertices = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise FormatError("duplicate vertex labels")
        closed = {frozenset()}
        for f in faces:
            fs = frozenset(f)
            if not fs <= set(self.vertices):
                raise FormatError(f"face {sorted(fs)} uses unknown vertices")
            closed.add(fs)
        # close under subsets
        stack = [f for f in closed if f]
        while stack:
            f = stack.pop()
            for v in f:
                sub = f - {v}
                if sub not in closed:
                    closed.add(sub)
                    stack.append(sub)
        self.faces = frozenset(closed)
        self.dimension = max((len(f) - 1 for f in self.faces), default=-1)

    @staticmethod
    def from_facets(vertices, facets):
        return SimplicialComplex(vertices, facets)

    @staticmethod
    def empty():
        return SimplicialComplex((), ())

    def faces_of_dim(self, i):
        """Sorted orientation-ready tuples of the i-dimensional faces."""
        out = [tuple(sorted(f, key=self._index.get))
               for f in self.faces if len(f) == i + 1]
        out.sort(key=lambda f: tuple(self._index[v] for v in f))
        return out

    def face_counts(self):
        """f-vector (f_0, ..., f_dim); empty face not included."""
        counts = [0] * (self.dimension + 1)
        for f in self.faces:
            if f:
                counts[len(f) - 1] += 1
        return counts

    def euler_characteristic(self):
        return sum((-1) ** i * c for i, c in enumerate(self.face_counts()))

    def has_face(self, f):
        return frozenset(f) in self.faces

    def full_subcomplex(self, vertex_subset):
        keep = frozenset(vertex_subset)
        return SimplicialComplex(
            [v for v in self.vertices if v in keep],
            [f for f in self.faces if f and f <= keep])

    def is_flag(self):
        """Every pairwise-connected vertex set spans a face."""
        edges = {f for f in self.faces if len(f) == 2}
        # grow cliques and check
        cliques = [frozenset([v]) for v in self.vertices]
        while cliques:
            nxt = set()
            for c in cliques:
                for v in self.vertices:
                    if v in c:
                        continue
                    if all(frozenset((v, u)) in edges for u in c):
                        cand = c | {v}
                        if cand not in nxt:
                            if cand not in self.faces:
                                return False
                            nxt.add(cand)
            cliques = nxt
        return True

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex)
                and set(self.vertices) == set(other.vertices)
                and self.faces == other.faces)

    def __hash__(self):
        return hash((frozenset(self.vertices), self.faces))

    def __repr__(self):
        return (f"SimplicialComplex(dim={self.dimension}, "
                f"f={self.face_counts()})")


class MirroredComplex:
    """A complex together with one full subcomplex of mirrors per generator."""

    def __init__(self, base, mirrors):
        self.base = base
        self.mirrors = {s: frozenset(vs) for s, vs in mirrors.items()}
        for s, vs in self.mirrors.items():
            if not vs <= set(base.vertices):
                raise FormatError(f"mirror {s!r} uses unknown vertices")

    def mirror_generators(self):
        return tuple(self.mirrors)

    def cell_type(self, face):
        """S(c): generators whose mirror contains the face."""
        fs = frozenset(face)
        return frozenset(s for s, vs in self.mirrors.items() if fs <= vs)

    def vertex_types(self):
        return {v: self.cell_type((v,)) for v in self.base.vertices}

    def validate_against(self, system):
        """Check mirrors exist for system generators and W-finiteness."""
        for s in self.mirrors:
            if s not in system.generators:
                raise FormatError(f"mirror {s!r} is not a generator")
        for v in self.base.vertices:
            t = self.cell_type((v,))
            if not system.is_spherical(t):
                raise FormatError(
                    f"vertex {v!r} lies on mirrors {sorted(t)} whose "
                    "subgroup is infinite (mirror structure not proper)")

    def mirror_union_faces(self, subset):
        """Faces contained in some mirror indexed by ``subset``."""
        subset = frozenset(subset)
        out = set()
        for s in subset:
            vs = self.mirrors.get(s, frozenset())
            for f in self.base.faces:
                if f and f <= vs:
                    out.add(f)
        return out

    def __repr__(self):
        return f"MirroredComplex({self.base!r}, mirrors={sorted(self.mirrors)})"


# -- nerve and chamber ---------------------------------------------------------


def nerve(system: CoxeterSystem) -> SimplicialComplex:
    """Vertex set = generators; faces = nonempty spherical subsets."""
    poset = system.spherical_subsets()
    return SimplicialComplex(system.generators,
                             [tuple(T) for T in poset if T])


def chamber(system: CoxeterSystem) -> MirroredComplex:
    """Order complex of the spherical-subset poset, with its mirrors.

    Vertices are the spherical subsets themselves (the empty set included);
    faces are chains.  The mirror of a generator s is the full subcomplex
    on the vertices containing s.
    """
    poset = system.spherical_subsets()
    labels = {T: _chain_label(system, T) for T in poset}
    verts = [labels[T] for T in poset.subsets]
    by_size = sorted(poset.subsets, key=len)
    # chains via DFS over the inclusion order
    chains = []

    def grow(chain, last):
        chains.append(tuple(labels[T] for T in chain))
        for T in by_size:
            if len(T) > len(last) and last < T:
                grow(chain + [T], T)

    for T in by_size:
        grow([T], T)
    base = SimplicialComplex(verts, chains)
    mirrors = {s: frozenset(labels[T] for T in poset if s in T)
               for s in system.generators}
    return MirroredComplex(base, mirrors)


def _chain_label(system, T):
    if not T:
        return "()"
    return "(" + ",".join(sorted(T, key=system.generators.index)) + ")"


# -- exact cohomology ----------------------------------------------------------


def _sparse_rank(rows):
    """Rank of a sparse integer matrix given as a list of {col: coeff} rows.

    Fraction-free elimination: pivot rows are kept mutually reduced (no
    pivot column appears in any other pivot row) and gcd-normalized, so
    eliminating a working row strictly shrinks its set of pivot columns
    while all arithmetic stays in the integers.
    """
    from math import gcd

    def normalize(row):
        g = 0
        for v in row.values():
            g = gcd(g, v)
            if g == 1:
                return row
        if g > 1:
            for c in row:
                row[c] //= g
        return row

    rank = 0
    pivots = {}  # col -> reduced integer row
    for original in rows:
        row = {c: int(v) for c, v in original.items() if v}
        while row:
            hit = next((c for c in row if c in pivots), None)
            if hit is None:
                break
            factor = row.pop(hit)
            pivot = pivots[hit]
            lead = pivot[hit]
            if factor % lead == 0:
                mult, scale = factor // lead, 1
            else:
                mult, scale = factor, lead
            for c in row:
                row[c] *= scale
            for c, v in pivot.items():
                if c == hit:
                    continue
                s = row.get(c, 0) - mult * v
                if s:
                    row[c] = s
                else:
                    row.pop(c, None)
            normalize(row)
        if not row:
            continue
        col = min(row)
        new_pivot = normalize(row)
        lead = new_pivot[col]
        for other in pivots.values():
            if col in other:
                factor = other.pop(col)
                if factor % lead == 0:
                    mult, scale = factor // lead, 1
                else:
                    mult, scale = factor, lead
                if scale != 1:
                    for c in other:
                        other[c] *= scale
                for c, v in new_pivot.items():
                    if c == col:
                        continue
                    s = other.get(c, 0) - mult * v
                    if s:
                        other[c] = s
                    else:
                        other.pop(c, None)
                normalize(other)
        pivots[col] = new_pivot
        rank += 1
    return rank


def _coboundary_rows(kept_lower, kept_upper, index_lower):
    """Rows of delta: one row per upper face, entries over lower faces."""
    rows = []
    for upper in kept_upper:
        row = {}
        for j in range(len(upper)):
            face = upper[:j] + upper[j + 1:]
            k = index_lower.get(face)
            if k is not None:
                row[k] = (-1) ** j
        rows.append(row)
    return rows


def relative_betti_numbers(Z: MirroredComplex, U) -> list:
    """Dimensions of the rational cohomology of the pair (Z, Z^U).

    Z^U is the union of the mirrors indexed by U.  Returns one integer
    per degree 0..dim Z.
    """
    base = Z.base
    excluded = Z.mirror_union_faces(U)
    kept = []
    for i in range(base.dimension + 1):
        kept.append([f for f in base.faces_of_dim(i)
                     if frozenset(f) not in excluded])
    dims = [len(k) for k in kept]
    ranks = []
    for i in range(base.dimension + 1):
        upper = kept[i + 1] if i + 1 <= base.dimension else []
        index_lower = {f: k for k, f in enumerate(kept[i])}
        ranks.append(_sparse_rank(
            _coboundary_rows(kept[i], upper, index_lower)))
    betti = []
    for i in range(base.dimension + 1):
        rank_in = ranks[i - 1] if i > 0 else 0
        kernel = dims[i] - ranks[i]
        betti.append(kernel - rank_in)
    return betti


def betti_numbers(L: SimplicialComplex) -> list:
    """Absolute rational cohomology dimensions of a complex."""
    return relative_betti_numbers(MirroredComplex(L, {}), ())


# -- f- and h-polynomials --------------------------------------------------------


def f_polynomial(L: SimplicialComplex) -> Polynomial:
    """Sum of t^card(T) over all faces T, the empty face contributing 1."""
    t = Polynomial.variable("t")
    total = Polynomial.constant(0)
    for f in L.faces:
        total = total + t ** len(f)
    return total


def h_polynomial(L: SimplicialComplex, n: int) -> Polynomial:
    """(1-t)^n f_L(t/(1-t)), expanded exactly.

    ``n`` must equal dim L + 1 (the number of vertices of a top face).
    """
    if n != L.dimension + 1:
        raise FormatError(
            f"h-polynomial normalization needs n = dim L + 1 = "
            f"{L.dimension + 1}, got {n}")
    t = Polynomial.variable("t")
    counts = [0] * (n + 1)
    for f in L.faces:
        counts[len(f)] += 1
    total = Polynomial.constant(0)
    for i, c in enumerate(counts):
        total = total + c * t ** i * (1 - t) ** (n - i)
    return total
