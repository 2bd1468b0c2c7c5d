"""Right-angled specializations: graph-defined systems, the single-parameter
Betti calculus on joins/cones/suspensions, h-polynomial identities and the
four-dimensional gluing example with its threshold roots.

Betti numbers of right-angled systems built from points by joins are
piecewise rational functions of one parameter q with exact rational
breakpoints; pieces are stored with closed-form rational functions and
evaluation at a breakpoint checks that both sides agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .builtin_systems import right_angled_system
from .complexes import SimplicialComplex, h_polynomial
from .errors import FormatError
from .growth import inverse_growth_series
from .polynomials import Polynomial, RationalFunction
from .roots import isolate_positive_roots


def racg_from_graph(vertices, edges):
    """Right-angled system of a simple graph (single parameter class)."""
    return right_angled_system(list(vertices),
                               {frozenset(e) for e in edges})


def flag_complex(vertices, edges):
    """The clique complex of a graph."""
    edges = {frozenset(e) for e in edges}
    faces = [tuple(e) for e in edges] + [(v,) for v in vertices]
    # grow cliques upward
    current = [frozenset(e) for e in edges]
    while current:
        bigger = set()
        for c in current:
            for v in vertices:
                if v in c:
                    continue
                if all(frozenset((v, u)) in edges for u in c):
                    bigger.add(c | {v})
        faces.extend(tuple(sorted(c)) for c in bigger)
        current = bigger
    return SimplicialComplex(vertices, faces)


def chi_q(L: SimplicialComplex) -> RationalFunction:
    """The weighted Euler characteristic of the right-angled system of a
    flag complex, as an exact rational function of the single parameter:
    the face polynomial composed with -q/(1+q)."""
    if not L.is_flag():
        raise FormatError("complex is not flag: some clique is not a face")
    q = Polynomial.variable("q")
    ratio = RationalFunction(-q, 1 + q)
    total = RationalFunction.constant(0)
    for f in L.faces:
        total = total + ratio ** len(f)
    return total


def verify_hpoly_identity(L: SimplicialComplex, n: int) -> dict:
    """Exact equality of the reciprocal growth series of the right-angled
    system of L with h_L(-t)/(1+t)^n."""
    if not L.is_flag():
        raise FormatError("complex is not flag")
    system = right_angled_system(
        list(L.vertices),
        {f for f in L.faces if len(f) == 2})
    inv = inverse_growth_series(system)
    t = Polynomial.variable("t")
    h = h_polynomial(L, n)
    negated = h.substitute({"t": Polynomial((("t"),), {(1,): Fraction(-1)})})
    if isinstance(negated, Fraction):
        negated = Polynomial.constant(negated)
    rhs = RationalFunction(negated, (1 + t) ** n)
    return {
        "holds": inv == rhs,
        "inverse_series": inv,
        "h_coefficients": h.univariate_coefficients(),
        "rhs": rhs,
    }


# -- piecewise rational functions of one parameter -----------------------------------


@dataclass
class PiecewiseRational:
    """Rational functions of q on the open intervals cut by breakpoints.

    pieces[j] applies on (breakpoints[j-1], breakpoints[j]) with the
    conventions breakpoints[-1] = 0 and breakpoints[len] = infinity.
    Values at a breakpoint come from both neighbouring pieces, which must
    agree there.
    """

    breakpoints: list
    pieces: list

    def __post_init__(self):
        assert len(self.pieces) == len(self.breakpoints) + 1
        assert all(a < b for a, b in zip(self.breakpoints,
                                         self.breakpoints[1:]))

    @staticmethod
    def constant(value):
        return PiecewiseRational([], [RationalFunction.constant(value)])

    def simplified(self):
        breakpoints = []
        pieces = [self.pieces[0]]
        for b, p in zip(self.breakpoints, self.pieces[1:]):
            if p == pieces[-1]:
                continue
            breakpoints.append(b)
            pieces.append(p)
        return PiecewiseRational(breakpoints, pieces)

    def evaluate(self, q):
        q = Fraction(q)
        if q <= 0:
            raise ValueError("the parameter must be positive")
        for j, b in enumerate(self.breakpoints):
            if q < b:
                return self.pieces[j].evaluate({"q": q})
            if q == b:
                left = self.pieces[j].evaluate({"q": q})
                right = self.pieces[j + 1].evaluate({"q": q})
                assert left == right, (
                    f"piecewise value mismatch at breakpoint {b}: "
                    f"{left} vs {right}")
                return left
        return self.pieces[-1].evaluate({"q": q})

    def __add__(self, other):
        return _combine(self, other, lambda a, b: a + b)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction)):
            factor = other if isinstance(other, RationalFunction) \
                else RationalFunction.constant(other)
            return PiecewiseRational(
                list(self.breakpoints), [p * factor for p in self.pieces])
        return _combine(self, other, lambda a, b: a * b)

    def __eq__(self, other):
        a = self.simplified()
        b = other.simplified()
        return a.breakpoints == b.breakpoints and a.pieces == b.pieces

    def is_zero(self):
        return all(p.is_zero() for p in self.pieces)


def _combine(a: PiecewiseRational, b: PiecewiseRational, op):
    cuts = sorted(set(a.breakpoints) | set(b.breakpoints))
    pieces = []
    for j in range(len(cuts) + 1):
        lo = cuts[j - 1] if j > 0 else Fraction(0)
        hi = cuts[j] if j < len(cuts) else None
        # a probe inside the open interval selects the right pieces
        probe = (lo + hi) / 2 if hi is not None else lo + 1
        pieces.append(op(_piece_at(a, probe), _piece_at(b, probe)))
    return PiecewiseRational(cuts, pieces)


def _piece_at(pw: PiecewiseRational, q):
    for j, b in enumerate(pw.breakpoints):
        if q < b:
            return pw.pieces[j]
    return pw.pieces[-1]


ZERO_PIECE = RationalFunction.constant(0)


@dataclass
class BettiTable:
    """Per-degree piecewise Betti numbers of a right-angled system."""

    degrees: dict = field(default_factory=dict)

    def degree(self, i):
        return self.degrees.get(
            i, PiecewiseRational.constant(0))

    def max_degree(self):
        return max((i for i, p in self.degrees.items()
                    if not p.is_zero()), default=0)

    def alternating_sum_piecewise(self):
        total = PiecewiseRational.constant(0)
        for i, p in self.degrees.items():
            total = total + p * Fraction((-1) ** i)
        return total

    def evaluate(self, q):
        return {i: v for i, v in
                ((i, p.evaluate(q)) for i, p in sorted(self.degrees.items()))
                if v != 0}

    def cleaned(self):
        return BettiTable({i: p.simplified()
                           for i, p in self.degrees.items()
                           if not p.is_zero()})


def _q():
    return Polynomial.variable("q")


def betti_points(k: int) -> BettiTable:
    """Betti table of the free product of k involutions (k disjoint points)."""
    if k < 1:
        raise FormatError("need at least one point")
    q = _q()
    if k == 1:
        return BettiTable(
            {0: PiecewiseRational([], [RationalFunction(1, 1 + q)])})
    threshold = Fraction(1, k - 1)
    b0 = PiecewiseRational(
        [threshold],
        [RationalFunction(1 - (k - 1) * q, 1 + q), ZERO_PIECE])
    b1 = PiecewiseRational(
        [threshold],
        [ZERO_PIECE, RationalFunction((k - 1) * q - 1, 1 + q)])
    return BettiTable({0: b0, 1: b1})


def betti_empty() -> BettiTable:
    return BettiTable({0: PiecewiseRational.constant(1)})


def betti_join(a: BettiTable, b: BettiTable) -> BettiTable:
    out = {}
    for i, pa in a.degrees.items():
        for j, pb in b.degrees.items():
            current = out.get(i + j)
            product = pa * pb
            out[i + j] = product if current is None else current + product
    return BettiTable(out).cleaned()


def betti_cone(a: BettiTable) -> BettiTable:
    return betti_join(betti_points(1), a)


def betti_suspension(a: BettiTable) -> BettiTable:
    return betti_join(betti_points(2), a)


def betti_octahedron(n: int) -> BettiTable:
    out = betti_empty()
    for _ in range(n):
        out = betti_suspension(out)
    return out


def _point_count(expr):
    """Number of vertices if the expression is a discrete set, else None."""
    kind = expr[0]
    if kind == "points":
        return expr[1]
    if kind == "point":
        return 1
    if kind == "empty":
        return 0
    if kind == "disjoint_union":
        a = _point_count(expr[1])
        b = _point_count(expr[2])
        return None if a is None or b is None else a + b
    return None


def betti_calculus(expr) -> BettiTable:
    """Evaluate an expression tree of join/cone/suspension/disjoint-union
    constructors over discrete leaves.

    Expressions are nested tuples: ("points", k), ("empty",), ("point",),
    ("octahedron", n), ("join", e1, e2), ("cone", e), ("suspension", e),
    ("disjoint_union", e1, e2).  Disjoint unions are supported for
    discrete operands, where they stay inside the exact rational
    breakpoint structure; unions of higher complexes introduce algebraic
    thresholds and are refused.
    """
    kind = expr[0]
    if kind == "points":
        return betti_points(expr[1])
    if kind == "point":
        return betti_points(1)
    if kind == "empty":
        return betti_empty()
    if kind == "octahedron":
        return betti_octahedron(expr[1])
    if kind == "join":
        return betti_join(betti_calculus(expr[1]), betti_calculus(expr[2]))
    if kind == "cone":
        return betti_cone(betti_calculus(expr[1]))
    if kind == "suspension":
        return betti_suspension(betti_calculus(expr[1]))
    if kind == "disjoint_union":
        count = _point_count(expr)
        if count is None:
            raise FormatError(
                "disjoint unions are only supported for discrete operands: "
                "thresholds of general unions are not rational breakpoints")
        if count == 0:
            return betti_empty()
        return betti_points(count)
    raise FormatError(f"unknown constructor {kind!r}")


def chi_of_expression(expr) -> RationalFunction:
    """Weighted Euler characteristic of an expression tree, computed
    multiplicatively (joins multiply, the k-point leaf is explicit)."""
    kind = expr[0]
    q = _q()
    if kind == "points":
        k = expr[1]
        return RationalFunction(1 + q - k * q, 1 + q)
    if kind == "point":
        return RationalFunction(1, 1 + q)
    if kind == "empty":
        return RationalFunction.constant(1)
    if kind == "octahedron":
        return RationalFunction(1 - q, 1 + q) ** expr[1]
    if kind == "join":
        return chi_of_expression(expr[1]) * chi_of_expression(expr[2])
    if kind == "cone":
        return RationalFunction(1, 1 + q) * chi_of_expression(expr[1])
    if kind == "suspension":
        return RationalFunction(1 - q, 1 + q) * chi_of_expression(expr[1])
    if kind == "disjoint_union":
        return chi_of_expression(expr[1]) + chi_of_expression(expr[2]) - 1
    raise FormatError(f"unknown constructor {kind!r}")


# -- the gluing example ------------------------------------------------------------


def _mgon_chi(m):
    q = _q()
    return RationalFunction(1 - (m - 2) * q + q ** 2, (1 + q) ** 2)


def _interval_chi(l):
    # a triangulated interval with l vertices: l vertices, l-1 edges
    q = _q()
    return RationalFunction((1 + q) ** 2 - l * q * (1 + q) + (l - 1) * q ** 2,
                            (1 + q) ** 2)


def example_existence(k: int = 4, m: int = 10) -> dict:
    """The glued flag 3-sphere whose weighted cohomology refuses to sit in
    one degree: assembles the Euler characteristics of the building blocks
    by inclusion-exclusion and isolates the threshold roots.

    ``k`` must be 4 (the boundary square that allows the double);
    ``m`` at least 5 keeps all blocks flag.
    """
    if k != 4:
        raise FormatError("the gluing needs the k = 4 boundary circuit")
    if m < 5:
        raise FormatError("the annulus construction needs m >= 5")
    q = _q()
    one = RationalFunction.constant(1)
    sphere0 = RationalFunction(1 - q, 1 + q)

    chi_pm = _mgon_chi(m)
    chi_i4 = _interval_chi(4)
    # annulus between a k-gon and an m-gon with no interior vertices:
    # k+m vertices, 2(k+m) edges, k+m triangles
    n_ = k + m
    chi_annulus = one - RationalFunction(n_ * q, 1 + q) \
        + RationalFunction(2 * n_ * q ** 2, (1 + q) ** 2) \
        - RationalFunction(n_ * q ** 3, (1 + q) ** 3)
    chi_s_annulus = sphere0 * chi_annulus
    chi_tube = chi_i4 * chi_pm          # I4 * P_m filling
    chi_s_pm = sphere0 * chi_pm
    chi_half = chi_s_annulus + chi_tube - chi_s_pm   # the 3-disk A
    chi_m = sphere0 ** 3                # the octahedral equator SP_4
    chi_half_capped = chi_half - RationalFunction(q, 1 + q) * chi_m
    chi_glued = 2 * chi_half - chi_m

    def root_report(rf):
        roots = isolate_positive_roots(rf.numerator)
        for r in roots:
            r.refine(Fraction(1, 10 ** 7))
        return roots

    return {
        "m": m,
        "chi_annulus": chi_annulus,
        "chi_suspended_annulus": chi_s_annulus,
        "chi_tube": chi_tube,
        "chi_suspended_polygon": chi_s_pm,
        "chi_half": chi_half,
        "chi_half_capped": chi_half_capped,
        "chi_equator": chi_m,
        "chi_glued": chi_glued,
        "half_capped_numerator":
            chi_half_capped.numerator.univariate_coefficients(),
        "glued_numerator": chi_glued.numerator.univariate_coefficients(),
        "half_capped_roots": root_report(chi_half_capped),
        "glued_roots": root_report(chi_glued),
    }
