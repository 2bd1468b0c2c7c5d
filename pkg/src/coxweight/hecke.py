"""Hecke-algebra arithmetic and its finite-dimensional weighted realization.

Products follow the generator deformation rule e_s^2 = (q_s - 1)e_s + q_s;
coefficients are exact rationals for a numeric multiparameter and exact
rational functions in symbolic mode.  Square roots of q never appear:
all orthogonality runs through the diagonal inner product whose Gram
matrix has entries q_w.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InfiniteGroupError,
    NonInvariantSubspaceError,
    NotSphericalError,
)
from .linalg import (
    Echelon,
    WeightedProjector,
    intersect_spans,
    span_equal,
    weighted_complement_basis,
    zeros,
)
from .polynomials import RationalFunction
from .words import Element


class QParams:
    """A multiparameter: one positive rational (or one variable) per class."""

    def __init__(self, values, symbolic=False):
        self.values = dict(values)
        self.symbolic = symbolic

    @staticmethod
    def numeric(system, mapping):
        out = {}
        for label in system.class_labels:
            value = Fraction(mapping[label])
            if value <= 0:
                raise ValueError(f"q for class {label!r} must be positive")
            out[label] = value
        return QParams(out)

    @staticmethod
    def uniform(system, value):
        return QParams.numeric(
            system, {label: value for label in system.class_labels})

    @staticmethod
    def symbolic_for(system):
        return QParams(
            {label: RationalFunction.variable(label)
             for label in system.class_labels},
            symbolic=True)

    def of(self, system, s):
        return self.values[system.class_of(s)]

    def inverse(self):
        return QParams({label: 1 / v for label, v in self.values.items()},
                       symbolic=self.symbolic)

    def element_weight(self, system, element):
        total = Fraction(1)
        for s in element.word:
            total = total * self.of(system, s)
        return total

    def as_assignment(self):
        return dict(self.values)


class HeckeElement:
    """Finitely supported coefficient map on canonical group elements."""

    def __init__(self, system, coeffs=None):
        self.system = system
        self.coeffs = {}
        for w, c in (coeffs or {}).items():
            if c != 0:
                self.coeffs[w] = c

    @staticmethod
    def basis(system, word=()):
        return HeckeElement(system,
                            {system.normal_form(word): Fraction(1)})

    @staticmethod
    def unit(system):
        return HeckeElement(system, {Element(()): Fraction(1)})

    def coefficient(self, element):
        return self.coeffs.get(element, Fraction(0))

    def support(self):
        return set(self.coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w, 0) + c
            if s != 0:
                out[w] = s
            else:
                out.pop(w, None)
        return HeckeElement(self.system, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor):
        return HeckeElement(
            self.system, {w: factor * c for w, c in self.coeffs.items()})

    def __eq__(self, other):
        return (isinstance(other, HeckeElement)
                and self.system == other.system
                and self.coeffs == other.coeffs)

    def __hash__(self):
        raise TypeError("HeckeElement is not hashable")

    def __repr__(self):
        body = " + ".join(f"({c})e[{w.serialize() or 'e'}]"
                          for w, c in sorted(
                              self.coeffs.items(),
                              key=lambda kv: (kv[0].length, kv[0].word)))
        return f"HeckeElement({body or '0'})"


def _times_generator(x: HeckeElement, s, q: QParams) -> HeckeElement:
    system = x.system
    qs = q.of(system, s)
    out = {}

    def bump(w, c):
        t = out.get(w, 0) + c
        if t != 0:
            out[w] = t
        else:
            out.pop(w, None)

    step = Element((s,))
    for w, c in x.coeffs.items():
        ws = system.multiply(w, step)
        if ws.length > w.length:
            bump(ws, c)
        else:
            bump(ws, c * qs)
            bump(w, c * (qs - 1))
    return HeckeElement(system, out)


def hecke_multiply(x: HeckeElement, y: HeckeElement, q: QParams) \
        -> HeckeElement:
    """Product in the deformed group algebra for the multiparameter q."""
    system = x.system
    total = HeckeElement(system)
    for v, cv in y.coeffs.items():
        cur = x.scale(cv)
        for s in v.word:
            cur = _times_generator(cur, s, q)
        total = total + cur
    return total


def star(x: HeckeElement) -> HeckeElement:
    """The anti-involution sending e_w to e_{w^{-1}}."""
    return HeckeElement(
        x.system,
        {x.system.inverse(w): c for w, c in x.coeffs.items()})


def j_iso(x: HeckeElement, q: QParams) -> HeckeElement:
    """Algebra isomorphism onto the inverse-parameter algebra:
    e_w -> (-1)^l(w) q_w e_w."""
    return HeckeElement(
        x.system,
        {w: c * w.sign * q.element_weight(x.system, w)
         for w, c in x.coeffs.items()})


def inner_product(x: HeckeElement, y: HeckeElement, q: QParams):
    total = 0
    for w, c in x.coeffs.items():
        d = y.coeffs.get(w)
        if d is not None:
            total = total + c * d * q.element_weight(x.system, w)
    return total


def _subgroup_elements(system, T):
    if not system.is_spherical(T):
        raise NotSphericalError(f"{sorted(T)} is not spherical")
    sub = system.subsystem(T)
    ball = sub.enumerate_all()
    out = []
    for level in ball.elements:
        for e in level:
            out.append(system.normal_form(e.word))
    return out


def subgroup_growth_value(system, T, q: QParams):
    """W_T(q): the q-weighted size of the finite subgroup on T."""
    total = 0
    for w in _subgroup_elements(system, T):
        total = total + q.element_weight(system, w)
    return total


def idempotent_a(system, T, q: QParams) -> HeckeElement:
    """Weighted averaging idempotent of a spherical subset."""
    members = _subgroup_elements(system, T)
    norm = 0
    for w in members:
        norm = norm + q.element_weight(system, w)
    inv = 1 / norm if isinstance(norm, RationalFunction) \
        else Fraction(1) / norm
    return HeckeElement(system, {w: inv for w in members})


def idempotent_h(system, T, q: QParams) -> HeckeElement:
    """Weighted alternating idempotent of a spherical subset."""
    members = _subgroup_elements(system, T)
    qinv = q.inverse()
    norm = 0
    for w in members:
        norm = norm + qinv.element_weight(system, w)
    coeffs = {}
    for w in members:
        coeffs[w] = w.sign * qinv.element_weight(system, w) / norm
    return HeckeElement(system, coeffs)


# -- finite-dimensional realization -----------------------------------------------


class FiniteHeckeSpace:
    """The weighted regular module of a finite system at a numeric q."""

    def __init__(self, system, q: QParams):
        if q.symbolic:
            raise ValueError("finite realization needs numeric q")
        if not system.is_spherical(system.generators):
            raise InfiniteGroupError(
                "finite realization requires a finite Coxeter group")
        self.system = system
        self.q = q
        ball = system.enumerate_all()
        self.elements = [e for level in ball.elements for e in level]
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.weights = [q.element_weight(system, e) for e in self.elements]
        self.dim = len(self.elements)
        self._subspace_cache = {}

    def vector(self, x: HeckeElement):
        v = zeros(self.dim)
        for w, c in x.coeffs.items():
            v[self.index[w]] = Fraction(c)
        return v

    def element_from_vector(self, v):
        return HeckeElement(
            self.system,
            {e: c for e, c in zip(self.elements, v) if c != 0})

    def right_translate_images(self, x: HeckeElement):
        """Vectors of e_w * x over the whole basis: spans the left ideal."""
        out = []
        for e in self.elements:
            prod = hecke_multiply(
                HeckeElement(self.system, {e: Fraction(1)}), x, self.q)
            out.append(self.vector(prod))
        return out

    def left_ideal_basis(self, x: HeckeElement):
        ech = Echelon(self.right_translate_images(x))
        return ech.basis()

    def left_generator_images(self, s):
        """Images e_s * e_w for every basis element w."""
        out = []
        step = HeckeElement(self.system,
                            {self.system.normal_form([s]): Fraction(1)})
        for e in self.elements:
            prod = hecke_multiply(
                step, HeckeElement(self.system, {e: Fraction(1)}), self.q)
            out.append(self.vector(prod))
        return out

    # subset-indexed subspaces ----------------------------------------------

    def subspace(self, kind, subset):
        """One of the four families of invariant subspaces.

        'A': image of the averaging idempotent of the subset;
        'H': image of the alternating idempotent;
        'D': A_{S-V} cut down by the orthocomplement of the smaller A's;
        'G': H_V cut down by the orthocomplement of the larger H's.
        """
        key = (kind, frozenset(subset))
        cached = self._subspace_cache.get(key)
        if cached is not None:
            return cached
        kind = kind.upper()
        V = frozenset(subset)
        gens = set(self.system.generators)
        if kind == "A":
            basis = self.left_ideal_basis(
                idempotent_a(self.system, V, self.q))
        elif kind == "H":
            basis = self.left_ideal_basis(
                idempotent_h(self.system, V, self.q))
        elif kind == "D":
            big = self.subspace("A", gens - V).basis
            smaller = []
            for U in _proper_subsets(V):
                smaller.extend(self.subspace("A", gens - U).basis)
            perp = weighted_complement_basis(smaller, self.weights)
            basis = intersect_spans(big, perp)
        elif kind == "G":
            big = self.subspace("H", V).basis
            larger = []
            for U in _proper_supersets(V, gens):
                larger.extend(self.subspace("H", U).basis)
            perp = weighted_complement_basis(larger, self.weights)
            basis = intersect_spans(big, perp)
        else:
            raise ValueError(f"unknown subspace kind {kind!r}")
        sub = Subspace(self, f"{kind}[{','.join(sorted(V))}]", basis)
        self._subspace_cache[key] = sub
        return sub

    def von_neumann_dim(self, subspace):
        """Normalized trace of the orthogonal projection onto the subspace.

        Verifies invariance under the left regular action first.
        """
        self._check_invariant(subspace)
        if not subspace.basis:
            return Fraction(0)
        projector = WeightedProjector(subspace.basis, self.weights)
        image = projector.project(self._unit_vector())
        return image[self.index[Element(())]]

    def _unit_vector(self):
        v = zeros(self.dim)
        v[self.index[Element(())]] = Fraction(1)
        return v

    def _check_invariant(self, subspace):
        if not subspace.basis:
            return
        ech = Echelon(subspace.basis)
        for s in self.system.generators:
            step = HeckeElement(self.system,
                                {self.system.normal_form([s]): Fraction(1)})
            for v in subspace.basis:
                translated = hecke_multiply(
                    step, self.element_from_vector(v), self.q)
                if not ech.contains(self.vector(translated)):
                    raise NonInvariantSubspaceError(
                        f"{subspace.label} is not closed under the left "
                        f"action of {s!r}")


def _proper_subsets(V):
    items = sorted(V)
    for mask in range((1 << len(items)) - 1):
        yield frozenset(items[i] for i in range(len(items))
                        if mask >> i & 1)


def _proper_supersets(V, gens):
    rest = sorted(set(gens) - set(V))
    for mask in range(1, 1 << len(rest)):
        yield frozenset(V) | frozenset(
            rest[i] for i in range(len(rest)) if mask >> i & 1)


@dataclass
class Subspace:
    space: FiniteHeckeSpace
    label: str
    basis: list

    @property
    def linear_dimension(self):
        return len(self.basis)

    def von_neumann_dim(self):
        return self.space.von_neumann_dim(self)


# -- the regular-representation decomposition report --------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SolomonReport:
    system_name: str
    q: dict
    dims: dict
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def first_failure(self):
        return next((c for c in self.checks if not c.passed), None)


def verify_solomon(system, q: QParams) -> SolomonReport:
    """Check the two-idempotent decomposition of the regular module.

    For every subset T, the left ideal generated by h_T a_{S-T} must
    coincide with the subspace D_T, the ideals must be independent, they
    must exhaust the space, and their traces must match the descent-set
    series ratios.
    """
    from .growth import evaluate_series, wT_over_W

    space = FiniteHeckeSpace(system, q)
    gens = set(system.generators)
    report = SolomonReport(
        system_name=repr(system),
        q={k: str(v) for k, v in q.values.items()},
        dims={})
    total_linear = 0
    joint = Echelon()
    dim_sum = Fraction(0)
    for T in sorted(_all_subsets(gens), key=lambda T: (len(T), sorted(T))):
        h = idempotent_h(system, T, q)
        a = idempotent_a(system, gens - T, q)
        generator = hecke_multiply(h, a, q)
        ideal = space.left_ideal_basis(generator)
        mirror = space.left_ideal_basis(hecke_multiply(a, h, q))
        label = ",".join(sorted(T)) or "empty"
        sub = Subspace(space, f"ideal[{label}]", ideal)
        dim = space.von_neumann_dim(sub)
        expected = evaluate_series(
            wT_over_W(system, T), q.as_assignment())
        report.dims[label] = dim
        report.checks.append(CheckResult(
            f"trace[{label}] = descent ratio",
            dim == expected,
            f"got {dim}, expected {expected}"))
        d_sub = space.subspace("D", T)
        report.checks.append(CheckResult(
            f"ideal[{label}] equals D[{label}]",
            span_equal(ideal, d_sub.basis),
            f"ideal dim {len(ideal)}, D dim {len(d_sub.basis)}"))
        report.checks.append(CheckResult(
            f"swapped ideal dim matches [{label}]",
            len(mirror) == len(ideal),
            f"{len(mirror)} vs {len(ideal)}"))
        before = joint.dimension
        for v in ideal:
            joint.add(v)
        report.checks.append(CheckResult(
            f"ideal[{label}] independent of earlier ideals",
            joint.dimension == before + len(ideal),
            "overlap detected"))
        total_linear += len(ideal)
        dim_sum += dim
    report.checks.append(CheckResult(
        "ideals exhaust the regular module",
        total_linear == space.dim and joint.dimension == space.dim,
        f"total {total_linear} of {space.dim}"))
    report.checks.append(CheckResult(
        "traces sum to 1", dim_sum == 1, f"sum {dim_sum}"))
    return report


def _all_subsets(gens):
    items = sorted(gens)
    for mask in range(1 << len(items)):
        yield frozenset(items[i] for i in range(len(items))
                        if mask >> i & 1)
