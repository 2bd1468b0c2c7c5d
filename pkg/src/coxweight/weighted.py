"""Weighted (co)chain complexes of mirrored developments and the associated
Betti numbers: closed-form evaluation inside the closed convergence regions,
direct harmonic computation for finite groups, and the ruin complexes.

The development of a mirrored complex Z has one cell (u, c) per face c of
Z and minimal coset representative u of the stabilizer of c.  Its weighted
inner product is diagonal with weight q_u on (u, c); coboundaries use the
incidence signs of Z, and the weighted boundary is the exact adjoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .complexes import MirroredComplex, chamber, relative_betti_numbers
from .errors import InfiniteGroupError, IntermediateRegionError
from .growth import (
    check_q,
    classify_region,
    evaluate_series,
    inverse_growth_series,
    invert_q,
    spherical_growth_poly,
    wT_over_W,
)
from .hecke import FiniteHeckeSpace, QParams
from .linalg import WeightedProjector, nullspace, zeros
from .words import Element


class _SigmaSentinel:
    """Placeholder meaning "use the canonical contractible development"."""

    def __repr__(self):
        return "SIGMA"


SIGMA = _SigmaSentinel()


@lru_cache(maxsize=None)
def _chamber(system):
    return chamber(system)


def _resolve_complex(system, Z):
    if Z is SIGMA or Z is None:
        return _chamber(system), True
    return Z, False


@dataclass
class BettiReport:
    degrees: dict              # degree -> Fraction
    region: object             # RegionClass
    method: str                # formula_R | formula_Rinv | direct_finite
    euler: Fraction
    cochain: list              # per-degree weighted cochain dimensions

    def betti(self, i):
        return self.degrees.get(i, Fraction(0))

    def alternating_sum(self):
        return sum((-1) ** i * b for i, b in self.degrees.items())


# -- weighted cell census ----------------------------------------------------------


def cochain_dims(system, Z: MirroredComplex, q) -> list:
    """Per-degree von Neumann dimensions of the weighted cochain spaces.

    Each orbit of cells contributes the reciprocal of the growth
    polynomial of its stabilizer.
    """
    Z.validate_against(system)
    q = check_q(system, q)
    out = []
    for i in range(Z.base.dimension + 1):
        total = Fraction(0)
        for face in Z.base.faces_of_dim(i):
            stab = Z.cell_type(face)
            total += 1 / spherical_growth_poly(system, stab).evaluate(q)
        out.append(total)
    return out


def sigma_cochain_dims(system, q) -> list:
    """Cell census of the canonical development in its block cell structure:
    one orbit per spherical subset, of dimension 1/W_T(1/q)."""
    q = check_q(system, q)
    qinv = invert_q(q)
    poset = system.spherical_subsets()
    top = max(len(T) for T in poset)
    out = [Fraction(0)] * (top + 1)
    for T in poset:
        out[len(T)] += 1 / spherical_growth_poly(system, T).evaluate(qinv)
    return out


def euler_characteristic(system, Z, q) -> Fraction:
    """Weighted Euler characteristic; for the canonical development this
    is exactly the reciprocal growth series evaluated at q."""
    q = check_q(system, q)
    if Z is SIGMA or Z is None:
        return evaluate_series(inverse_growth_series(system), q)
    dims = cochain_dims(system, Z, q)
    return sum((-1) ** i * c for i, c in enumerate(dims))


# -- closed-form Betti numbers -------------------------------------------------------


def _relative_table(system, Z, is_sigma):
    """Cache of relative cohomology dimensions b^i(Z, Z^U) by subset U."""
    cache = getattr(Z, "_relative_cache", None)
    if cache is None:
        cache = {}
        Z._relative_cache = cache

    def table(U):
        key = frozenset(U)
        if key not in cache:
            cache[key] = relative_betti_numbers(Z, key)
        return cache[key]

    return table


def betti_formula(system, Z, q) -> BettiReport:
    """Betti numbers from the decomposition over descent-class subspaces.

    Inside the closed convergence region the coefficient of the pair
    (Z, Z^T) is the descent ratio at q; inside the closed reciprocal
    region the pair (Z, Z^{S-T}) carries the ratio at 1/q.  Outside both
    closures no formula exists and the call fails loudly.
    """
    q = check_q(system, q)
    Z, is_sigma = _resolve_complex(system, Z)
    Z.validate_against(system)
    region = classify_region(system, q)
    side = region.formula_side()
    if side is None:
        raise IntermediateRegionError(
            f"q={q} lies in the intermediate region: outside both closed "
            "convergence regions, where no closed-form Betti values exist")
    table = _relative_table(system, Z, is_sigma)
    gens = set(system.generators)
    poset = system.spherical_subsets()
    dim = Z.base.dimension

    def side_values(which):
        values = {}
        for T in poset:
            if which == "R":
                ratio = evaluate_series(wT_over_W(system, T), q)
                rel = table(T)
            else:
                ratio = evaluate_series(wT_over_W(system, T), invert_q(q))
                rel = table(gens - T)
            for i in range(dim + 1):
                if rel[i]:
                    values[i] = values.get(i, Fraction(0)) + ratio * rel[i]
        return {i: v for i, v in values.items() if v}

    if region.tag == "all":
        values_r = side_values("R")
        values_rinv = side_values("Rinv")
        assert values_r == values_rinv, (
            "decomposition formulas disagree on a finite group: "
            f"{values_r} vs {values_rinv}")
        values, method = values_r, "formula_R"
    elif side == "R":
        values, method = side_values("R"), "formula_R"
    else:
        values, method = side_values("Rinv"), "formula_Rinv"

    if is_sigma:
        cochain = sigma_cochain_dims(system, q)
        euler = evaluate_series(inverse_growth_series(system), q)
    else:
        cochain = cochain_dims(system, Z, q)
        euler = sum((-1) ** i * c for i, c in enumerate(cochain))
    report = BettiReport(values, region, method, euler, cochain)
    assert report.alternating_sum() == euler, (
        "alternating Betti sum disagrees with the weighted Euler "
        f"characteristic: {report.alternating_sum()} vs {euler}")
    return report


# -- direct harmonic computation (finite groups) --------------------------------------


class DevelopedComplex:
    """The development of a mirrored complex over a finite group, with its
    weighted coboundary/boundary matrices."""

    def __init__(self, system, Z: MirroredComplex, q):
        if not system.is_spherical(system.generators):
            raise InfiniteGroupError(
                "direct computation needs a finite group")
        Z.validate_against(system)
        self.system = system
        self.Z = Z
        self.qmap = check_q(system, q)
        self.qparams = QParams.numeric(system, self.qmap)
        ball = system.enumerate_all()
        self.group = [e for level in ball.elements for e in level]
        self.cells = []       # per degree: list of (Element, face)
        self.cell_index = []  # per degree: {(Element, face): position}
        self.weights = []     # per degree: list of Fractions
        dim = Z.base.dimension
        for i in range(dim + 1):
            cells = []
            for face in Z.base.faces_of_dim(i):
                stab = Z.cell_type(face)
                for u in self.group:
                    if system.descent_set(u) & stab:
                        continue  # not the minimal coset representative
                    cells.append((u, face))
            index = {cell: k for k, cell in enumerate(cells)}
            self.cells.append(cells)
            self.cell_index.append(index)
            self.weights.append(
                [self.qparams.element_weight(system, u)
                 for u, _ in cells])

    def min_rep(self, u, stab):
        """Minimal-length representative of the coset u W_stab."""
        w = u
        while True:
            down = self.system.descent_set(w) & stab
            if not down:
                return w
            s = next(iter(down))
            w = self.system.multiply(w, Element((s,)))

    def faces_with_signs(self, face):
        """Codimension-one faces of a Z-face with their incidence signs."""
        out = []
        for j in range(len(face)):
            out.append((face[:j] + face[j + 1:], (-1) ** j))
        return out

    def delta_matrix(self, i):
        """Coboundary C^i -> C^{i+1}: rows indexed by (i+1)-cells."""
        if i + 1 >= len(self.cells):
            return []
        rows = []
        for (u, face) in self.cells[i + 1]:
            row = zeros(len(self.cells[i]))
            for sub, sign in self.faces_with_signs(face):
                stab = self.Z.cell_type(sub)
                rep = self.min_rep(u, stab)
                row[self.cell_index[i][(rep, sub)]] += sign
            rows.append(row)
        return rows

    def partial_q_matrix(self, i):
        """Weighted boundary C_i -> C_{i-1}: the exact adjoint of delta."""
        if i == 0 or i >= len(self.cells):
            return []
        delta = self.delta_matrix(i - 1)
        rows = []
        for a, alpha_cell in enumerate(self.cells[i - 1]):
            row = zeros(len(self.cells[i]))
            for b in range(len(self.cells[i])):
                if delta[b][a]:
                    row[b] = delta[b][a] * self.weights[i][b] \
                        / self.weights[i - 1][a]
            rows.append(row)
        return rows

    def plain_boundary_matrix(self, i):
        """Unweighted boundary C_i -> C_{i-1}."""
        if i == 0 or i >= len(self.cells):
            return []
        delta = self.delta_matrix(i - 1)
        rows = []
        for a in range(len(self.cells[i - 1])):
            row = zeros(len(self.cells[i]))
            for b in range(len(self.cells[i])):
                row[b] = delta[b][a]
            rows.append(row)
        return rows

    def cocycle_trace(self, i):
        """Normalized dimension of the space of weighted i-cocycles."""
        cells = self.cells[i]
        if not cells:
            return Fraction(0)
        delta = self.delta_matrix(i)
        if delta:
            kernel = nullspace(delta)
        else:
            kernel = [[Fraction(1) if k == j else Fraction(0)
                       for k in range(len(cells))]
                      for j in range(len(cells))]
        if not kernel:
            return Fraction(0)
        projector = WeightedProjector(kernel, self.weights[i])
        total = Fraction(0)
        for face in self.Z.base.faces_of_dim(i):
            stab = self.Z.cell_type(face)
            poly = spherical_growth_poly(self.system, stab) \
                .evaluate(self.qmap)
            target = zeros(len(cells))
            target[self.cell_index[i][(Element(()), face)]] = Fraction(1)
            image = projector.project(target)
            total += image[self.cell_index[i][(Element(()), face)]] / poly
        return total


def direct_betti_finite(system, Z, q) -> BettiReport:
    """Exact harmonic Betti numbers of the development of Z over a finite
    group: cocycle traces minus coboundary traces, all in exact rationals."""
    Z, _ = _resolve_complex(system, Z)
    dev = DevelopedComplex(system, Z, q)
    q = dev.qmap
    dims = cochain_dims(system, Z, q)
    top = Z.base.dimension
    z = [dev.cocycle_trace(i) for i in range(top + 1)]
    degrees = {}
    for i in range(top + 1):
        boundary_trace = (dims[i - 1] - z[i - 1]) if i > 0 else Fraction(0)
        b = z[i] - boundary_trace
        if b:
            degrees[i] = b
    euler = sum((-1) ** i * c for i, c in enumerate(dims))
    report = BettiReport(degrees, classify_region(system, q),
                         "direct_finite", euler, dims)
    assert report.alternating_sum() == euler
    return report


# -- ruin complexes --------------------------------------------------------------------


def ruin_homology_finite(system, U, T, q) -> dict:
    """Von Neumann dimensions of the weighted homology of the (U, T)-ruin
    of a finite group, computed from its block cell structure.

    Degrees are cell dimensions (the cardinality of the defining subsets);
    the result should be concentrated in degree card(T).
    """
    from .errors import NotSphericalError

    U = frozenset(U)
    T = frozenset(T)
    if not T <= U:
        raise NotSphericalError("the marked subset must lie inside U")
    if not system.is_spherical(T):
        raise NotSphericalError(f"{sorted(T)} is not spherical")
    if not system.is_spherical(system.generators):
        raise InfiniteGroupError("ruin computation implemented for finite "
                                 "groups only")
    qp = QParams.numeric(system, check_q(system, q))
    space = FiniteHeckeSpace(system, qp)
    poset = system.spherical_subsets()
    levels = {}
    for Tp in poset:
        if T <= Tp <= U:
            levels.setdefault(len(Tp), []).append(Tp)
    if not levels:
        return {}
    degrees = sorted(levels)
    blocks = {m: sorted(levels[m], key=sorted) for m in degrees}

    def block_vectors(m):
        """Basis of the degree-m chain space in block coordinates."""
        out = []
        for k, Tp in enumerate(blocks[m]):
            for v in space.subspace("H", Tp).basis:
                vec = zeros(space.dim * len(blocks[m]))
                vec[k * space.dim:(k + 1) * space.dim] = v
                out.append(vec)
        return out

    def boundary_of(m, vec):
        """Apply the signed inclusion boundary to a degree-m block vector."""
        lower = blocks.get(m - 1, [])
        out = zeros(space.dim * len(lower))
        if not lower:
            return out
        lower_pos = {Tp: k for k, Tp in enumerate(lower)}
        for k, Tp in enumerate(blocks[m]):
            segment = vec[k * space.dim:(k + 1) * space.dim]
            if all(x == 0 for x in segment):
                continue
            removable = sorted(Tp - T)
            for j, s in enumerate(removable):
                target = Tp - {s}
                pos = lower_pos.get(target)
                if pos is None:
                    continue
                sign = (-1) ** j
                for i, x in enumerate(segment):
                    if x:
                        out[pos * space.dim + i] += sign * x
        return out

    def von_neumann_dim_blocks(vectors, nblocks):
        from .linalg import Echelon
        vectors = Echelon(vectors).basis()
        if not vectors:
            return Fraction(0)
        weights = list(space.weights) * nblocks
        projector = WeightedProjector(vectors, weights)
        total = Fraction(0)
        identity = space.index[Element(())]
        for k in range(nblocks):
            target = zeros(space.dim * nblocks)
            target[k * space.dim + identity] = Fraction(1)
            total += projector.project(target)[k * space.dim + identity]
        return total

    result = {}
    for m in degrees:
        chain_basis = block_vectors(m)
        nblocks = len(blocks[m])
        # kernel of the boundary inside the chain space
        images = [boundary_of(m, v) for v in chain_basis]
        if any(any(x != 0 for x in img) for img in images):
            coeff_rows = [[images[j][i] for j in range(len(images))]
                          for i in range(len(images[0]))]
            kernel_coeffs = nullspace(coeff_rows)
        else:
            kernel_coeffs = [[Fraction(1) if i == j else Fraction(0)
                              for i in range(len(chain_basis))]
                             for j in range(len(chain_basis))]
        kernel = []
        for coeffs in kernel_coeffs:
            v = zeros(space.dim * nblocks)
            for c, b in zip(coeffs, chain_basis):
                if c:
                    for i, x in enumerate(b):
                        if x:
                            v[i] += c * x
            kernel.append(v)
        z_dim = von_neumann_dim_blocks(kernel, nblocks)
        upper = blocks.get(m + 1, [])
        if upper:
            upper_basis = block_vectors(m + 1)
            boundary_images = [boundary_of(m + 1, v) for v in upper_basis]
            boundary_images = [v for v in boundary_images
                               if any(x != 0 for x in v)]
            b_dim = von_neumann_dim_blocks(boundary_images, nblocks)
        else:
            b_dim = Fraction(0)
        value = z_dim - b_dim
        if value:
            result[m] = value
    return result
