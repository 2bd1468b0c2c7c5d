"""Dense exact linear algebra over Fraction for the finite-dimensional work:
column spaces, nullspaces, weighted orthogonal complements and projections.

Vectors are lists of Fractions; matrices are lists of rows.
"""

from __future__ import annotations

from fractions import Fraction


def zeros(n):
    return [Fraction(0)] * n


def dot_weighted(u, v, weights):
    return sum(a * b * w for a, b, w in zip(u, v, weights))


def mat_vec(matrix, v):
    return [sum(a * b for a, b in zip(row, v)) for row in matrix]


def transpose(matrix):
    return [list(col) for col in zip(*matrix)] if matrix else []


def rref(matrix):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in matrix]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0),
                     None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix):
    if not matrix:
        return 0
    return len(rref(matrix)[1])


def nullspace(matrix):
    """Basis of the right nullspace (list of vectors)."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(v)
    return basis


def column_space_basis(vectors):
    """Independent subset spanning the same space (echelon-form basis)."""
    if not vectors:
        return []
    rows, pivots = rref([list(v) for v in vectors])
    return [rows[i] for i in range(len(pivots))]


def independent_subset(vectors):
    """Indices of a maximal independent subset of the given vectors."""
    kept = []
    basis = []
    for i, v in enumerate(vectors):
        trial = basis + [list(v)]
        if rank(trial) > len(basis):
            basis = rref(trial)[0][:len(basis) + 1]
            kept.append(i)
    return kept


def solve(matrix, rhs):
    """Solution of a square nonsingular system."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [rows[i][n] for i in range(n)]


def solve_many(matrix, rhss):
    """Solve a square nonsingular system for several right-hand sides."""
    n = len(matrix)
    aug = [list(row) + [rhs[i] for rhs in rhss]
           for i, row in enumerate(matrix)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [[rows[i][n + k] for i in range(n)] for k in range(len(rhss))]


class WeightedProjector:
    """Orthogonal projection onto span(basis) for a diagonal inner product.

    Solves the normal equations (B^T G B) x = B^T G v exactly;
    positivity of the weights makes the Gram matrix nonsingular for an
    independent basis.
    """

    def __init__(self, basis, weights):
        self.basis = [list(v) for v in basis]
        self.weights = list(weights)
        self.gram = [
            [dot_weighted(u, v, weights) for v in self.basis]
            for u in self.basis]

    def coordinates(self, v):
        rhs = [dot_weighted(u, v, self.weights) for u in self.basis]
        return solve(self.gram, rhs) if self.basis else []

    def project(self, v):
        if not self.basis:
            return zeros(len(v))
        coords = self.coordinates(v)
        out = zeros(len(v))
        for c, b in zip(coords, self.basis):
            for i, x in enumerate(b):
                out[i] += c * x
        return out


def weighted_complement_basis(vectors, weights, ambient_basis=None):
    """Basis of the orthogonal complement of span(vectors) in the weighted
    inner product, inside the full coordinate space (or a given subspace)."""
    dim = len(weights)
    if ambient_basis is None:
        ambient = [[Fraction(1) if i == j else Fraction(0)
                    for j in range(dim)] for i in range(dim)]
    else:
        ambient = [list(v) for v in ambient_basis]
    if not vectors:
        return ambient
    # constraint rows: <v, x>_G = 0 for each spanning vector v
    constraints = [[v[i] * weights[i] for i in range(dim)] for v in vectors]
    # express x = ambient * c and solve constraints * ambient^T c = 0
    reduced = [[sum(row[i] * b[i] for i in range(dim)) for b in ambient]
               for row in constraints]
    coeffs = nullspace(reduced)
    out = []
    for c in coeffs:
        v = zeros(dim)
        for ci, b in zip(c, ambient):
            for i, x in enumerate(b):
                v[i] += ci * x
        out.append(v)
    return out


def intersect_spans(basis_a, basis_b):
    """Basis of the intersection of two spans."""
    if not basis_a or not basis_b:
        return []
    dim = len(basis_a[0])
    stacked = [[basis_a[j][i] for j in range(len(basis_a))]
               + [-basis_b[j][i] for j in range(len(basis_b))]
               for i in range(dim)]
    combos = nullspace(stacked)
    out = []
    for c in combos:
        v = zeros(dim)
        for ci, b in zip(c[:len(basis_a)], basis_a):
            for i, x in enumerate(b):
                v[i] += ci * x
        out.append(v)
    return column_space_basis(out)


class Echelon:
    """Incrementally maintained reduced row echelon basis of a span."""

    def __init__(self, vectors=()):
        self.rows = []
        self.pivots = []
        for v in vectors:
            self.add(v)

    def _reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                for i, x in enumerate(row):
                    if x:
                        v[i] -= f * x
        return v

    def add(self, v):
        """Add a vector; returns True when it enlarged the span."""
        v = self._reduce(v)
        pivot = next((i for i, x in enumerate(v) if x != 0), None)
        if pivot is None:
            return False
        inv = v[pivot]
        v = [x / inv for x in v]
        for row in self.rows:
            if row[pivot] != 0:
                f = row[pivot]
                for i, x in enumerate(v):
                    if x:
                        row[i] -= f * x
        at = next((k for k, p in enumerate(self.pivots) if p > pivot),
                  len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, pivot)
        return True

    def contains(self, v):
        return all(x == 0 for x in self._reduce(v))

    @property
    def dimension(self):
        return len(self.rows)

    def basis(self):
        return [list(r) for r in self.rows]


def in_span(vectors, v):
    if not vectors:
        return all(x == 0 for x in v)
    return rank(vectors + [list(v)]) == rank(vectors)


def span_equal(a, b):
    ra = rank(a) if a else 0
    rb = rank(b) if b else 0
    if ra != rb:
        return False
    return rank((a or []) + (b or [])) == ra
