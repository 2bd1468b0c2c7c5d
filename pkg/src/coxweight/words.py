"""Coxeter systems, the word problem, descent sets and finite-type recognition.

Group elements are identified with canonical reduced words: shortest, and
lexicographically least (in the user-supplied generator order) among all
reduced expressions.  Canonicalization follows Tits' solution of the word
problem: search the orbit of a word under braid moves, cancelling adjacent
equal letters whenever they appear.  Right-angled systems take a faster
route through the commutation-class shuffle normal form.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass

from .errors import BudgetExceededError, FormatError, NotSphericalError

INF = math.inf

# orders of the finite irreducible types, used by tests and finiteness checks
_FACT = [1]
for _k in range(1, 32):
    _FACT.append(_FACT[-1] * _k)


class Element:
    """A group element, identified by its canonical reduced word."""

    __slots__ = ("word",)

    def __init__(self, word=()):
        self.word = tuple(word)

    @property
    def length(self):
        return len(self.word)

    @property
    def sign(self):
        """(-1)^length, the alternating character value."""
        return -1 if len(self.word) % 2 else 1

    def is_identity(self):
        return not self.word

    def __eq__(self, other):
        return isinstance(other, Element) and self.word == other.word

    def __hash__(self):
        return hash(self.word)

    def __repr__(self):
        return f"Element({' '.join(self.word) if self.word else 'e'})"

    def serialize(self):
        """Canonical space-separated word; empty string for the identity."""
        return " ".join(self.word)


@dataclass(frozen=True)
class BallResult:
    elements: tuple          # Elements grouped by length
    histogram: tuple         # element counts per length
    complete: bool

    def all_elements(self):
        return [e for level in self.elements for e in level]


class CoxeterSystem:
    """A Coxeter matrix with ordered generators and a parameter-class map.

    Instances are immutable values; equality and hashing are structural.
    Internal memo tables only ever grow and hold derived data, so sharing
    a system across threads is safe (worst case the same canonical form
    is computed twice).
    """

    def __init__(self, generators, matrix, classes=None):
        generators = tuple(str(g) for g in generators)
        if len(set(generators)) != len(generators):
            raise FormatError("duplicate generator labels")
        n = len(generators)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                entry = matrix[i][j]
                if entry in ("inf", "Inf", "INF", None) or entry == INF:
                    entry = INF
                else:
                    entry = int(entry)
                row.append(entry)
            rows.append(tuple(row))
        m = tuple(rows)
        for i in range(n):
            if m[i][i] != 1:
                raise FormatError(
                    f"diagonal entry for {generators[i]} must be 1")
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise FormatError(
                        f"matrix not symmetric at ({generators[i]}, "
                        f"{generators[j]})")
                if i != j and m[i][j] != INF and m[i][j] < 2:
                    raise FormatError(
                        f"off-diagonal entry for ({generators[i]}, "
                        f"{generators[j]}) must be at least 2")
        self.generators = generators
        self._m = m
        self._index = {g: i for i, g in enumerate(generators)}

        conj = self._conjugacy_classes()
        if classes is None:
            if len(conj) == 1:
                labels = {next(iter(conj[0])): "t"}
            else:
                labels = {}
            classes = {}
            for k, block in enumerate(conj):
                label = "t" if len(conj) == 1 else f"t{k + 1}"
                for i in block:
                    classes[generators[i]] = label
        else:
            classes = {str(g): str(c) for g, c in classes.items()}
            missing = [g for g in generators if g not in classes]
            if missing:
                raise FormatError(f"classes missing generators: {missing}")
            for block in conj:
                block = sorted(block)
                first = block[0]
                for i in block[1:]:
                    if classes[generators[i]] != classes[generators[first]]:
                        raise FormatError(
                            "generators "
                            f"{generators[first]!r} and {generators[i]!r} "
                            "are conjugate but assigned different classes")
        self.classes = classes
        seen = []
        for g in generators:
            if classes[g] not in seen:
                seen.append(classes[g])
        self.class_labels = tuple(seen)
        self.right_angled = all(
            m[i][j] in (2, INF) for i in range(n) for j in range(i + 1, n))

        self._nf_cache = {}
        self._descent_cache = {}
        self._sub_cache = {}
        self._spherical_cache = None
        self._hash = hash((generators, m, tuple(sorted(classes.items()))))

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, CoxeterSystem)
                and self.generators == other.generators
                and self._m == other._m
                and self.classes == other.classes)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"CoxeterSystem({', '.join(self.generators)})"

    @property
    def rank(self):
        return len(self.generators)

    def m(self, s, t):
        return self._m[self._index[s]][self._index[t]]

    def class_of(self, s):
        return self.classes[s]

    def _conjugacy_classes(self):
        """Blocks of the equivalence generated by odd finite edges."""
        n = len(self.generators)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(n):
            for j in range(i + 1, n):
                mij = self._m[i][j]
                if mij != INF and mij % 2 == 1:
                    parent[find(i)] = find(j)
        blocks = {}
        for i in range(n):
            blocks.setdefault(find(i), []).append(i)
        return [blocks[r] for r in sorted(blocks, key=lambda r: min(blocks[r]))]

    def subsystem(self, subset):
        """The special subsystem on the given generators, order inherited."""
        key = frozenset(subset)
        cached = self._sub_cache.get(key)
        if cached is not None:
            return cached
        gens = [g for g in self.generators if g in key]
        unknown = key - set(gens)
        if unknown:
            raise FormatError(f"unknown generators: {sorted(unknown)}")
        matrix = [[self.m(a, b) for b in gens] for a in gens]
        sub = CoxeterSystem(gens, matrix,
                            {g: self.classes[g] for g in gens})
        self._sub_cache[key] = sub
        return sub

    # -- word problem -------------------------------------------------------

    def normal_form(self, word):
        """Canonical Element for a word given as labels (iterable or string)."""
        if isinstance(word, str):
            word = word.split()
        try:
            idx = tuple(self._index[s] for s in word)
        except KeyError as exc:
            raise FormatError(f"unknown letter {exc.args[0]!r}") from None
        return Element(self.generators[i] for i in self._canon(idx))

    def multiply(self, a, b):
        """Product of two Elements."""
        idx = tuple(self._index[s] for s in a.word + b.word)
        return Element(self.generators[i] for i in self._canon(idx))

    def inverse(self, a):
        idx = tuple(reversed([self._index[s] for s in a.word]))
        return Element(self.generators[i] for i in self._canon(idx))

    def length(self, word):
        return self.normal_form(word).length

    def descent_set(self, element):
        """In(w): the generators s with l(ws) < l(w)."""
        idx = tuple(self._index[s] for s in element.word)
        canon = self._canon(idx)
        return frozenset(self.generators[i] for i in self._descents(canon))

    def monomial_exponents(self, element):
        """Exponent of the class monomial of the element's word."""
        out = {}
        for s in element.word:
            label = self.classes[s]
            out[label] = out.get(label, 0) + 1
        return out

    # index-word internals ---------------------------------------------------

    def _canon(self, idx):
        cached = self._nf_cache.get(idx)
        if cached is not None:
            return cached
        result = self._reduce_ra(idx) if self.right_angled \
            else self._reduce_general(idx)
        self._nf_cache[idx] = result
        self._nf_cache[result] = result
        return result

    def _descents(self, canon):
        cached = self._descent_cache.get(canon)
        if cached is not None:
            return cached
        if self.right_angled:
            result = self._descents_ra(canon)
        else:
            kind, data = self._braid_orbit(canon)
            assert kind == "orbit", "canonical words are reduced"
            result = frozenset(w[-1] for w in data) if canon else frozenset()
        self._descent_cache[canon] = result
        return result

    def _reduce_general(self, word):
        while True:
            kind, data = self._braid_orbit(word)
            if kind == "cancel":
                word = data
                continue
            canonical = min(data)
            descents = frozenset(w[-1] for w in data) if canonical \
                else frozenset()
            for w in data:
                self._nf_cache[w] = canonical
            self._descent_cache[canonical] = descents
            return canonical

    def _braid_orbit(self, word):
        """Explore braid moves; stop early on an adjacent equal pair."""
        m = self._m
        seen = {word}
        queue = [word]
        pos = 0
        while pos < len(queue):
            w = queue[pos]
            pos += 1
            for i in range(len(w) - 1):
                if w[i] == w[i + 1]:
                    return "cancel", w[:i] + w[i + 2:]
            for i in range(len(w) - 1):
                s, t = w[i], w[i + 1]
                mst = m[s][t]
                if mst == INF or i + mst > len(w):
                    continue
                ok = True
                for k in range(2, int(mst)):
                    if w[i + k] != (s if k % 2 == 0 else t):
                        ok = False
                        break
                if not ok:
                    continue
                run = tuple(t if k % 2 == 0 else s for k in range(int(mst)))
                new = w[:i] + run + w[i + int(mst):]
                if new not in seen:
                    seen.add(new)
                    queue.append(new)
        return "orbit", seen

    def _reduce_ra(self, word):
        m = self._m
        out = []
        for s in word:
            j = len(out) - 1
            cancelled = False
            while j >= 0:
                t = out[j]
                if t == s:
                    out.pop(j)
                    cancelled = True
                    break
                if m[s][t] != 2:
                    break
                j -= 1
            if not cancelled:
                out.append(s)
        # lexicographically least representative of the commutation class
        result = []
        while out:
            best = None
            for i, s in enumerate(out):
                if any(m[s][out[j]] != 2 for j in range(i)):
                    continue
                if best is None or s < out[best]:
                    best = i
            result.append(out.pop(best))
        return tuple(result)

    def _descents_ra(self, canon):
        m = self._m
        out = set()
        for i in range(len(canon) - 1, -1, -1):
            s = canon[i]
            if s in out:
                continue
            if all(m[s][canon[j]] == 2 for j in range(i + 1, len(canon))):
                out.add(s)
        return frozenset(out)

    # -- enumeration ----------------------------------------------------------

    def enumerate_ball(self, max_length, max_elements=None, max_seconds=None):
        """All elements of length <= max_length, grouped by length.

        Respects optional element-count and wall-clock budgets; on overrun
        raises BudgetExceededError carrying the completed levels.
        """
        if max_length < 0:
            raise ValueError("max_length must be nonnegative")
        start = time.monotonic()
        levels = [[()]]
        seen = {()}
        count = 1
        for _ in range(max_length):
            new = []
            for w in levels[-1]:
                descents = self._descents(w)
                for s in range(self.rank):
                    if s in descents:
                        continue
                    c = self._canon(w + (s,))
                    if c in seen:
                        continue
                    seen.add(c)
                    new.append(c)
                    count += 1
                    if max_elements is not None and count > max_elements:
                        raise self._budget_error(
                            "element budget exceeded", levels)
                if max_seconds is not None \
                        and time.monotonic() - start > max_seconds:
                    raise self._budget_error("time budget exceeded", levels)
            if not new:
                break
            new.sort()
            levels.append(new)
        elements = tuple(
            tuple(Element(self.generators[i] for i in w) for w in level)
            for level in levels)
        histogram = tuple(len(level) for level in levels)
        complete = len(levels) < max_length + 1 \
            or not self._has_longer(levels[-1])
        return BallResult(elements, histogram, complete)

    def _has_longer(self, last_level):
        for w in last_level:
            if len(self._descents(w)) < self.rank:
                return True
        return False

    def _budget_error(self, message, levels):
        # levels holds only fully completed lengths; the in-progress level
        # never gets appended before the budget check fires
        histogram = tuple(len(level) for level in levels)
        elements = tuple(
            tuple(Element(self.generators[i] for i in w) for w in level)
            for level in levels)
        return BudgetExceededError(
            message, completed_lengths=len(histogram) - 1,
            histogram=histogram, elements=elements)

    def enumerate_all(self, max_elements=2_000_000):
        """All elements of a finite system (raises if it is not finite)."""
        if not self.is_spherical(self.generators):
            raise NotSphericalError(
                "enumerate_all requires a finite Coxeter group")
        result = self.enumerate_ball(10 ** 9, max_elements=max_elements)
        return result

    # -- finite-type recognition ----------------------------------------------

    def is_spherical(self, subset):
        """True iff the special subgroup on ``subset`` is finite."""
        return self.finite_order(subset) is not None

    def finite_order(self, subset):
        """Order of the special subgroup, or None when it is infinite."""
        idx = sorted(self._index[s] for s in subset)
        if len(set(idx)) != len(list(subset)):
            raise FormatError("subset contains repeated generators")
        total = 1
        for comp in self._components(idx):
            order = self._component_order(comp)
            if order is None:
                return None
            total *= order
        return total

    def _components(self, idx):
        remaining = set(idx)
        comps = []
        while remaining:
            seed = min(remaining)
            comp = {seed}
            frontier = [seed]
            while frontier:
                a = frontier.pop()
                for b in list(remaining - comp):
                    if self._m[a][b] >= 3:  # includes INF
                        comp.add(b)
                        frontier.append(b)
            comps.append(sorted(comp))
            remaining -= comp
        return comps

    def _component_order(self, comp):
        n = len(comp)
        edges = []
        for a in range(n):
            for b in range(a + 1, n):
                mab = self._m[comp[a]][comp[b]]
                if mab >= 3:
                    if mab == INF:
                        return None
                    edges.append((a, b, int(mab)))
        if n == 1:
            return 2
        if len(edges) != n - 1:
            return None  # a cycle: no finite type contains one
        degree = [0] * n
        adj = [[] for _ in range(n)]
        for a, b, mm in edges:
            degree[a] += 1
            degree[b] += 1
            adj[a].append((b, mm))
            adj[b].append((a, mm))
        labels = sorted(mm for _, _, mm in edges)
        branch = [v for v in range(n) if degree[v] >= 3]
        if any(degree[v] > 3 for v in range(n)) or len(branch) > 1:
            return None
        if branch:
            if labels[-1] > 3:
                return None
            legs = sorted(self._leg_lengths(adj, branch[0]))
            if legs[:2] == [1, 1]:
                return 2 ** (n - 1) * _FACT[n]  # D_n
            if legs == [1, 2, 2] and n == 6:
                return 51840  # E6
            if legs == [1, 2, 3] and n == 7:
                return 2903040  # E7
            if legs == [1, 2, 4] and n == 8:
                return 696729600  # E8
            return None
        # path: read edge labels end to end
        ends = [v for v in range(n) if degree[v] == 1]
        path_labels = self._path_labels(adj, ends[0])
        big = [(i, mm) for i, mm in enumerate(path_labels) if mm > 3]
        if not big:
            return _FACT[n + 1]  # A_n
        if len(big) > 1:
            return None
        pos, mm = big[0]
        at_end = pos == 0 or pos == len(path_labels) - 1
        if mm == 4:
            if n == 2:
                return 8  # I2(4) = B2
            if at_end:
                return 2 ** n * _FACT[n]  # B_n
            if n == 4:
                return 1152  # F4
            return None
        if mm == 5:
            if not at_end:
                return None
            if n == 2:
                return 10  # I2(5)
            if n == 3:
                return 120  # H3
            if n == 4:
                return 14400  # H4
            return None
        # label >= 6: only the dihedral I2(m) is finite
        if n == 2:
            return 2 * mm
        return None

    @staticmethod
    def _leg_lengths(adj, branch):
        lengths = []
        for start, _ in adj[branch]:
            length = 1
            prev, cur = branch, start
            while len(adj[cur]) == 2:
                nxt = next(v for v, _ in adj[cur] if v != prev)
                prev, cur = cur, nxt
                length += 1
            lengths.append(length)
        return lengths

    @staticmethod
    def _path_labels(adj, end):
        labels = []
        prev, cur = None, end
        while True:
            nxt = [(v, mm) for v, mm in adj[cur] if v != prev]
            if not nxt:
                break
            v, mm = nxt[0]
            labels.append(mm)
            prev, cur = cur, v
        return labels

    # -- spherical poset --------------------------------------------------------

    def spherical_subsets(self):
        """All spherical subsets, graded by cardinality (includes the empty set)."""
        if self._spherical_cache is not None:
            return self._spherical_cache
        levels = [[frozenset()]]
        while True:
            grown = set()
            for base in levels[-1]:
                for g in self.generators:
                    if g in base:
                        continue
                    cand = base | {g}
                    if cand in grown:
                        continue
                    if self.is_spherical(cand):
                        grown.add(cand)
            if not grown:
                break
            levels.append(sorted(
                grown, key=lambda T: tuple(sorted(self._index[s] for s in T))))
        poset = SphericalPoset(
            tuple(T for level in levels for T in level), self)
        self._spherical_cache = poset
        return poset


@dataclass(frozen=True)
class SphericalPoset:
    """The poset of spherical subsets, ordered by inclusion."""

    subsets: tuple
    system: CoxeterSystem

    def stratum(self, i):
        return [T for T in self.subsets if len(T) == i]

    def at_least(self, T):
        T = frozenset(T)
        return [U for U in self.subsets if T <= U]

    def __len__(self):
        return len(self.subsets)

    def __iter__(self):
        return iter(self.subsets)

    def __contains__(self, T):
        return frozenset(T) in set(self.subsets)


def parse_system(source):
    """Build a CoxeterSystem from the documented JSON description.

    Accepts a JSON string or an already-decoded mapping with keys
    ``generators`` (list of labels), ``matrix`` (rows of integers with
    "inf" for infinite entries) and optional ``classes`` (label map).
    """
    if isinstance(source, (str, bytes)):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from None
    else:
        data = source
    if not isinstance(data, dict):
        raise FormatError("system description must be a JSON object")
    try:
        generators = data["generators"]
        matrix = data["matrix"]
    except KeyError as exc:
        raise FormatError(f"missing field {exc.args[0]!r}") from None
    if len(matrix) != len(generators) \
            or any(len(row) != len(generators) for row in matrix):
        raise FormatError("matrix shape does not match generator count")
    return CoxeterSystem(generators, matrix, data.get("classes"))


def system_to_dict(system):
    matrix = [["inf" if system._m[i][j] == INF else system._m[i][j]
               for j in range(system.rank)]
              for i in range(system.rank)]
    return {
        "generators": list(system.generators),
        "matrix": matrix,
        "classes": dict(system.classes),
    }
