"""Sparse multivariate polynomials and rational functions over exact rationals.

Everything in the trusted computational path is a ``fractions.Fraction``;
no floating point arithmetic happens here.  Polynomials are stored as
a map from exponent vectors to nonzero coefficients, rational functions
as reduced numerator/denominator pairs with a monic denominator (monic
with respect to the lexicographic leading term, so its leading
coefficient is positive).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian


class PoleError(ArithmeticError):
    """Raised when a rational function is evaluated at a pole."""


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class Polynomial:
    """A polynomial in named variables with Fraction coefficients.

    ``variables`` is a sorted tuple of names; ``terms`` maps exponent
    tuples (one entry per variable) to nonzero coefficients.  Unused
    variables are pruned, so two polynomials built over different
    variable sets compare equal when they describe the same function.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables=(), terms=None):
        variables = tuple(variables)
        assert list(variables) == sorted(variables), "variables must be sorted"
        terms = {} if terms is None else dict(terms)
        terms = {e: c for e, c in terms.items() if c != 0}
        # prune variables that never occur
        if variables:
            used = [i for i in range(len(variables))
                    if any(e[i] for e in terms)]
            if len(used) < len(variables):
                variables = tuple(variables[i] for i in used)
                terms = {tuple(e[i] for i in used): c for e, c in terms.items()}
        self.variables = variables
        self.terms = terms

    # -- constructors ---------------------------------------------------

    @staticmethod
    def constant(value):
        value = _as_fraction(value)
        if value == 0:
            return Polynomial((), {})
        return Polynomial((), {(): value})

    @staticmethod
    def variable(name):
        return Polynomial((name,), {(1,): Fraction(1)})

    @staticmethod
    def monomial(exponents, coefficient=1):
        """exponents: map variable name -> nonnegative power."""
        coefficient = _as_fraction(coefficient)
        names = tuple(sorted(n for n, e in exponents.items() if e))
        exps = tuple(exponents[n] for n in names)
        return Polynomial(names, {exps: coefficient})

    # -- structure ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0)) if not self.variables \
            else next(iter(self.terms.values()), Fraction(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        if name not in self.variables or not self.terms:
            return 0
        i = self.variables.index(name)
        return max(e[i] for e in self.terms)

    def coefficient(self, exponents):
        """Coefficient of the monomial given as a name->power map."""
        names = tuple(sorted(n for n, e in exponents.items() if e))
        if any(n not in self.variables for n in names):
            return Fraction(0)
        full = tuple(exponents.get(n, 0) for n in self.variables)
        return self.terms.get(full, Fraction(0))

    def leading(self):
        """(exponent, coefficient) of the lexicographically largest term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    # -- alignment of variable sets --------------------------------------

    @staticmethod
    def _align(a, b):
        if a.variables == b.variables:
            return a.variables, a.terms, b.terms
        names = tuple(sorted(set(a.variables) | set(b.variables)))

        def remap(p):
            idx = [p.variables.index(n) if n in p.variables else None
                   for n in names]
            out = {}
            for e, c in p.terms.items():
                out[tuple(0 if i is None else e[i] for i in idx)] = c
            return out

        return names, remap(a), remap(b)

    def _with_variables(self, names):
        names = tuple(names)
        idx = [self.variables.index(n) if n in self.variables else None
               for n in names]
        out = {}
        for e, c in self.terms.items():
            out[tuple(0 if i is None else e[i] for i in idx)] = c
        return names, out

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        names, ta, tb = Polynomial._align(self, other)
        out = dict(ta)
        for e, c in tb.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(names, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.variables,
                          {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        names, ta, tb = Polynomial._align(self, other)
        out = {}
        for e1, c1 in ta.items():
            for e2, c2 in tb.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial(names, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Polynomial(self.variables,
                              {e: c / other for e, c in self.terms.items()})
        return RationalFunction(self, other)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.variables == other.variables
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"

    # -- evaluation and substitution --------------------------------------

    def substitute(self, assignment):
        """Substitute values for variables.

        Values may be Fractions/ints, Polynomials or RationalFunctions;
        missing variables are left alone.  The result is a Fraction,
        Polynomial or RationalFunction depending on the inputs.
        """
        acc = None
        for e, c in self.terms.items():
            term = c
            for name, power in zip(self.variables, e):
                if not power:
                    continue
                value = assignment.get(name)
                if value is None:
                    value = Polynomial.variable(name)
                elif isinstance(value, int):
                    value = Fraction(value)
                term = term * value ** power
            acc = term if acc is None else acc + term
        if acc is None:
            return Fraction(0)
        return acc

    def evaluate(self, assignment):
        """Full numerical evaluation; assignment must cover all variables."""
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for name, power in zip(self.variables, e):
                if power:
                    term *= _as_fraction(assignment[name]) ** power
            total += term
        return total

    # -- univariate helpers ------------------------------------------------

    def univariate_coefficients(self):
        """Dense coefficient list (constant first) of a univariate polynomial."""
        if len(self.variables) > 1:
            raise ValueError("polynomial is not univariate")
        if not self.variables:
            return [self.terms.get((), Fraction(0))]
        deg = max(e[0] for e in self.terms) if self.terms else 0
        out = [Fraction(0)] * (deg + 1)
        for e, c in self.terms.items():
            out[e[0]] = c
        return out

    @staticmethod
    def from_univariate_coefficients(coeffs, name):
        return Polynomial((name,),
                          {(i,): _as_fraction(c)
                           for i, c in enumerate(coeffs) if c})

    # -- serialization -----------------------------------------------------

    def to_text(self):
        """Canonical text form: terms sorted by total degree then exponents."""
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[e]
            mono = "*".join(
                name if p == 1 else f"{name}^{p}"
                for name, p in zip(self.variables, e) if p)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = (f"-{first_body}" if first_sign == "-" else first_body)
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


# ---------------------------------------------------------------------------
# gcd machinery
# ---------------------------------------------------------------------------

def _univariate_gcd(a, b):
    """Monic gcd of dense Fraction coefficient lists."""
    def strip(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a = strip(list(a))
    b = strip(list(b))
    while b:
        # a mod b
        a = list(a)
        while len(a) >= len(b) and a:
            factor = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] -= factor * c
            strip(a)
        a, b = b, a
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def _main_variable(a, b):
    for name in reversed(sorted(set(a.variables) | set(b.variables))):
        if a.degree_in(name) or b.degree_in(name):
            return name
    return None


def _as_univariate_in(p, name):
    """View p as a list of Polynomial coefficients in the variable ``name``."""
    if name not in p.variables:
        return [p]
    i = p.variables.index(name)
    rest = p.variables[:i] + p.variables[i + 1:]
    deg = max((e[i] for e in p.terms), default=0)
    coeffs = [dict() for _ in range(deg + 1)]
    for e, c in p.terms.items():
        coeffs[e[i]][e[:i] + e[i + 1:]] = c
    return [Polynomial(rest, t) for t in coeffs]


def _from_univariate_in(coeffs, name):
    total = Polynomial.constant(0)
    x = Polynomial.variable(name)
    power = Polynomial.constant(1)
    for c in coeffs:
        total = total + c * power
        power = power * x
    return total


def poly_divmod(f, g):
    """Division with remainder using the lexicographic term order."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    names, tf, tg = Polynomial._align(f, g)
    ge = max(tg)
    gc = tg[ge]
    quotient = {}
    remainder = {}
    work = dict(tf)
    while work:
        e = max(work)
        c = work.pop(e)
        diff = tuple(x - y for x, y in zip(e, ge))
        if any(d < 0 for d in diff):
            remainder[e] = c
            continue
        q = c / gc
        quotient[diff] = quotient.get(diff, Fraction(0)) + q
        for e2, c2 in tg.items():
            if e2 == ge:
                continue  # leading term already cancelled by the pop
            ee = tuple(x + y for x, y in zip(diff, e2))
            s = work.get(ee, Fraction(0)) - q * c2
            if s:
                work[ee] = s
            else:
                work.pop(ee, None)
    return Polynomial(names, quotient), Polynomial(names, remainder)


def poly_exact_div(f, g):
    q, r = poly_divmod(f, g)
    if not r.is_zero():
        raise ValueError("division is not exact")
    return q


def _monomial_part(p):
    """Largest monomial dividing every term (exponentwise minimum)."""
    exps = None
    for e in p.terms:
        exps = e if exps is None else tuple(min(x, y)
                                            for x, y in zip(exps, e))
    return Polynomial(p.variables, {exps: Fraction(1)})


def poly_gcd(a, b):
    """Gcd over the rationals, normalized monic in the lexicographic order."""
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    if a.is_constant() or b.is_constant():
        return Polynomial.constant(1)
    # single-term operands: the answer is a pure monomial
    if len(a.terms) == 1 or len(b.terms) == 1:
        names, ta, tb = Polynomial._align(_monomial_part(a),
                                          _monomial_part(b))
        (ea,) = ta
        (eb,) = tb
        shared = tuple(min(x, y) for x, y in zip(ea, eb))
        return Polynomial(names, {shared: Fraction(1)})
    # divisibility fast paths cover most growth-series reductions
    small, big = (a, b) if len(a.terms) <= len(b.terms) else (b, a)
    _, r = poly_divmod(big, small)
    if r.is_zero():
        return _monic(small)
    name = _main_variable(a, b)
    if name is None:
        return Polynomial.constant(1)
    others = (set(a.variables) | set(b.variables)) - {name}
    if not others:
        g = _univariate_gcd(
            [t.constant_value() if t.terms else Fraction(0)
             for t in _as_univariate_in(a, name)],
            [t.constant_value() if t.terms else Fraction(0)
             for t in _as_univariate_in(b, name)])
        return Polynomial.from_univariate_coefficients(g, name)
    return _monic(_gcd_recursive(a, b, name))


def _monic(p):
    if p.is_zero():
        return p
    _, c = p.leading()
    return p / c


def _content_and_primitive(coeffs):
    """coeffs: Polynomial coefficients.  Returns (content, primitive coeffs)."""
    content = Polynomial.constant(0)
    for c in coeffs:
        content = poly_gcd(content, c)
        if not content.is_zero() and content.is_constant():
            return Polynomial.constant(1), coeffs
    if content.is_zero():
        return Polynomial.constant(1), coeffs
    return content, [poly_exact_div(c, content) for c in coeffs]


def _pseudo_remainder(f, g, name):
    """Fraction-free remainder of f by g, both viewed in ``name``."""
    fc = _as_univariate_in(f, name)
    gc = _as_univariate_in(g, name)
    while gc and gc[-1].is_zero():
        gc.pop()
    dg = len(gc) - 1
    lead_g = gc[-1]
    work = list(fc)
    while len(work) - 1 >= dg:
        while work and work[-1].is_zero():
            work.pop()
        if len(work) - 1 < dg:
            break
        lead_f = work[-1]
        shift = len(work) - 1 - dg
        work = [c * lead_g for c in work]
        for i, c in enumerate(gc):
            work[i + shift] = work[i + shift] - lead_f * c
        while work and work[-1].is_zero():
            work.pop()
    return _from_univariate_in(work, name) if work else Polynomial.constant(0)


def _gcd_recursive(a, b, name):
    ca, pa = _content_and_primitive(_as_univariate_in(a, name))
    cb, pb = _content_and_primitive(_as_univariate_in(b, name))
    content = poly_gcd(ca, cb)
    f = _from_univariate_in(pa, name)
    g = _from_univariate_in(pb, name)
    if len(pa) < len(pb):
        f, g = g, f
    while not g.is_zero() and g.degree_in(name) > 0:
        r = _pseudo_remainder(f, g, name)
        if r.is_zero():
            f, g = g, r
            break
        _, pr = _content_and_primitive(_as_univariate_in(r, name))
        f, g = g, _from_univariate_in(pr, name)
    if g.is_zero():
        return content * f
    # degree in name dropped to zero: a nonzero constant (in name) remains
    return content


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """A reduced fraction of Polynomials with a monic denominator."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=None):
        if isinstance(numerator, (int, Fraction)):
            numerator = Polynomial.constant(numerator)
        if denominator is None:
            denominator = Polynomial.constant(1)
        elif isinstance(denominator, (int, Fraction)):
            denominator = Polynomial.constant(denominator)
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        if numerator.is_zero():
            numerator = Polynomial.constant(0)
            denominator = Polynomial.constant(1)
        else:
            g = poly_gcd(numerator, denominator)
            if not (g.is_constant() and g.constant_value() == 1):
                numerator = poly_exact_div(numerator, g)
                denominator = poly_exact_div(denominator, g)
            _, lead = denominator.leading()
            if lead != 1:
                numerator = numerator / lead
                denominator = denominator / lead
        self.numerator = numerator
        self.denominator = denominator

    @staticmethod
    def variable(name):
        return RationalFunction(Polynomial.variable(name))

    @staticmethod
    def constant(value):
        return RationalFunction(Polynomial.constant(value))

    def variables(self):
        return tuple(sorted(set(self.numerator.variables)
                            | set(self.denominator.variables)))

    def is_zero(self):
        return self.numerator.is_zero()

    def is_constant(self):
        return self.numerator.is_constant() and self.denominator.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        num = self.numerator.constant_value() if not self.numerator.is_zero() \
            else Fraction(0)
        return num / self.denominator.constant_value()

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(value):
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, Polynomial):
            return RationalFunction(value)
        if isinstance(value, (int, Fraction)):
            return RationalFunction.constant(value)
        return NotImplemented

    def __add__(self, other):
        other = RationalFunction._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.numerator * other.denominator
            + other.numerator * self.denominator,
            self.denominator * other.denominator)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = RationalFunction._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = RationalFunction._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.numerator * other.numerator,
                                self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunction._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.numerator * other.denominator,
                                self.denominator * other.numerator)

    def __rtruediv__(self, other):
        other = RationalFunction._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValueError("exponent must be an integer")
        if n < 0:
            return RationalFunction(self.denominator, self.numerator) ** (-n)
        return RationalFunction(self.numerator ** n, self.denominator ** n)

    def __eq__(self, other):
        other = RationalFunction._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.numerator * other.denominator
                == other.numerator * self.denominator)

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __repr__(self):
        return f"RationalFunction({self.to_text()!r})"

    def to_text(self):
        if self.denominator == Polynomial.constant(1):
            return self.numerator.to_text()
        return f"({self.numerator.to_text()}) / ({self.denominator.to_text()})"

    # -- substitution and evaluation -----------------------------------------

    def substitute(self, assignment):
        """Compose with the given per-variable values (symbolic or numeric)."""
        num = self.numerator.substitute(assignment)
        den = self.denominator.substitute(assignment)
        num = RationalFunction._coerce(num)
        den = RationalFunction._coerce(den)
        if den.is_zero():
            raise PoleError("substitution hit a pole")
        return num / den

    def evaluate(self, assignment):
        """Exact value at a rational point; raises PoleError at poles."""
        den = self.denominator.evaluate(assignment)
        if den == 0:
            raise PoleError(f"pole at {assignment}")
        return self.numerator.evaluate(assignment) / den

    def series_coefficients(self, order):
        """Taylor coefficients at 0 up to total degree ``order``.

        Returns a map exponent-map -> Fraction over the function's
        variables.  The denominator must not vanish at 0.
        """
        names = self.variables()
        _, num = self.numerator._with_variables(names)
        _, den = self.denominator._with_variables(names)
        zero = tuple(0 for _ in names)
        c0 = den.get(zero, Fraction(0))
        if c0 == 0:
            raise PoleError("denominator vanishes at 0; no Taylor expansion")
        if not names:
            value = num.get((), Fraction(0)) / c0
            return {(): value} if value else {}
        ranges = [range(order + 1) for _ in names]
        coeffs = {}
        for e in sorted(_cartesian(*ranges), key=lambda e: (sum(e), e)):
            if sum(e) > order:
                continue
            total = num.get(e, Fraction(0))
            for de, dc in den.items():
                if de == zero:
                    continue
                prev = tuple(x - y for x, y in zip(e, de))
                if any(p < 0 for p in prev):
                    continue
                total -= dc * coeffs.get(prev, Fraction(0))
            value = total / c0
            if value:
                coeffs[e] = value
        return coeffs

    def series_table(self, order):
        """series_coefficients keyed by {variable: power} dicts."""
        names = self.variables()
        return {tuple(sorted(zip(names, e))): c
                for e, c in self.series_coefficients(order).items()}
