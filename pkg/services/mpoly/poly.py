"""Sparse multivariate polynomials over the rationals.

Exponent vectors are ordered variables first, then parameters, matching the
VarSet the polynomial belongs to.
"""
from dataclasses import dataclass
from math import gcd, lcm
from fractions import Fraction

from shared.errors import InputError, VarSetMismatch
from services.scalar import UPoly


@dataclass(frozen=True)
class VarSet:
    vars: tuple
    params: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'vars', tuple(self.vars))
        object.__setattr__(self, 'params', tuple(self.params))
        names = self.vars + self.params
        if len(set(names)) != len(names):
            raise InputError(f'duplicate names in {names}')

    @property
    def names(self):
        return self.vars + self.params

    @property
    def nx(self):
        return len(self.vars)

    @property
    def nparams(self):
        return len(self.params)

    def __len__(self):
        return len(self.vars) + len(self.params)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f'unknown symbol {name!r}; declared {", ".join(self.names)}') from None

    def param_space(self):
        """The VarSet with the parameters promoted to variables."""
        return VarSet(self.params, ())

    def without(self, *names):
        return VarSet(tuple(v for v in self.vars if v not in names),
                      tuple(p for p in self.params if p not in names))


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    """grevlex on everything, lex, or a block order with x-grevlex dominating y-grevlex."""

    kind: str = 'grevlex'
    nx: int = 0

    def key(self, e):
        if self.kind == 'grevlex':
            return grevlex_key(e)
        if self.kind == 'lex':
            return e
        if self.kind == 'block':
            return (grevlex_key(e[:self.nx]), grevlex_key(e[self.nx:]))
        raise ValueError(f'unknown monomial order {self.kind!r}')

    @classmethod
    def block(cls, varset):
        return cls('block', varset.nx)


GREVLEX = MonomialOrder('grevlex')
LEX = MonomialOrder('lex')


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class MPoly:
    __slots__ = ('varset', 'terms')

    def __init__(self, varset, terms=None):
        self.varset = varset
        clean = {}
        for e, c in (terms or {}).items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    # constructors

    @classmethod
    def zero(cls, varset):
        return cls(varset)

    @classmethod
    def constant(cls, varset, c):
        return cls(varset, {(0,) * len(varset): c})

    @classmethod
    def var(cls, varset, name):
        e = [0] * len(varset)
        e[varset.index(name)] = 1
        return cls(varset, {tuple(e): 1})

    @classmethod
    def monomial(cls, varset, e, c=1):
        return cls(varset, {tuple(e): c})

    @classmethod
    def from_upoly(cls, varset, name, p):
        i = varset.index(name)
        terms = {}
        for k, c in enumerate(p.coeffs):
            e = [0] * len(varset)
            e[i] = k
            terms[tuple(e)] = c
        return cls(varset, terms)

    # queries

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.varset), Fraction(0))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, name):
        i = self.varset.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def involves(self, name):
        i = self.varset.index(name)
        return any(e[i] for e in self.terms)

    def variables(self):
        """Names that occur with a positive exponent."""
        return [n for i, n in enumerate(self.varset.names) if any(e[i] for e in self.terms)]

    def is_param_only(self):
        nx = self.varset.nx
        return all(not any(e[:nx]) for e in self.terms)

    def is_homogeneous(self, names=None):
        idx = range(len(self.varset)) if names is None else [self.varset.index(n) for n in names]
        degrees = {sum(e[i] for i in idx) for e in self.terms}
        return len(degrees) <= 1

    def leading_term(self, order=GREVLEX):
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order=GREVLEX):
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order=GREVLEX):
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order=GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.varset == other.varset and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.varset, frozenset(self.terms.items())))

    def __repr__(self):
        return f'MPoly({self.to_text()})'

    def __str__(self):
        return self.to_text()

    def to_text(self, order=GREVLEX):
        if not self.terms:
            return '0'
        names = self.varset.names
        parts = []
        for e, c in self.sorted_terms(order):
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f'{name}^{k}')
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = '*'.join(factors)
            else:
                body = '*'.join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else f'-{body}')
            else:
                parts.append(f'+ {body}' if c > 0 else f'- {body}')
        return ' '.join(parts)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.varset != self.varset:
                raise VarSetMismatch(f'{other.varset.names} vs {self.varset.names}')
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.constant(self.varset, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MPoly(self.varset, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.varset, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                terms[e] = terms.get(e, 0) + c1 * c2
        return MPoly(self.varset, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = MPoly.constant(self.varset, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        return MPoly(self.varset, {e: c * v for e, v in self.terms.items()})

    def mul_term(self, e, c):
        return MPoly(self.varset, {mono_mul(e, k): c * v for k, v in self.terms.items()})

    def exact_div(self, other):
        """Quotient of an exact division; ArithmeticError on a nonzero remainder."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError('division by the zero polynomial')
        if other.is_constant():
            return self.scale(1 / other.constant_value())
        lead, lc = other.leading_term(LEX)
        quotient = {}
        rem = self
        while rem:
            e, c = rem.leading_term(LEX)
            if not divides(lead, e):
                raise ArithmeticError(f'{other} does not divide {self}')
            m = mono_div(e, lead)
            q = c / lc
            quotient[m] = q
            rem = rem - other.mul_term(m, q)
        return MPoly(self.varset, quotient)

    def divides(self, other):
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    # calculus and substitution

    def diff(self, name):
        i = self.varset.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                terms[tuple(d)] = c * e[i]
        return MPoly(self.varset, terms)

    def subs(self, values):
        """Substitute rationals or polynomials (same VarSet) for named symbols."""
        idx = {self.varset.index(n): v for n, v in values.items()}
        result = MPoly.zero(self.varset)
        powers = {}
        for e, c in self.terms.items():
            rest = list(e)
            term = MPoly.constant(self.varset, c)
            scalar = Fraction(1)
            for i, v in idx.items():
                k = e[i]
                if not k:
                    continue
                rest[i] = 0
                if isinstance(v, MPoly):
                    key = (i, k)
                    if key not in powers:
                        powers[key] = v ** k
                    term = term * powers[key]
                else:
                    scalar *= Fraction(v) ** k
            result = result + term.mul_term(tuple(rest), scalar)
        return result

    def evaluate(self, point):
        """Full evaluation: point maps every occurring name to a rational."""
        total = Fraction(0)
        names = self.varset.names
        for e, c in self.terms.items():
            value = c
            for name, k in zip(names, e):
                if k:
                    value *= Fraction(point[name]) ** k
            total += value
        return total

    def embed(self, varset, rename=None):
        """Rewrite in another VarSet by name; every occurring name must exist there."""
        rename = rename or {}
        targets = [varset.index(rename.get(n, n)) if any(e[i] for e in self.terms) else None
                   for i, n in enumerate(self.varset.names)]
        terms = {}
        for e, c in self.terms.items():
            d = [0] * len(varset)
            for i, k in enumerate(e):
                if k:
                    d[targets[i]] += k
            d = tuple(d)
            terms[d] = terms.get(d, 0) + c
        return MPoly(varset, terms)

    def to_upoly(self, name):
        if any(n != name for n in self.variables()):
            raise InputError(f'{self} is not univariate in {name}')
        i = self.varset.index(name)
        coeffs = [Fraction(0)] * (self.degree(name) + 1 if self.terms else 0)
        for e, c in self.terms.items():
            coeffs[e[i]] += c
        return UPoly(coeffs)

    def coeffs_in(self, name):
        """Dense ascending coefficient list in one symbol; entries are MPoly free of it."""
        i = self.varset.index(name)
        buckets = [dict() for _ in range(self.degree(name) + 1)] if self.terms else []
        for e, c in self.terms.items():
            d = list(e)
            d[i] = 0
            buckets[e[i]][tuple(d)] = c
        return [MPoly(self.varset, b) for b in buckets]

    @classmethod
    def from_coeffs(cls, varset, name, coeffs):
        x = cls.var(varset, name)
        result = cls.zero(varset)
        for c in reversed(coeffs):
            result = result * x + c
        return result

    def split_x(self):
        """Map x-monomial -> parameter-only coefficient."""
        nx = self.varset.nx
        parts = {}
        for e, c in self.terms.items():
            xe, ye = e[:nx], (0,) * nx + e[nx:]
            parts.setdefault(xe, {})[ye] = c
        return {xe: MPoly(self.varset, t) for xe, t in parts.items()}

    def homogenize(self, name, degree=None):
        """Homogenize with respect to all symbols using `name` as the extra coordinate."""
        i = self.varset.index(name)
        d = self.total_degree() if degree is None else degree
        terms = {}
        for e, c in self.terms.items():
            h = list(e)
            h[i] += d - sum(e)
            terms[tuple(h)] = c
        return MPoly(self.varset, terms)

    # normalization

    def content(self):
        """Positive rational c with self / c integral, primitive and positive leading coefficient."""
        if not self.terms:
            return Fraction(0)
        coeffs = list(self.terms.values())
        den = lcm(*(c.denominator for c in coeffs))
        g = gcd(*(int(c * den) for c in coeffs))
        return Fraction(g, den)

    def primitive(self, order=GREVLEX):
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient(order) < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self, order=GREVLEX):
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))
