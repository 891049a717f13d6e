"""Dense univariate polynomials with exact rational coefficients."""
import math
from fractions import Fraction

from shared.errors import ZeroPolynomial


def sign(value):
    return (value > 0) - (value < 0)


class UPoly:
    """Immutable polynomial; coefficients stored ascending, no trailing zeros."""

    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def from_roots(cls, roots):
        p = cls((1,))
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    # queries

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f'UPoly({self.to_text()})'

    def to_text(self, var='y'):
        if not self.coeffs:
            return '0'
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = var if e == 1 else f'{var}^{e}'
                body = mono if mag == 1 else f'{mag}*{mono}'
            if not parts:
                parts.append(body if c > 0 else f'-{body}')
            else:
                parts.append(f'+ {body}' if c > 0 else f'- {body}')
        return ' '.join(parts)

    # arithmetic

    @staticmethod
    def _coerce(other):
        if isinstance(other, UPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UPoly((other,))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

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
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = UPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        return UPoly([c * x for x in self.coeffs])

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError('division by the zero polynomial')
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            q = rem[k + other.degree] / lead
            quot[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return UPoly(quot), UPoly(rem[:other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f'{other.to_text()} does not divide {self.to_text()}')
        return q

    def monic(self):
        if not self.coeffs:
            return self
        return self.scale(1 / self.lc)

    def primitive(self):
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.coeffs:
            return self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return UPoly([Fraction(i, g) for i in ints])

    def derivative(self):
        return UPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    # evaluation

    def __call__(self, value):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose(self, other):
        acc = UPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def interval_eval(self, lo, hi):
        """Enclosure of the range of self over [lo, hi] (Horner in interval arithmetic)."""
        acc_lo = acc_hi = Fraction(0)
        for c in reversed(self.coeffs):
            products = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
            acc_lo, acc_hi = min(products) + c, max(products) + c
        return acc_lo, acc_hi

    def sign_at_infinity(self, positive=True):
        if not self.coeffs:
            return 0
        s = sign(self.lc)
        if not positive and self.degree % 2:
            s = -s
        return s

    def cauchy_bound(self):
        """A power of two strictly larger than the modulus of every root."""
        if self.degree < 1:
            return Fraction(1)
        bound = 1 + max(abs(c / self.lc) for c in self.coeffs[:-1])
        power = Fraction(1)
        while power <= bound:
            power *= 2
        return power


def gcd_upoly(p, q):
    """Monic greatest common divisor; gcd(p, 0) = monic(p)."""
    a, b = p, q
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(p):
    if p.is_zero():
        raise ZeroPolynomial('square-free part of the zero polynomial')
    if p.degree < 1:
        return UPoly((1,))
    return p.exact_div(gcd_upoly(p, p.derivative())).monic()


def sign_variations(values):
    signs = [sign(v) for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_sequence(p):
    seq = [p, p.derivative()]
    while seq[-1]:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    return [s for s in seq if s]


def _variations_at(seq, value):
    return sign_variations([s(value) for s in seq])


def _variations_at_infinity(seq, positive):
    return sign_variations([s.sign_at_infinity(positive) for s in seq])


def sturm_count(p, lo=None, hi=None):
    """Number of distinct real roots of p in (lo, hi]; None means infinite."""
    seq = sturm_sequence(squarefree_part(p))
    v_lo = _variations_at_infinity(seq, False) if lo is None else _variations_at(seq, lo)
    v_hi = _variations_at_infinity(seq, True) if hi is None else _variations_at(seq, hi)
    return v_lo - v_hi


def descartes_bound(p, lo, hi):
    """Sign variations of p transformed to (0, inf) from (lo, hi); 0 or 1 are exact counts."""
    # x in (0, inf)  ->  t = (lo*x + hi) / (x + 1) in (lo, hi)
    num = UPoly((hi, lo))
    den = UPoly((1, 1))
    d = p.degree
    q = UPoly()
    for i, c in enumerate(p.coeffs):
        if c:
            q = q + (num ** i) * (den ** (d - i)) * c
    return sign_variations(q.coeffs)


def simplest_between(lo, hi):
    """Smallest-denominator rational strictly inside (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError(f'empty interval ({lo}, {hi})')
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    n = math.floor(lo)
    if n + 1 < hi:
        return Fraction(n + 1)
    lo_f, hi_f = lo - n, hi - n
    if lo_f == 0:
        return n + Fraction(1, math.floor(1 / hi_f) + 1)
    return n + 1 / simplest_between(1 / hi_f, 1 / lo_f)
