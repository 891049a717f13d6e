"""Real algebraic numbers: isolation, refinement and exact sign evaluation."""
from dataclasses import dataclass
from fractions import Fraction

from shared.errors import ZeroPolynomial
from shared.logging import setup_logger

from .upoly import (UPoly, descartes_bound, gcd_upoly, sign, sign_variations,
                    squarefree_part, sturm_count, sturm_sequence)

logger = setup_logger('scalar')


@dataclass(frozen=True)
class RealAlgebraicNumber:
    """A real root of a square-free polynomial, pinned by an isolating interval.

    Either lo == hi and defining(lo) == 0, or defining(lo) * defining(hi) < 0
    and [lo, hi] holds exactly one root.
    """

    defining: UPoly
    lo: Fraction
    hi: Fraction

    @classmethod
    def from_rational(cls, value):
        value = Fraction(value)
        return cls(UPoly((-value, 1)), value, value)

    @property
    def is_rational(self):
        return self.lo == self.hi

    @property
    def width(self):
        return self.hi - self.lo

    def refine(self):
        """Halve the interval; returns a new number."""
        if self.is_rational:
            return self
        mid = (self.lo + self.hi) / 2
        at_mid = self.defining(mid)
        if at_mid == 0:
            return RealAlgebraicNumber(self.defining, mid, mid)
        if sign(self.defining(self.lo)) * sign(at_mid) < 0:
            return RealAlgebraicNumber(self.defining, self.lo, mid)
        return RealAlgebraicNumber(self.defining, mid, self.hi)

    def refine_to(self, width):
        number = self
        while number.width > width:
            number = number.refine()
        return number

    def compare(self, value):
        """Sign of (self - value) for a rational value."""
        value = Fraction(value)
        if self.is_rational:
            return sign(self.lo - value)
        number = self
        while number.lo <= value <= number.hi:
            if number.defining(value) == 0:
                return 0
            number = number.refine()
            if number.is_rational:
                return sign(number.lo - value)
        return 1 if number.lo > value else -1

    def midpoint(self):
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.midpoint())

    def to_text(self, var='y', digits=6):
        if self.is_rational:
            return str(self.lo)
        fine = self.refine_to(Fraction(1, 10 ** (digits + 1)))
        return f'root of {self.defining.primitive().to_text(var)} in [{fine.lo}, {fine.hi}] ~ {float(fine):.{digits}f}'

    def to_dict(self):
        if self.is_rational:
            return {'value': str(self.lo)}
        return {
            'defining': [str(c) for c in self.defining.primitive().coeffs],
            'interval': [str(self.lo), str(self.hi)],
            'approx': f'{float(self):.6f}',
        }


def _shrink_endpoints(p, lo, hi, count):
    """Move endpoints of an isolating interval off roots of p.

    count(a, b) gives the exact number of roots of p in the open interval (a, b);
    the caller guarantees count(lo, hi) == 1.
    """
    while p(lo) == 0 or p(hi) == 0:
        mid = (lo + hi) / 2
        if p(mid) == 0:
            return mid, mid
        if count(lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def _isolate_descartes(p, bound):
    found = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        v = descartes_bound(p, a, b)
        if v == 0:
            continue
        if v == 1:
            found.append(_shrink_endpoints(p, a, b, lambda lo, hi: descartes_bound(p, lo, hi)))
            continue
        mid = (a + b) / 2
        if p(mid) == 0:
            found.append((mid, mid))
        stack.append((a, mid))
        stack.append((mid, b))
    return found


def _isolate_sturm(p, bound):
    seq = sturm_sequence(p)

    def count_open(a, b):
        # roots in (a, b] minus a root sitting at b
        n = sign_variations([s(a) for s in seq]) - sign_variations([s(b) for s in seq])
        return n - (1 if p(b) == 0 else 0)

    found = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        n = count_open(a, b)
        if n == 0:
            continue
        if n == 1:
            found.append(_shrink_endpoints(p, a, b, count_open))
            continue
        mid = (a + b) / 2
        if p(mid) == 0:
            found.append((mid, mid))
        stack.append((a, mid))
        stack.append((mid, b))
    return found


def isolate_real_roots(p):
    """Isolating intervals for the distinct real roots of p, ascending."""
    if p.is_zero():
        raise ZeroPolynomial('cannot isolate the roots of the zero polynomial')
    sqf = squarefree_part(p)
    if sqf.degree < 1:
        return []
    bound = sqf.cauchy_bound()
    intervals = _isolate_descartes(sqf, bound)
    expected = sturm_count(sqf)
    if len(intervals) != expected:
        logger.warning(f"Descartes isolation found {len(intervals)} roots, Sturm certifies {expected}; "
                       f"falling back to Sturm bisection")
        intervals = _isolate_sturm(sqf, bound)
    intervals.sort()
    roots = [RealAlgebraicNumber(sqf, lo, hi) for lo, hi in intervals]
    # neighbours may share a non-root endpoint; keep the closed intervals disjoint
    for i in range(len(roots) - 1):
        while roots[i].hi >= roots[i + 1].lo:
            roots[i] = roots[i].refine()
            roots[i + 1] = roots[i + 1].refine()
    return roots


def sign_at(p, a):
    """Exact sign of p at the real algebraic number a."""
    if p.is_zero():
        return 0
    if a.is_rational:
        return sign(p(a.lo))
    g = gcd_upoly(p, a.defining)
    if g.degree >= 1 and sign(g(a.lo)) * sign(g(a.hi)) < 0:
        return 0
    number = a
    while True:
        if number.is_rational:
            return sign(p(number.lo))
        if p(number.lo) != 0 and p(number.hi) != 0 and descartes_bound(p, number.lo, number.hi) == 0:
            return sign(p(number.lo))
        number = number.refine()
