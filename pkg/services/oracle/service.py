"""Independent solution counting for non-parametric zero-dimensional systems.

Shares nothing with the Hermite pipeline beyond the polynomial types: one
variable is handled by a gcd, several by a lex Gröbner basis (computed by
sympy) in shape position with respect to a random separating linear form.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from shared.config import config
from shared.errors import InputError, NotZeroDimensional, SeparationFailure
from shared.logging import setup_logger
from services.mpoly import MPoly
from services.mpoly.syntax import minimal_polynomial, to_rational, to_sympy_expr
from services.scalar import UPoly, gcd_upoly, isolate_real_roots, sign_at, squarefree_part

logger = setup_logger('oracle')


@dataclass(frozen=True)
class SolveResult:
    complex_distinct: int
    real_distinct: int
    real_boxes: tuple = ()
    separating_form: tuple = ()
    eliminant: UPoly = field(default=None, repr=False)
    variables: tuple = ()

    def to_dict(self):
        return {
            'complex_distinct': self.complex_distinct,
            'real_distinct': self.real_distinct,
            'separating_form': [str(c) for c in self.separating_form],
            'real_boxes': [
                {v: [str(lo), str(hi)] for v, (lo, hi) in zip(self.variables, box)}
                for box in self.real_boxes
            ],
        }


def _upoly_from_expr(expr, t):
    coeffs = sympy.Poly(expr, t, domain='QQ').all_coeffs()
    return UPoly([to_rational(c) for c in reversed(coeffs)])


class _Shape:
    """x_i = g_i(T) for every variable, h(T) = 0 square-free."""

    def __init__(self, eliminant, coordinates, form):
        self.eliminant = eliminant
        self.coordinates = coordinates
        self.form = form


def _lex_shape(exprs, symbols, form):
    t = sympy.Symbol('_sep')
    u = sum(sympy.Rational(c.numerator, c.denominator) * s for c, s in zip(form, symbols))
    basis = sympy.groebner(list(exprs) + [t - u], *symbols, t, order='lex', domain='QQ')
    polys = list(basis.exprs)
    if polys == [1]:
        return 'empty'
    univariate = [p for p in polys if p.free_symbols <= {t}]
    if not univariate:
        raise NotZeroDimensional('the ideal has no eliminant in the separating variable')
    h = _upoly_from_expr(univariate[0], t)
    if len(polys) != len(symbols) + 1:
        return None
    coordinates = []
    for s in symbols:
        found = None
        for p in polys:
            if s not in p.free_symbols or p.free_symbols - {s, t}:
                continue
            lead = sympy.Poly(p, s)
            if lead.degree() != 1:
                continue
            c = lead.coeffs()[0]
            if c.free_symbols:
                continue
            found = _upoly_from_expr(sympy.expand(-(p - c * s) / c), t)
            break
        if found is None:
            return None
        coordinates.append(found)
    if squarefree_part(h).degree != h.degree:
        return None
    return _Shape(h, coordinates, form)


def _radicalize(exprs, symbols):
    """Add the square-free part of every single-variable eliminant."""
    extra = []
    for s in symbols:
        others = [v for v in symbols if v != s]
        basis = sympy.groebner(list(exprs), *others, s, order='lex', domain='QQ')
        univariate = [p for p in basis.exprs if p.free_symbols <= {s}]
        if not univariate:
            raise NotZeroDimensional(f'no eliminant in {s}')
        extra.append(sympy.sqf_part(univariate[0]))
    return list(exprs) + extra


def _boxes(shape, roots, bits):
    """Refine roots until coordinate boxes are narrow and pairwise disjoint."""
    width = Fraction(1, 2 ** bits)
    roots = list(roots)

    def box(r):
        return [g.interval_eval(r.lo, r.hi) for g in shape.coordinates]

    def disjoint(a, b):
        return any(x[1] < y[0] or y[1] < x[0] for x, y in zip(a, b))

    while True:
        boxes = [box(r) for r in roots]
        wide = [i for i, b in enumerate(boxes) if any(hi - lo > width for lo, hi in b)]
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                if not disjoint(boxes[i], boxes[j]):
                    wide.extend((i, j))
        if not wide:
            return roots, boxes
        for i in set(wide):
            roots[i] = roots[i].refine()


def oracle_count(system, algebraic=None, seed=None, retries=None):
    """Count distinct complex and real solutions of a system without parameters.

    algebraic=(name, alpha) treats the variable `name` as the real algebraic
    number alpha: its minimal polynomial joins the equations and only real
    solutions whose `name`-coordinate is alpha are counted; the complex count
    is per conjugate.
    """
    varset = system.varset
    if varset.params:
        raise InputError(f'oracle needs a specialized system, parameters {varset.params} remain')
    retries = config.getint('oracle', 'retries', 8) if retries is None else retries
    bits = config.getint('oracle', 'box_width_bits', 12)
    rng = random.Random(config.getint('oracle', 'seed', 7) if seed is None else seed)

    equations = [eq for eq in system.equations if not eq.is_zero()]
    m = None
    if algebraic is not None:
        name, alpha = algebraic
        m = minimal_polynomial(alpha)
        equations.append(MPoly.from_upoly(varset, name, m))

    symbols = [sympy.Symbol(n) for n in varset.vars]
    if not symbols:
        empty = any(not eq.is_zero() for eq in equations)
        return SolveResult(0 if empty else 1, 0 if empty else 1, ((),) if not empty else ())

    if len(symbols) == 1:
        if not equations:
            raise NotZeroDimensional('no equations in one variable')
        g = UPoly()
        for eq in equations:
            g = gcd_upoly(g, eq.to_upoly(varset.vars[0]))
        shape = _Shape(squarefree_part(g) if g.degree >= 1 else UPoly((1,)), [UPoly.x()], (Fraction(1),))
    else:
        exprs = [to_sympy_expr(eq) for eq in equations]
        shape = None
        radicalized = False
        for attempt in range(retries):
            form = [Fraction(1)] + [Fraction(rng.randint(-(attempt + 2) * 3, (attempt + 2) * 3))
                                    for _ in symbols[1:]]
            shape = _lex_shape(exprs, symbols, form)
            if shape == 'empty':
                return SolveResult(0, 0, (), tuple(form), UPoly((1,)), varset.vars)
            if shape is not None:
                break
            if not radicalized:
                logger.warning(f"Oracle: no shape position for form {[str(c) for c in form]}, "
                               f"adding square-free eliminants")
                exprs = _radicalize(exprs, symbols)
                radicalized = True
            else:
                logger.warning(f"Oracle: form {[str(c) for c in form]} does not separate, retrying")
        else:
            raise SeparationFailure(f'no separating linear form after {retries} attempts')

    h = shape.eliminant
    complex_distinct = h.degree
    roots = isolate_real_roots(h) if h.degree >= 1 else []
    roots, boxes = _boxes(shape, roots, bits)

    if algebraic is not None:
        name, alpha = algebraic
        k = varset.vars.index(name)
        kept_boxes = []
        for r in roots:
            if alpha.is_rational:
                if sign_at(shape.coordinates[k] - alpha.lo, r) == 0:
                    kept_boxes.append([g.interval_eval(r.lo, r.hi) for g in shape.coordinates])
                continue
            while True:
                lo, hi = shape.coordinates[k].interval_eval(r.lo, r.hi)
                if alpha.lo <= lo and hi <= alpha.hi:
                    kept_boxes.append([g.interval_eval(r.lo, r.hi) for g in shape.coordinates])
                    break
                if hi < alpha.lo or lo > alpha.hi:
                    break
                r = r.refine()
        boxes = kept_boxes
        complex_distinct //= m.degree

    logger.debug(f"Oracle: {complex_distinct} complex, {len(boxes)} real")
    return SolveResult(complex_distinct, len(boxes), tuple(tuple(b) for b in boxes),
                       tuple(shape.form), h, varset.vars)
