"""Textual polynomial syntax and the bridge to sympy.

Parsing goes through sympy's expression parser with decimals rationalized, so
`0.31100521007570264` is read as the exact fraction it prints. Factoring and
multivariate gcds are delegated to sympy over QQ.
"""
from fractions import Fraction

import sympy
from sympy.parsing.sympy_parser import (convert_xor, implicit_multiplication, parse_expr,
                                        rationalize, standard_transformations)
from sympy.polys.polyerrors import BasePolynomialError

from shared.errors import InputError

from services.scalar import UPoly

from .poly import MPoly, VarSet

TRANSFORMATIONS = standard_transformations + (implicit_multiplication, convert_xor, rationalize)


def symbols_for(varset):
    return [sympy.Symbol(n) for n in varset.names]


def parse_expression(text, names):
    local = {n: sympy.Symbol(n) for n in names}
    try:
        expr = parse_expr(text, local_dict=local, transformations=TRANSFORMATIONS, evaluate=True)
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as e:
        raise InputError(f'cannot parse polynomial {text!r}: {e}') from e
    unknown = {str(s) for s in expr.free_symbols} - set(names)
    if unknown:
        raise InputError(f'unknown symbols {sorted(unknown)} in {text!r}; declared {", ".join(names)}')
    return expr


def parse_poly(text, varset):
    """Parse the shared polynomial syntax into an MPoly over varset."""
    expr = parse_expression(text, varset.names)
    try:
        poly = sympy.Poly(sympy.expand(expr), *symbols_for(varset), domain='QQ')
    except BasePolynomialError as e:
        raise InputError(f'{text!r} is not a polynomial in {", ".join(varset.names)}') from e
    return from_sympy_poly(poly, varset)


def to_rational(value):
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def from_sympy_poly(poly, varset):
    return MPoly(varset, {tuple(m): to_rational(c) for m, c in poly.terms()})


def to_sympy_poly(p):
    data = {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}
    if not data:
        data = {(0,) * len(p.varset): sympy.Integer(0)}
    return sympy.Poly.from_dict(data, *symbols_for(p.varset), domain='QQ')


def to_sympy_expr(p):
    return to_sympy_poly(p).as_expr()


def format_poly(p):
    return p.to_text()


def factor_list(p):
    """(rational constant, [(irreducible primitive factor, multiplicity), ...])."""
    coeff, factors = to_sympy_poly(p).factor_list()
    constant = to_rational(coeff)
    result = []
    for f, k in factors:
        g = from_sympy_poly(f, p.varset)
        prim = g.primitive()
        constant *= (g.leading_coefficient() / prim.leading_coefficient()) ** k
        result.append((prim, k))
    return constant, result


def irreducible_factors(p):
    """Distinct non-constant irreducible factors, primitive with positive leading coefficient."""
    if p.is_constant():
        return []
    return [f for f, _ in factor_list(p)[1] if not f.is_constant()]


def squarefree(p):
    """Product of the distinct irreducible factors (primitive); 1 for constants."""
    result = MPoly.constant(p.varset, 1)
    for f in irreducible_factors(p):
        result = result * f
    return result


def poly_gcd(p, q):
    g = from_sympy_poly(sympy.gcd(to_sympy_poly(p), to_sympy_poly(q)), p.varset)
    return g.primitive() if not g.is_zero() else g


def poly_lcm(p, q):
    return from_sympy_poly(sympy.lcm(to_sympy_poly(p), to_sympy_poly(q)), p.varset).primitive()


def parse_rational(text):
    """Exact rational from '3', '-5/2' or a decimal like '0.125'."""
    expr = parse_expression(text.strip(), ())
    if not expr.is_Rational:
        raise InputError(f'{text!r} is not a rational number')
    return to_rational(expr)


def minimal_polynomial(alpha):
    """Irreducible factor of alpha.defining that vanishes at alpha (primitive)."""
    if alpha.is_rational:
        return UPoly((-alpha.lo, 1))
    varset = VarSet(('z',))
    _, factors = factor_list(MPoly.from_upoly(varset, 'z', alpha.defining))
    for f, _ in factors:
        m = f.to_upoly('z')
        if m.degree >= 1 and m(alpha.lo) * m(alpha.hi) < 0:
            return m
    raise ArithmeticError(f'no factor of {alpha.defining} changes sign on [{alpha.lo}, {alpha.hi}]')
