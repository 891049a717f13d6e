#!/usr/bin/env python3
"""Sparse polynomials, the textual syntax and elimination."""
import os
import random
import sys
from fractions import Fraction

import pytest
import sympy

sys.path.append(os.path.dirname(__file__))

from shared.errors import DegenerateInput, InputError, VarSetMismatch
from services.mpoly import (GREVLEX, LEX, MonomialOrder, MPoly, VarSet, discriminant, factor_list,
                            irreducible_factors, parse_poly, parse_rational, resultant, squarefree)
from services.mpoly.syntax import minimal_polynomial, poly_gcd, to_sympy_expr
from services.scalar import UPoly, isolate_real_roots

XY = VarSet(('x', 'y'))
JOINT = VarSet(('x1', 'x2'), ('y',))


def P(text, varset=XY):
    return parse_poly(text, varset)


def random_poly(rng, varset=XY, terms=4, degree=3, lead=None):
    """Small integer coefficients; `lead` forces that variable to full degree."""
    data = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, degree) for _ in varset.names)
        data[e] = rng.randint(-5, 5)
    if lead is not None:
        e = [0] * len(varset)
        e[varset.index(lead)] = degree
        data[tuple(e)] = rng.choice([-3, -2, -1, 1, 2, 3])
    return MPoly(varset, data)


def sylvester_determinant(p, q, name):
    x = sympy.Symbol(name)
    a = sympy.Poly(to_sympy_expr(p), x).all_coeffs()
    b = sympy.Poly(to_sympy_expr(q), x).all_coeffs()
    m, n = len(a) - 1, len(b) - 1
    rows = [[0] * k + a + [0] * (n - 1 - k) for k in range(n)]
    rows += [[0] * k + b + [0] * (m - 1 - k) for k in range(m)]
    return sympy.expand(sympy.Matrix(rows).det())


class TestRandomProperties:
    def test_ring_axioms(self):
        rng = random.Random(11)
        zero, one = MPoly.zero(XY), MPoly.constant(XY, 1)
        for _ in range(30):
            p, q, r = (random_poly(rng) for _ in range(3))
            assert p + q == q + p
            assert p * q == q * p
            assert (p + q) + r == p + (q + r)
            assert (p * q) * r == p * (q * r)
            assert p * (q + r) == p * q + p * r
            assert p + zero == p
            assert p * one == p
            assert (p - p).is_zero()
            assert (p + q) - q == p

    def test_resultant_matches_sylvester_determinant(self):
        rng = random.Random(12)
        for _ in range(25):
            p = random_poly(rng, degree=rng.randint(1, 3), lead='x')
            q = random_poly(rng, degree=rng.randint(1, 3), lead='x')
            expected = sylvester_determinant(p, q, 'x')
            assert sympy.expand(to_sympy_expr(resultant(p, q, 'x')) - expected) == 0

    def test_discriminant_vanishes_exactly_on_repeated_factors(self):
        rng = random.Random(13)
        seen = set()
        for k in range(30):
            f = random_poly(rng, terms=2, degree=1, lead='x')
            g = random_poly(rng, terms=2, degree=rng.randint(1, 2), lead='x')
            p = f * g ** (1 + k % 2)
            repeated = poly_gcd(p, p.diff('x')).degree('x') > 0
            assert discriminant(p, 'x').is_zero() == repeated
            seen.add(repeated)
        assert seen == {True, False}

    def test_specialize_then_evaluate(self):
        rng = random.Random(14)
        for _ in range(30):
            p = random_poly(rng)
            u, v = Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            assert p.subs({'y': v}).evaluate({'x': u}) == p.evaluate({'x': u, 'y': v})

    def test_print_then_parse(self):
        rng = random.Random(15)
        for _ in range(30):
            p = random_poly(rng, terms=5)
            p = p * Fraction(rng.randint(1, 7), rng.randint(1, 7))
            assert parse_poly(p.to_text(), XY) == p


class TestSyntax:
    def test_parse_and_print(self):
        p = P('41*y^8 + 43*y^7 - y')
        assert p.degree('y') == 8
        assert p.to_text() == '41*y^8 + 43*y^7 - y'
        assert P('2x y - 3/4').to_text() == '2*x*y - 3/4'

    def test_decimals_are_exact(self):
        p = P('0.125*x + 0.31100521007570264')
        assert p.terms[(1, 0)] == Fraction(1, 8)
        assert p.constant_value() == Fraction(31100521007570264, 10 ** 17)

    def test_unknown_symbol(self):
        with pytest.raises(InputError, match='unknown symbols'):
            P('x + z')

    def test_not_a_polynomial(self):
        with pytest.raises(InputError):
            P('1/x')

    def test_parse_rational(self):
        assert parse_rational('-5/2') == Fraction(-5, 2)
        assert parse_rational('0.125') == Fraction(1, 8)
        with pytest.raises(InputError):
            parse_rational('x')


class TestArithmetic:
    def test_ring_operations(self):
        p, q = P('x + y'), P('x - y')
        assert p * q == P('x^2 - y^2')
        assert (p ** 3).exact_div(p) == p * p
        assert 2 - p == P('2 - x - y')
        with pytest.raises(ArithmeticError):
            P('x^2 + 1').exact_div(p)

    def test_varset_mismatch(self):
        with pytest.raises(VarSetMismatch):
            P('x') + parse_poly('x', VarSet(('x', 'z')))

    def test_substitution_and_evaluation(self):
        p = P('x^2*y + 3*y')
        assert p.subs({'y': 2}) == P('2*x^2 + 6')
        assert p.subs({'x': P('y')}) == P('y^3 + 3*y')
        assert p.evaluate({'x': Fraction(1, 2), 'y': 4}) == 13

    def test_orders(self):
        p = parse_poly('x1^2 + x2^3 + y^5', JOINT)
        assert p.leading_monomial(GREVLEX) == (0, 0, 5)
        assert p.leading_monomial(MonomialOrder.block(JOINT)) == (0, 3, 0)
        assert p.leading_monomial(LEX) == (2, 0, 0)

    def test_split_and_embed(self):
        p = parse_poly('y*x1^2 + x1^2 - y^2*x2', JOINT)
        parts = p.split_x()
        assert parts[(2, 0)] == parse_poly('y + 1', JOINT)
        assert parts[(0, 1)] == parse_poly('-y^2', JOINT)
        q = parse_poly('y^2 + 1', JOINT).embed(JOINT.param_space())
        assert q.varset == VarSet(('y',))
        assert q.to_upoly('y') == UPoly((1, 0, 1))

    def test_homogenize(self):
        h = parse_poly('x^2 + y - 1', VarSet(('x', 'y', 'w'))).homogenize('w')
        assert h == parse_poly('x^2 + y*w - w^2', VarSet(('x', 'y', 'w')))
        assert h.is_homogeneous()

    def test_primitive(self):
        assert P('-2/3*x + 4/3').primitive() == P('x - 2')


class TestElimination:
    def test_resultant_sign_convention(self):
        assert resultant(P('x - 3'), P('x - y'), 'x') == P('3 - y')
        assert resultant(P('x^2 - y'), P('x'), 'x') == P('-y')

    def test_resultant_detects_common_roots(self):
        r = resultant(P('x^2 + y^2 - 1'), P('x - y'), 'x')
        roots = isolate_real_roots(r.to_upoly('y'))
        assert len(roots) == 2

    def test_discriminant(self):
        assert discriminant(P('x^2 - y'), 'x') == P('-4*y')
        with pytest.raises(DegenerateInput):
            discriminant(P('x - y'), 'x')


class TestFactoring:
    def test_factor_list_rebuilds(self):
        p = P('2*x^3 - 2*x*y^2')
        constant, factors = factor_list(p)
        rebuilt = MPoly.constant(XY, constant)
        for f, k in factors:
            rebuilt = rebuilt * f ** k
        assert rebuilt == p
        assert sorted(f.to_text() for f in irreducible_factors(p)) == ['x', 'x + y', 'x - y']

    def test_squarefree_and_gcd(self):
        assert squarefree(P('(x - y)^3 * (x + 1)^2')) == P('(x - y)*(x + 1)').primitive()
        assert poly_gcd(P('x^2 - y^2'), P('x^2 + 2*x*y + y^2')) == P('x + y')

    def test_minimal_polynomial(self):
        t = UPoly.x()
        alpha = isolate_real_roots((t ** 2 - 2) * (t - 5))[1]
        assert minimal_polynomial(alpha).degree == 2
        assert minimal_polynomial(isolate_real_roots(t ** 2 - 4)[0]) == t + 2


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
