#!/usr/bin/env python3
"""Parametric Hermite matrices, exact signatures and the minor-sign rule."""
import os
import sys
from fractions import Fraction

import pytest

sys.path.append(os.path.dirname(__file__))

from shared.errors import NonSpecializable, NotRadical
from shared.models import UNDETERMINED
from services.groebner import groebner_basis, load_system, parse_system
from services.hermite import (SymRatMatrix, berkowitz, counts_from_minor_signs, hermite_matrix,
                              minor_sign_sequence, mult_matrix, signature_rank, signature_rank_at, specialize)
from services.mpoly import MPoly, VarSet, parse_poly
from services.scalar import isolate_real_roots

INPUTS = os.path.join(os.path.dirname(__file__), 'inputs')
Y = VarSet(('y',))


def Py(text):
    return parse_poly(text, Y)


@pytest.fixture(scope='module')
def worked():
    return hermite_matrix(load_system(os.path.join(INPUTS, 'sec2.sys')))


@pytest.fixture(scope='module')
def sqrt_system():
    return load_system(os.path.join(INPUTS, 'sqrt.sys'))


class TestLinearAlgebra:
    def test_berkowitz(self):
        assert berkowitz([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(2)]], Fraction(1)) == [1, -4, 3]

    def test_signature_rank(self):
        assert signature_rank(SymRatMatrix(((1, 0, 0), (0, -1, 0), (0, 0, 0)))) == (0, 2)
        assert signature_rank(SymRatMatrix(((0, 1), (1, 0)))) == (0, 2)
        assert signature_rank(SymRatMatrix(((2, 1), (1, 2)))) == (2, 2)
        assert signature_rank(SymRatMatrix(())) == (0, 0)

    def test_symmetry_is_checked(self):
        with pytest.raises(ValueError):
            SymRatMatrix(((1, 2), (3, 4)))

    def test_minor_sign_rule(self):
        assert counts_from_minor_signs([1, 1, 1]) == (3, 3)
        assert counts_from_minor_signs([1, -1, -1, 0]) == (1, 3)
        assert counts_from_minor_signs([0, 0]) == (0, 0)
        assert counts_from_minor_signs([1, 0, 1]) == (UNDETERMINED, UNDETERMINED)


class TestWorkedSystem:
    def test_basis_and_first_row(self, worked):
        assert worked.dim == 4
        assert worked.basis_text == ('1', 'x2', 'x1', 'x2^2')
        assert worked.power == 0
        assert list(worked.numerators[0]) == [Py('4'), Py('-y - 1'), Py('y - 1'), Py('2*y^2 + 5*y')]
        assert worked.numerators[1][1] == Py('2*y^2 + 5*y')
        assert worked.numerators[3][3] == Py('-5*y^4/2 + 5*y^3 + 23*y^2/2 + y - 1/2')

    def test_symmetric(self, worked):
        for i in range(worked.dim):
            for j in range(worked.dim):
                assert worked.numerators[i][j] == worked.numerators[j][i]

    def test_determinant_and_boundary(self, worked):
        expected = Py('41*y^8 + 43*y^7 - 59*y^6 - 204*y^5 - 60*y^4 + 20*y^3 + 4*y^2 - y')
        assert worked.raw_det.primitive() == expected.primitive()
        assert worked.winfty == 1
        assert worked.w.total_degree() == 8
        roots = isolate_real_roots(worked.w.to_upoly('y'))
        assert len(roots) == 2
        assert roots[0].compare(0) == 0
        assert roots[1].compare(Fraction(170, 100)) == 1
        assert roots[1].compare(Fraction(172, 100)) == -1

    def test_specialization(self, worked):
        H1 = specialize(worked, {'y': 1})
        assert H1.entries[3][3] == Fraction(29, 2)
        assert signature_rank(H1) == (2, 4)
        assert signature_rank(specialize(worked, {'y': -1})) == (0, 4)
        assert signature_rank(specialize(worked, {'y': 3})) == (0, 4)

    def test_boundary_at_zero(self, worked):
        signs = minor_sign_sequence(worked, Fraction(0), 'y')
        assert signs == [1, -1, -1, 0]
        assert counts_from_minor_signs(signs) == (1, 3)
        assert signature_rank_at(worked, Fraction(0), 'y') == (1, 3)

    def test_exact_signature_at_irrational_root(self, worked):
        """Minor signs (1, 1, -1, 0), not (1, -1, 1, 0): the second minor is 7y^2 + 18y - 1."""
        alpha = isolate_real_roots(worked.w.to_upoly('y'))[1]
        assert (worked.numerators[0][0] * worked.numerators[1][1]
                - worked.numerators[0][1] ** 2) == Py('7*y^2 + 18*y - 1')
        signs = minor_sign_sequence(worked, alpha, 'y')
        assert signs == [1, 1, -1, 0]
        assert counts_from_minor_signs(signs) == (1, 3)
        assert signature_rank_at(worked, alpha, 'y') == (1, 3)


class TestSmallSystems:
    def test_square_root(self, sqrt_system):
        H = hermite_matrix(sqrt_system)
        assert [list(row) for row in H.numerators] == [[Py('2'), Py('0')], [Py('0'), Py('2*y')]]
        assert H.w == Py('y')
        assert signature_rank(specialize(H, {'y': 4})) == (2, 2)
        assert signature_rank(specialize(H, {'y': -4})) == (0, 2)

    def test_multiplication_matrix(self, sqrt_system):
        gb = groebner_basis(sqrt_system)
        M = mult_matrix(MPoly.var(sqrt_system.varset, 'x'), gb)
        assert M.power == 0
        assert [list(row) for row in M.numerators] == [[Py('0'), Py('y')], [Py('1'), Py('0')]]

    def test_multiplication_trace_is_root_sum(self, sqrt_system):
        # x^2 + x summed over x = +-sqrt(y) gives 2y
        gb = groebner_basis(sqrt_system)
        M = mult_matrix(parse_poly('x^2 + x', sqrt_system.varset), gb)
        assert [list(row) for row in M.numerators] == [[Py('y'), Py('y')], [Py('1'), Py('y')]]
        assert M.numerators[0][0] + M.numerators[1][1] == Py('2*y')

    def test_weighted_matrix(self, sqrt_system):
        weight = MPoly.var(sqrt_system.varset, 'x')
        H = hermite_matrix(sqrt_system, weight=weight)
        assert [list(row) for row in H.numerators] == [[Py('0'), Py('2*y')], [Py('2*y'), Py('0')]]
        assert H.weight == 'x'

    def test_denominators_and_nonspecializable(self):
        s = parse_system('params: y\nvars: x\ny*x - 1\n')
        H = hermite_matrix(s)
        assert H.winfty == Py('y')
        assert H.power % 2 == 0
        assert specialize(H, {'y': 2}).entries == ((Fraction(1),),)
        with pytest.raises(NonSpecializable):
            specialize(H, {'y': 0})

    def test_not_radical(self):
        with pytest.raises(NotRadical):
            hermite_matrix(parse_system('params: y\nvars: x\n(x - y)^2\n'))


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
