#!/usr/bin/env python3
"""Parametric Gröbner bases, wInfty and pseudo-reduced normal forms."""
import os
import random
import sys
from fractions import Fraction

import pytest

sys.path.append(os.path.dirname(__file__))

from shared.errors import InputError, NotZeroDimensional, VarSetMismatch
from services.groebner import ParametricSystem, check_radical_generic, groebner_basis, load_system, normal_form, parse_system
from services.groebner.service import _reduce, _spoly
from services.mpoly import MPoly, VarSet, parse_poly

INPUTS = os.path.join(os.path.dirname(__file__), 'inputs')
SEC2_TEXT = 'params: y\nvars: x1 x2\nx1^2 + x2^2 - y\nx1^2 + x1*x2 - y*x2 + x1 + y^2\n'
SKEW_TEXT = 'params: y\nvars: x1 x2\ny*x1^2 - x2\nx2^2 + x1 - y\n'


def system(text):
    return parse_system(text, 'test')


class TestParsing:
    def test_headers_and_comments(self):
        s = system('# comment\nparams: y\nvars: x1 x2\nx1^2 + x2^2 - y  # circle\nx1 - x2\n')
        assert s.varset == VarSet(('x1', 'x2'), ('y',))
        assert len(s.equations) == 2

    def test_missing_vars_header(self):
        with pytest.raises(InputError, match='vars'):
            system('params: y\nx - y\n')

    def test_no_equations(self):
        with pytest.raises(InputError, match='no equations'):
            system('vars: x\n0\n')

    def test_line_number_in_error(self):
        with pytest.raises(InputError, match='line 3'):
            system('params: y\nvars: x\nx^2 - q\n')

    def test_equations_must_share_the_varset(self):
        with pytest.raises(VarSetMismatch):
            ParametricSystem(VarSet(('x',), ('y',)), [parse_poly('x', VarSet(('x',)))])

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(InputError, match='cannot read'):
            load_system(tmp_path / 'absent.sys')

    @pytest.mark.parametrize('name', sorted(f for f in os.listdir(INPUTS) if f.endswith('.sys')))
    def test_shipped_systems_reparse(self, name):
        s = load_system(os.path.join(INPUTS, name))
        again = parse_system(s.to_text(), s.name)
        assert again.varset == s.varset
        assert again.equations == s.equations


class TestBasis:
    def test_worked_system(self):
        gb = groebner_basis(load_system(os.path.join(INPUTS, 'sec2.sys')))
        assert gb.delta == 4
        assert gb.basis_text() == ['1', 'x2', 'x1', 'x2^2']
        assert gb.winfty == 1

    def test_single_variable(self):
        gb = groebner_basis(system('params: y\nvars: x\nx^2 - y\n'))
        assert gb.delta == 2
        assert gb.basis_text() == ['1', 'x']

    def test_winfty_collects_leading_coefficients(self):
        gb = groebner_basis(system('params: a b\nvars: x\n(a^2 + 1)*(b - 1)*x - 1\n'))
        assert gb.delta == 1
        assert sorted(f.to_text() for f in gb.winfty_factors) == ['a^2 + 1', 'b - 1']
        assert gb.winfty.total_degree() == 3

    def test_positive_dimensional(self):
        with pytest.raises(NotZeroDimensional):
            groebner_basis(system('params: y\nvars: x1 x2\nx1*x2 - y\n'))

    def test_inconsistent_system_has_empty_basis(self):
        gb = groebner_basis(system('vars: x\nx - 1\nx - 2\n'))
        assert gb.delta == 0

    def test_winfty_of_a_forced_leading_coefficient(self):
        s = system('params: y\nvars: x1\ny*x1 - 1\n')
        gb = groebner_basis(s)
        assert gb.winfty == parse_poly('y', s.varset)
        assert gb.basis_text() == ['1']

    @pytest.mark.parametrize('text', [SEC2_TEXT, SKEW_TEXT])
    def test_s_polynomials_reduce_to_zero(self, text):
        gb = groebner_basis(system(text))
        generators = list(gb.generators)
        for i in range(len(generators)):
            for j in range(i + 1, len(generators)):
                assert _reduce(_spoly(generators[i], generators[j], gb.order), generators, gb.order).is_zero()

    @pytest.mark.parametrize('text', [SEC2_TEXT, SKEW_TEXT])
    def test_specialization_keeps_the_staircase(self, text):
        s = system(text)
        gb = groebner_basis(s)
        rng = random.Random(21)
        checked = 0
        while checked < 20:
            eta = {'y': Fraction(rng.randint(-30, 30), rng.randint(1, 7))}
            if gb.winfty.evaluate(eta) == 0:
                continue
            fiber = groebner_basis(s.specialize(eta))
            assert fiber.basis == gb.basis
            checked += 1

    @pytest.mark.parametrize('text', [SEC2_TEXT, SKEW_TEXT])
    def test_equation_order_does_not_matter(self, text):
        s = system(text)
        gb = groebner_basis(s)
        swapped = groebner_basis(ParametricSystem(s.varset, tuple(reversed(s.equations)), s.name))
        assert swapped.delta == gb.delta
        assert swapped.generators == gb.generators


class TestNormalForm:
    def test_pseudo_reduction_over_winfty(self):
        s = system('params: y\nvars: x\ny*x - 1\n')
        gb = groebner_basis(s)
        nf = normal_form(MPoly.var(s.varset, 'x'), gb)
        assert nf.numerator == 1
        assert nf.power == 1

    def test_reduction_with_constant_leading_coefficients(self):
        s = system('params: y\nvars: x\nx^2 - y\n')
        gb = groebner_basis(s)
        nf = normal_form(parse_poly('x^3 + 1', s.varset), gb)
        assert nf.power == 0
        assert nf.numerator == parse_poly('y*x + 1', s.varset)

    def test_normal_forms_are_fixed_points(self):
        s = system(SKEW_TEXT)
        gb = groebner_basis(s)
        rng = random.Random(22)
        for _ in range(10):
            p = MPoly(s.varset, {(rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 2)): rng.randint(-4, 4)
                                 for _ in range(4)})
            nf = normal_form(p, gb)
            again = normal_form(nf.numerator, gb)
            assert again.power == 0
            assert again.numerator == nf.numerator


class TestSystems:
    def test_specialize_and_substitute(self):
        s = load_system(os.path.join(INPUTS, 'sec2.sys'))
        fiber = s.specialize({'y': 1})
        assert fiber.varset == VarSet(('x1', 'x2'))
        assert fiber.equations[0] == parse_poly('x1^2 + x2^2 - 1', fiber.varset)
        promoted = s.promote('y')
        assert promoted.varset.vars == ('x1', 'x2', 'y')

    def test_radical_audit(self):
        s = load_system(os.path.join(INPUTS, 'sec2.sys'))
        assert check_radical_generic(groebner_basis(s), s, seed=3) == 'ok'

    def test_radical_audit_flags_a_double_root(self):
        s = system('params: y\nvars: x1\nx1^2\n')
        gb = groebner_basis(s)
        assert gb.delta == 2
        assert check_radical_generic(gb, s, seed=3) == 'suspect'


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
