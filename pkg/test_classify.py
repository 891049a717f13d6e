#!/usr/bin/env python3
"""Root classification: regions, boundary counts, strata, witnesses and sampling."""
import os
import random
import sys
from fractions import Fraction

import pytest

sys.path.append(os.path.dirname(__file__))

from shared.errors import InputError, TimeBudgetExceeded, TooManyParameters
from shared.models import ABSENT_ON_SAMPLED_CELLS, UNDETERMINED
from services.classify import (ClassifyService, exact_value, random_samples, root_label, sample_open_cells,
                               samples_between)
from services.groebner import load_system, parse_system
from services.mpoly import MPoly, VarSet, irreducible_factors, parse_poly
from services.oracle import oracle_count
from services.scalar import UPoly, isolate_real_roots, sturm_count

INPUTS = os.path.join(os.path.dirname(__file__), 'inputs')
AB = VarSet(('a', 'b'))


@pytest.fixture
def service():
    return ClassifyService(mode='certified', samples=16, seed=5, max_minutes=0, jobs=1)


@pytest.fixture(scope='module')
def worked_report():
    system = load_system(os.path.join(INPUTS, 'sec2.sys'))
    return system, ClassifyService(mode='certified', jobs=1).classify(system)


class TestHelpers:
    def test_exact_value_and_label(self):
        t = UPoly.x()
        half = isolate_real_roots(2 * t - 1)[0]
        sqrt2 = isolate_real_roots(t ** 2 - 2)[1]
        assert exact_value(half) == Fraction(1, 2)
        assert exact_value(sqrt2) is None
        assert root_label(sqrt2) == '~1.414214'
        assert root_label(None) is None

    def test_samples_between(self):
        assert samples_between([]) == [(Fraction(0), None, None)]
        roots = isolate_real_roots((UPoly.x() - 1) * (UPoly.x() - 3))
        values = [s for s, _, _ in samples_between(roots)]
        assert values[0] < 1 < values[1] < 3 < values[2]

    def test_unknown_mode(self):
        with pytest.raises(InputError):
            ClassifyService(mode='exhaustive')


QUADRATIC_FAMILIES = [
    'y*x^2 + x - 1',
    'x^2 - y^2 + 1',
    '(y - 1)*x^2 + 2*y*x + y^2 - 3',
    '4*x^2 + (4*y - 8)*x + y^2 - 4',
]


def _region_at(report, value):
    """Region containing a rational parameter value, None on a boundary."""
    sides = [b.point.compare(value) for b in report.boundary]
    if 0 in sides:
        return None
    return report.regions[sum(1 for s in sides if s < 0)]


def _inner_points(report, index, width=Fraction(1, 1000)):
    """Three rational values strictly inside region `index`."""
    left = report.boundary[index - 1].point.refine_to(width).hi if index > 0 else None
    right = report.boundary[index].point.refine_to(width).lo if index < len(report.boundary) else None
    if left is None and right is None:
        left, right = Fraction(-1), Fraction(1)
    elif left is None:
        left = right - 3
    elif right is None:
        right = left + 3
    assert left < right
    return [left + (right - left) * Fraction(k, 4) for k in (1, 2, 3)]


class TestOneParameter:
    def test_worked_regions(self, worked_report):
        _, report = worked_report
        assert [r.real_count for r in report.regions] == [0, 2, 0]
        assert all(r.complex_distinct == 4 for r in report.regions)
        right = report.regions[1].descriptor['interval'][1]
        assert right.startswith('~1.7')
        assert 1.70 < float(right[1:]) < 1.72

    def test_worked_boundary_at_zero(self, worked_report):
        _, report = worked_report
        zero = report.boundary[0]
        assert zero.label == 'y = 0'
        assert (zero.real_count, zero.complex_distinct) == (1, 3)
        assert zero.minor_signs == [1, -1, -1, 0]

    def test_boundary_at_irrational_root_matches_the_oracle(self, worked_report):
        """The leading minors at the second root of w are (1, 1, -1, 0).

        The sequence (1, -1, 1, 0) with no real solution does not occur here: the
        second minor is 7y^2 + 18y - 1, positive near 1.71, and the rule reads one real
        solution among three distinct ones: the two real solutions of the middle region
        meet there. The exact signature agrees, so the rule's answer is kept.
        """
        system, report = worked_report
        b = report.boundary[1]
        assert b.minor_signs == [1, 1, -1, 0]
        assert b.method == 'minor-signs'
        assert (b.real_count, b.complex_distinct) == (1, 3)
        result = oracle_count(system.promote('y'), algebraic=('y', b.point))
        assert (b.real_count, b.complex_distinct) == (result.real_distinct, result.complex_distinct)

    @pytest.mark.parametrize('text', QUADRATIC_FAMILIES)
    def test_dense_sweep_matches_the_oracle(self, service, text):
        system = parse_system(f'params: y\nvars: x\n{text}\n')
        report = service.classify_1param(system)
        checked = 0
        for k in range(-64, 65):
            y = Fraction(k, 16)
            region = _region_at(report, y)
            if region is None:
                continue
            result = oracle_count(system.specialize({'y': y}))
            assert (region.real_count, region.complex_distinct) == \
                (result.real_distinct, result.complex_distinct), (text, y)
            checked += 1
        assert checked >= 100

    def test_worked_sweep_matches_the_oracle(self, worked_report):
        system, report = worked_report
        for k in range(-20, 21):
            y = Fraction(k, 8)
            region = _region_at(report, y)
            if region is None:
                continue
            result = oracle_count(system.specialize({'y': y}))
            assert (region.real_count, region.complex_distinct) == (result.real_distinct, result.complex_distinct), y

    @pytest.mark.parametrize('name', ['sec2.sys', 'sqrt.sys'])
    def test_counts_are_constant_inside_each_region(self, service, name):
        system = load_system(os.path.join(INPUTS, name))
        report = service.classify_1param(system)
        for index, region in enumerate(report.regions):
            for y in _inner_points(report, index):
                assert _region_at(report, y) is region
                assert service.fiber_counts(system.specialize({'y': y})) == \
                    (region.real_count, region.complex_distinct), (name, y)

    def test_report_serializes(self, worked_report):
        _, report = worked_report
        data = report.to_dict()
        assert data['delta'] == 4
        assert data['params'] == ['y']
        assert data['regions'][1]['real'] == 2
        assert set(data['regions'][1]['sample_point']) == {'y'}
        assert 'Regions (3)' in report.to_text()

    def test_square_root(self, service):
        report = service.classify(load_system(os.path.join(INPUTS, 'sqrt.sys')))
        assert [(r.real_count, r.complex_distinct) for r in report.regions] == [(0, 2), (2, 2)]
        (b,) = report.boundary
        assert (b.real_count, b.complex_distinct, b.method) == (1, 1, 'minor-signs')

    def test_rational_winfty_root(self, service):
        report = service.classify(parse_system('params: y\nvars: x\ny*x - 1\n'))
        assert [r.real_count for r in report.regions] == [1, 1]
        (b,) = report.boundary
        assert (b.real_count, b.complex_distinct, b.method, b.on_winfty) == (0, 0, 'substitution', True)

    def test_irrational_winfty_root_uses_the_extension(self, service):
        report = service.classify(parse_system('params: y\nvars: x\n(y^2 - 2)*x^2 + x - y\n'))
        over = [b for b in report.boundary if b.on_winfty]
        assert len(over) == 2
        for b in over:
            assert b.method == 'extension'
            assert (b.real_count, b.complex_distinct) == (1, 1)

    def test_zero_parameters(self, service):
        report = service.classify(parse_system('vars: x y\nx^2 + y^2 - 1\nx - y\n'))
        (region,) = report.regions
        assert (region.descriptor, region.real_count, region.complex_distinct) == ('fiber', 2, 2)

    def test_time_budget(self):
        slow = ClassifyService(max_minutes=1e-9, jobs=1)
        with pytest.raises(TimeBudgetExceeded):
            slow.classify(load_system(os.path.join(INPUTS, 'sec2.sys')))


class TestSeveralParameters:
    def test_quadratic_family(self, service):
        report = service.classify(parse_system('params: a b\nvars: x\nx^2 - a*x + b\n'))
        assert {r.real_count for r in report.regions} == {0, 2}
        assert any('multiple-root locus, degree 2' in u for u in report.unresolved)
        assert report.max_real == 2

    def test_randomized_mode(self):
        randomized = ClassifyService(mode='randomized', samples=40, seed=1, jobs=1)
        report = randomized.classify(parse_system('params: a b\nvars: x\nx^2 - a*x + b\n'))
        assert len(report.regions) == 40
        assert report.mode == 'randomized'

    def test_parameter_limit(self):
        limited = ClassifyService(mode='certified', max_parameters=1, jobs=1)
        with pytest.raises(TooManyParameters):
            limited.classify(parse_system('params: a b\nvars: x\nx^2 - a*x + b\n'))

    def test_linear_winfty_stratum(self, service):
        report = service.classify(parse_system('params: a b\nvars: x\na*x - b\n'))
        assert all(r.real_count == 1 for r in report.regions)
        inner = [b for b in report.boundary if b.label.startswith('[a = 0] ')]
        assert inner
        assert any(b.real_count is UNDETERMINED and b.label.endswith('b = 0') for b in inner)

    def test_vacuous_stratum(self, service):
        report = service.classify(parse_system('params: a b\nvars: x\n(a^2 + 1)*x - b\n'))
        assert any('a^2 + 1 = 0' in v for v in report.vacuous)
        assert not report.unresolved


class TestWitness:
    def test_found_and_verified(self, service):
        system = load_system(os.path.join(INPUTS, 'sec2.sys'))
        witness = service.find_witness(system, 2)
        assert witness.real_count == witness.oracle_real == 2
        assert 0 < witness.point['y'] < Fraction(170, 100)

    def test_absent(self, service):
        system = load_system(os.path.join(INPUTS, 'sec2.sys'))
        assert service.find_witness(system, 3) is ABSENT_ON_SAMPLED_CELLS
        assert service.find_witness(system, 5) is ABSENT_ON_SAMPLED_CELLS

    def test_classify_attaches_the_witness(self, service):
        report = service.classify(parse_system('params: a b\nvars: x\nx^2 - a*x + b\n'), target=2)
        (witness,) = report.witnesses
        assert witness.point['a'] ** 2 > 4 * witness.point['b']


def _random_w(rng):
    w = MPoly.constant(AB, 1)
    degree = 0
    while degree < 2 or (degree < 6 and rng.random() < 0.5):
        d = rng.randint(1, min(2, 6 - degree))
        terms = {}
        for i in range(d + 1):
            for j in range(d + 1 - i):
                if rng.random() < 0.6:
                    terms[(i, j)] = Fraction(rng.randint(-4, 4))
        terms[(d, 0)] = Fraction(rng.choice((-1, 1)))
        terms[(0, d)] = Fraction(rng.choice((-2, -1, 1, 2)))
        factor = MPoly(AB, terms)
        if factor.is_constant():
            continue
        w = w * factor
        degree += d
    return w


def _signs(factors, point):
    return tuple((f.evaluate(point) > 0) - (f.evaluate(point) < 0) for f in factors)


def _segment_clear(factors, p, q):
    """No factor vanishes on the axis-parallel segment from p to q."""
    if p['a'] == q['a']:
        moving, fixed = 'b', {'a': p['a']}
    else:
        moving, fixed = 'a', {'b': p['b']}
    lo, hi = sorted((p[moving], q[moving]))
    for f in factors:
        u = f.subs(fixed).to_upoly(moving)
        if u.is_zero() or u(lo) == 0:
            return False
        if u.degree >= 1 and sturm_count(u, lo, hi):
            return False
    return True


def _path_clear(factors, p, q):
    corners = ({'a': q['a'], 'b': p['b']}, {'a': p['a'], 'b': q['b']})
    return any(_segment_clear(factors, p, c) and _segment_clear(factors, c, q) for c in corners)


def _grid_components(factors, radius=3, step=Fraction(1, 2)):
    """Components of grid nodes off w = 0, joined along edges that provably avoid w = 0."""
    n = int(2 * radius / step)
    nodes = {}
    for i in range(n + 1):
        for j in range(n + 1):
            point = {'a': -radius + i * step, 'b': -radius + j * step}
            if 0 not in _signs(factors, point):
                nodes[i, j] = point
    seen, components = set(), []
    for start in nodes:
        if start in seen:
            continue
        seen.add(start)
        stack, members = [start], []
        while stack:
            i, j = stack.pop()
            members.append(nodes[i, j])
            for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
                if nb in nodes and nb not in seen and _segment_clear(factors, nodes[i, j], nodes[nb]):
                    seen.add(nb)
                    stack.append(nb)
        components.append(members)
    return components


def _reaches(factors, sample, members, tries=40):
    def distance(node):
        return abs(node['a'] - sample['a']) + abs(node['b'] - sample['b'])
    return any(_path_clear(factors, sample, node) for node in sorted(members, key=distance)[:tries])


class TestSampleCoverage:
    def test_univariate(self):
        w = parse_poly('a^3 - a', VarSet(('a',)))
        points = sample_open_cells(w)
        assert len(points) == 4
        assert all(w.evaluate(p) != 0 for p in points)

    def test_no_parameters(self):
        assert sample_open_cells(MPoly.constant(VarSet(()), 1)) == [{}]

    def test_random_samples(self):
        w = parse_poly('a*b - 1', AB)
        points = random_samples(w, 20, seed=3)
        assert len(points) == 20
        assert all(w.evaluate(p) != 0 for p in points)
        assert points == random_samples(w, 20, seed=3)

    def test_every_grid_component_is_sampled(self):
        rng = random.Random(11)
        for _ in range(30):
            w = _random_w(rng)
            factors = irreducible_factors(w)
            samples = sample_open_cells(w, max_parameters=2, seed=1)
            for members in _grid_components(factors):
                signs = _signs(factors, members[0])
                candidates = [p for p in samples if _signs(factors, p) == signs]
                assert any(_reaches(factors, p, members) for p in candidates), (w.to_text(), members[0])


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
