"""Hyperplane sections and pencil fibers of projective curves.

A hyperplane c_0 x_0 + ... + c_n x_n is normalized in pass p: c_p = 1 and
c_j = 0 for j < p, the remaining coefficients a_j (j > p) are the parameters.
The curve is dehomogenized at one coordinate per pass; points of the curve on
that coordinate hyperplane show up as the wInfty locus of the pass.
"""
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from shared.config import config
from shared.errors import (ComputationError, DegenerateChart, DegreeMismatch, InputError, NonSpecializable,
                           NotRadical, NotZeroDimensional, TimeBudgetExceeded)
from shared.logging import setup_logger
from shared.models import (UNDETERMINED, BoundaryPoint, HyperplaneCheck, SectionVerdict, Verdict)
from services.classify import ClassifyService, exact_value, extension_counts, extension_hermite
from services.groebner import ParametricSystem, groebner_basis
from services.hermite import hermite_matrix, signature_rank, specialize
from services.mpoly import MPoly, VarSet, parse_poly
from services.mpoly.syntax import poly_gcd
from services.oracle import oracle_count

logger = setup_logger('sections')

MULTIPLE_ROOT_LOCUS = 'multiple-root locus'


@dataclass(frozen=True)
class ProjectiveCurve:
    coords: tuple
    equations: tuple
    degree: int = None
    name: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'coords', tuple(self.coords))
        object.__setattr__(self, 'equations', tuple(self.equations))
        for eq in self.equations:
            if not eq.is_homogeneous():
                raise InputError(f'{self.name or "curve"}: equation {eq} is not homogeneous')

    @property
    def n(self):
        return len(self.coords) - 1

    @property
    def varset(self):
        return VarSet(self.coords)

    def to_text(self):
        lines = [f'# {self.name}'] if self.name else []
        lines.append('coords: ' + ' '.join(self.coords))
        if self.degree is not None:
            lines.append(f'degree: {self.degree}')
        lines.extend(eq.to_text() for eq in self.equations)
        return '\n'.join(lines) + '\n'


def parse_curve(text, name=''):
    """`coords:` and optional `degree:` headers, then one equation per line.

    Affine equations in the first n coordinates are homogenized with the last one.
    """
    coords, degree, bodies = None, None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(':')
        if sep and key.strip() == 'coords':
            coords = rest.split()
        elif sep and key.strip() == 'degree':
            try:
                degree = int(rest)
            except ValueError:
                raise InputError(f'{name or "curve"} line {lineno}: degree {rest.strip()!r} is not an integer') from None
        else:
            bodies.append((lineno, line))
    if not coords or len(coords) < 3:
        raise InputError(f'{name or "curve"}: "coords:" header with at least three coordinates required')
    varset = VarSet(coords)
    equations = []
    for lineno, body in bodies:
        try:
            eq = parse_poly(body, varset)
        except InputError as e:
            raise InputError(f'{name or "curve"} line {lineno}: {e}') from e
        if eq.is_zero():
            continue
        if not eq.is_homogeneous():
            eq = eq.homogenize(coords[-1])
        equations.append(eq)
    if not equations:
        raise InputError(f'{name or "curve"}: no equations')
    return ProjectiveCurve(coords, equations, degree, name)


def load_curve(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InputError(f'cannot read curve file {path}: {e}') from e
    return parse_curve(text, path.stem)


def parse_form(text, curve):
    """Homogeneous form in the curve's coordinates."""
    form = parse_poly(text, curve.varset)
    if form.is_zero() or not form.is_homogeneous():
        raise InputError(f'{text!r} is not a nonzero homogeneous form in {", ".join(curve.coords)}')
    return form


def default_dehomogenization(curve, normalized=0):
    """Configured chart coordinate, moved to the first coordinate when it is the normalized one."""
    setting = config.get('sections', 'default_chart', 'last')
    index = curve.n if setting == 'last' else int(setting)
    if not 0 <= index <= curve.n:
        raise InputError(f'default chart {setting!r} out of range for {len(curve.coords)} coordinates')
    if index == normalized:
        index = 0 if normalized != 0 else curve.n
    return index


def chart_system(polys, one, zeros=(), name=''):
    """Set coordinate `one` to 1 and `zeros` to 0; None when the result is inconsistent."""
    varset = polys[0].varset
    target = varset.without(one, *zeros)
    values = {one: 1, **{z: 0 for z in zeros}}
    equations = []
    for p in polys:
        q = p.subs(values).embed(target)
        if q.is_zero():
            continue
        if q.is_constant():
            return None
        equations.append(q)
    return ParametricSystem(target, equations, name)


@dataclass(frozen=True)
class SectionProblem:
    curve: ProjectiveCurve
    normalized: int
    dehomogenized: int
    system: ParametricSystem

    def param_name(self, j):
        return f'a{j}'

    def describe(self):
        c = self.curve.coords
        pinned = ', '.join(f'{self.param_name(j)} = 0' for j in range(self.normalized))
        return (f'{c[self.normalized]} normalized{"; " + pinned if pinned else ""}; '
                f'chart {c[self.dehomogenized]} = 1')

    def hyperplane_coefficients(self, point):
        coefficients = [Fraction(0)] * len(self.curve.coords)
        coefficients[self.normalized] = Fraction(1)
        for j in range(self.normalized + 1, len(self.curve.coords)):
            coefficients[j] = Fraction(point[self.param_name(j)])
        return coefficients


def hyperplane_text(coords, coefficients):
    varset = VarSet(coords)
    form = MPoly.zero(varset)
    for name, c in zip(coords, coefficients):
        form = form + MPoly.var(varset, name) * c
    return form.to_text()


def section_system(curve, chart=None):
    """SectionProblem for the pass normalizing coordinate chart[0], dehomogenized at chart[1]."""
    normalized, dehomogenized = chart if chart is not None else (0, None)
    if dehomogenized is None:
        dehomogenized = default_dehomogenization(curve, normalized)
    n = curve.n
    if not (0 <= normalized <= n and 0 <= dehomogenized <= n) or normalized == dehomogenized:
        raise InputError(f'invalid chart ({normalized}, {dehomogenized}) for coordinates {", ".join(curve.coords)}')

    coords = curve.coords
    params = tuple(f'a{j}' for j in range(normalized + 1, n + 1))
    joint = VarSet(coords, params)
    solved = MPoly.zero(joint)
    for j in range(normalized + 1, n + 1):
        solved = solved - MPoly.var(joint, f'a{j}') * MPoly.var(joint, coords[j])
    target = joint.without(coords[normalized], coords[dehomogenized])
    equations = []
    for eq in curve.equations:
        e = eq.embed(joint).subs({coords[dehomogenized]: 1})
        e = e.subs({coords[normalized]: solved.subs({coords[dehomogenized]: 1})}).embed(target)
        if e.is_zero():
            continue
        if e.is_constant():
            raise DegenerateChart(f'{curve.name or "curve"} has no points with {coords[dehomogenized]} != 0')
        equations.append(e)
    if not equations:
        raise DegenerateChart(f'{curve.name or "curve"}: every hyperplane of pass {coords[normalized]} '
                              f'contains the curve')
    system = ParametricSystem(target, equations, f'{curve.name}[{coords[normalized]};{coords[dehomogenized]}=1]')
    return SectionProblem(curve, normalized, dehomogenized, system)


class SectionService:
    def __init__(self, classify_service=None):
        self.classify = classify_service or ClassifyService()

    def passes(self, curve, chart=None, all_charts=True):
        if chart is not None and not all_charts:
            return [tuple(chart)]
        passes = [(p, default_dehomogenization(curve, p)) for p in range(curve.n + 1)]
        if chart is not None:
            passes = [tuple(chart)] + [c for c in passes if c[0] != chart[0]]
        return passes

    def totally_real_section(self, curve, chart=None, all_charts=True, target=None):
        """Search every normalization pass for a hyperplane meeting the curve in distinct real points only."""
        verdict = SectionVerdict(curve.name, curve.degree, Verdict.NONE_SIMPLE, max_real=0)
        incomplete = False
        passes = self.passes(curve, chart, all_charts)
        if target is None:
            target = curve.degree or groebner_basis(section_system(curve, passes[0]).system).delta
        for index, (p, d) in enumerate(passes):
            problem = section_system(curve, (p, d))
            label = problem.describe()
            logger.info(f"Section search on {curve.name}: {label}")
            try:
                report = self.classify.classify(problem.system, target)
            except TimeBudgetExceeded as e:
                logger.warning(f"{label}: {e}")
                verdict.unresolved.append(f'{label}: time budget exhausted')
                incomplete = True
                break
            except (NotZeroDimensional, NotRadical) as e:
                logger.warning(f"{label}: {e}")
                verdict.unresolved.append(f'{label}: {e}')
                incomplete = True
                continue
            if index == 0:
                if curve.degree is not None and report.delta != curve.degree:
                    raise DegreeMismatch(f'{curve.name}: declared degree {curve.degree}, '
                                         f'generic section has {report.delta} points')
                if report.delta == 0:
                    raise DegenerateChart(f'{curve.name}: no affine points in chart {curve.coords[d]} = 1')
                verdict.delta = report.delta
                verdict.points_at_infinity = self.points_at_infinity(curve, d)
            verdict.charts.append(label)
            verdict.reports.append(report)
            verdict.max_real = max(verdict.max_real, report.max_real)
            verdict.unresolved.extend(f'{label}: {u}' for u in report.unresolved)
            incomplete = incomplete or report.incomplete
            if report.witnesses:
                witness = report.witnesses[0]
                coefficients = problem.hyperplane_coefficients(witness.point)
                check = self.verify_hyperplane(curve, coefficients, dehomogenized=d)
                verdict.verdict = Verdict.WITNESS
                verdict.witness = witness
                verdict.hyperplane = check.hyperplane
                verdict.boxes = check.boxes
                logger.info(f"{curve.name}: totally real section {check.hyperplane}")
                return verdict
        if incomplete or any(MULTIPLE_ROOT_LOCUS not in u for u in verdict.unresolved):
            verdict.verdict = Verdict.INCOMPLETE
        logger.info(f"{curve.name}: verdict {verdict.verdict} over {len(verdict.charts)} pass(es)")
        return verdict

    def verify_hyperplane(self, curve, coefficients, dehomogenized=None):
        """Exact (real, complex distinct) of one hyperplane section plus isolating boxes."""
        coefficients = [Fraction(c) for c in coefficients]
        if len(coefficients) != len(curve.coords):
            raise InputError(f'{len(coefficients)} coefficients for {len(curve.coords)} coordinates')
        nonzero = [j for j, c in enumerate(coefficients) if c]
        if not nonzero:
            raise InputError('the zero form is not a hyperplane')
        p = nonzero[0]
        normalized = [c / coefficients[p] for c in coefficients]
        if dehomogenized is None:
            dehomogenized = default_dehomogenization(curve, p)
        problem = section_system(curve, (p, dehomogenized))
        point = {problem.param_name(j): normalized[j] for j in range(p + 1, len(coefficients))}
        system = problem.system.specialize(point)
        text = hyperplane_text(curve.coords, normalized)

        expected = curve.degree if curve.degree is not None else groebner_basis(problem.system).delta
        H = hermite_matrix(system)
        if H.dim < expected:
            raise NonSpecializable(f'{text} meets {curve.name} on {curve.coords[dehomogenized]} = 0; '
                                   f'choose another chart')
        real, cplx = signature_rank(specialize(H, {}))
        result = oracle_count(system)
        if (result.real_distinct, result.complex_distinct) != (real, cplx):
            raise ComputationError(f'{text}: Hermite count ({real}, {cplx}) disagrees with the oracle '
                                   f'({result.real_distinct}, {result.complex_distinct})')
        logger.info(f"{curve.name}: {text} gives {real} real of {cplx} distinct points")
        return HyperplaneCheck(curve.name, text, real, cplx, H.dim, list(result.real_boxes),
                               tuple(system.varset.vars))

    def points_at_infinity(self, curve, dehomogenized):
        """Real and complex points of the curve on {x_d = 0}, or None when that set is not finite."""
        coords = curve.coords
        rest = [c for c in coords if c != coords[dehomogenized]]
        real = cplx = 0
        try:
            for k, one in enumerate(rest):
                zeros = (coords[dehomogenized],) + tuple(rest[:k])
                system = chart_system(list(curve.equations), one, zeros, f'{curve.name} at infinity')
                if system is None:
                    continue
                if not system.equations:
                    if system.varset.vars:
                        raise NotZeroDimensional(f'{curve.name} has a component on {coords[dehomogenized]} = 0')
                    real, cplx = real + 1, cplx + 1
                    continue
                result = oracle_count(system)
                real, cplx = real + result.real_distinct, cplx + result.complex_distinct
        except (NotZeroDimensional, ComputationError) as e:
            logger.warning(f"Points at infinity of {curve.name}: {e}")
            return None
        return {'real': real, 'complex_distinct': cplx}

    # pencils

    def fiber_classify(self, curve, q1, q2):
        """Classify the fibers of [q1 : q2] restricted to a plane curve.

        Fibers are {f = 0, q1 = s q2, q2 != 0} (base points removed by the
        auxiliary variable u with u q2 = 1); the line z = 0 and s = oo are
        counted separately.
        """
        if len(curve.coords) != 3 or len(curve.equations) != 1:
            raise InputError('fiber classification needs a plane curve given by one equation')
        g = poly_gcd(q1, q2)
        if not g.is_constant():
            logger.info(f"Pencil: removing common factor {g}")
            q1, q2 = q1.exact_div(g), q2.exact_div(g)
        x, y, z = curve.coords
        name = f'{curve.name} pencil'
        joint = VarSet((x, y, z, 'u'), ('s',))
        f, Q1, Q2 = (p.embed(joint) for p in (curve.equations[0], q1, q2))
        s, u = MPoly.var(joint, 's'), MPoly.var(joint, 'u')
        fiber = [f, Q1 - s * Q2, u * Q2 - 1]

        affine = chart_system(fiber, z, (), name)
        if affine is None:
            raise DegenerateChart(f'{curve.name} has no points with {z} != 0')
        infinity = [piece for piece in (chart_system(fiber, y, (z,), name), chart_system(fiber, x, (y, z), name))
                    if piece is not None]

        report = self.classify.classify(affine)
        for b in report.boundary:
            if b.on_winfty and b.real_count is not UNDETERMINED:
                real, cplx = self.infinity_counts(infinity, b.point)
                b.real_count += real
                b.complex_distinct += cplx
                if cplx:
                    b.note = (b.note + '; ' if b.note else '') + f'{cplx} point(s) on {z} = 0'
        report.boundary.append(self.fiber_at_infinity(curve, q1, q2, name))

        base = self.count_pieces(self.projective_pieces([curve.equations[0], q1, q2], curve.coords, name))
        if base is not None and base[1]:
            report.notes.append(f'base points excluded from every fiber: {base[0]} real of {base[1]}')
        report.check()
        return report

    def infinity_counts(self, pieces, alpha):
        """Fiber points on the line at infinity over a root alpha of the affine wInfty."""
        value = exact_value(alpha)
        real = cplx = 0
        for piece in pieces:
            if value is not None:
                r, c = self.piece_counts(piece.specialize({'s': value}))
            else:
                r, c = extension_counts(*extension_hermite(piece, 's', alpha), {})
            real, cplx = real + r, cplx + c
        return real, cplx

    def fiber_at_infinity(self, curve, q1, q2, name):
        plane = VarSet(curve.coords + ('u',))
        f, Q1, Q2 = (p.embed(plane) for p in (curve.equations[0], q1, q2))
        fiber = [f, Q2, MPoly.var(plane, 'u') * Q1 - 1]
        counts = self.count_pieces(self.projective_pieces(fiber, curve.coords, name))
        if counts is None:
            return BoundaryPoint('oo', UNDETERMINED, UNDETERMINED, 'substitution', 's = oo',
                                 note='positive-dimensional fiber', on_winfty=True)
        return BoundaryPoint('oo', counts[0], counts[1], 'substitution', 's = oo', on_winfty=True)

    def projective_pieces(self, polys, coords, name):
        """Affine pieces z = 1, (y = 1, z = 0) and (x = 1, y = z = 0) of a plane system."""
        x, y, z = coords
        return [chart_system(polys, z, (), name), chart_system(polys, y, (z,), name),
                chart_system(polys, x, (y, z), name)]

    def piece_counts(self, piece):
        if not piece.equations and not piece.varset.vars:
            return 1, 1
        return self.classify.fiber_counts(piece)

    def count_pieces(self, pieces):
        """Total (real, complex distinct) over affine pieces; None if one is not zero-dimensional."""
        real = cplx = 0
        for piece in pieces:
            if piece is None:
                continue
            try:
                r, c = self.piece_counts(piece)
            except NotZeroDimensional as e:
                logger.warning(f"Pencil: {e}")
                return None
            real, cplx = real + r, cplx + c
        return real, cplx


def totally_real_fibers(report):
    """Labels of fibers whose points are all real."""
    labels = []
    for r in report.regions:
        if r.real_count == r.complex_distinct > 0:
            labels.append(r.descriptor_text())
    for b in report.boundary:
        if b.real_count is not UNDETERMINED and b.real_count == b.complex_distinct and b.complex_distinct > 0:
            labels.append(b.label)
    return labels
