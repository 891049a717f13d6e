"""Root classification of parametric systems.

One parameter: the real line is cut at the real roots of w, every open interval
gets a rational sample, every root gets exact boundary counts. Several
parameters: one sample per connected component of {w != 0}, wInfty strata by
substitution or algebraic extension, the wH locus listed as unresolved.
"""
import time
from fractions import Fraction

from shared.config import config
from shared.errors import (ComputationError, InputError, NotRadical, NotZeroDimensional,
                           PreconditionViolation, TimeBudgetExceeded)
from shared.logging import setup_logger
from shared.models import (ABSENT_ON_SAMPLED_CELLS, UNDETERMINED, BoundaryPoint, ClassificationReport,
                           Region, Witness, point_text)
from shared.workers import WorkerPool
from services.groebner import groebner_basis
from services.hermite import (counts_from_minor_signs, hermite_matrix, minor_sign_sequence, signature_rank,
                              signature_rank_at, specialize)
from services.mpoly import MPoly, irreducible_factors
from services.mpoly.syntax import minimal_polynomial
from services.oracle import oracle_count
from services.scalar import isolate_real_roots, sign, sign_at

from .cells import random_samples, sample_open_cells, samples_between

logger = setup_logger('classify')

MODES = ('certified', 'randomized')


def _counts_at(job):
    H, point = job
    return signature_rank(specialize(H, point))


def exact_value(alpha):
    """alpha as a Fraction when it is rational, else None."""
    if alpha.is_rational:
        return alpha.lo
    m = minimal_polynomial(alpha)
    if m.degree == 1:
        return -m.coeffs[0] / m.coeffs[1]
    return None


def root_label(alpha):
    if alpha is None:
        return None
    value = exact_value(alpha)
    if value is not None:
        return str(value)
    return f'~{float(alpha.refine_to(Fraction(1, 10 ** 7))):.6f}'


def has_no_real_zeros(factor):
    """Even exponents and positive coefficients, constant term included."""
    constant = (0,) * len(factor.varset)
    return constant in factor.terms and all(
        c > 0 and all(k % 2 == 0 for k in e) for e, c in factor.terms.items()
    )


def solve_linear(factor, names):
    """(name, value) with factor = c * (name - value) for a rational c, or None."""
    for name in names:
        if factor.degree(name) != 1:
            continue
        rest, coeff = factor.coeffs_in(name)
        if coeff.is_constant():
            return name, rest.scale(-1 / coeff.constant_value())
    return None


def extension_hermite(system, name, alpha):
    """Hermite matrices of the system over Q(alpha), alpha a real root of `name`.

    `name` becomes a variable z bound by the minimal polynomial m of alpha. The
    plain matrix counts over every conjugate; the one weighted by
    (z - lo)(hi - z) is positive exactly at alpha among the real roots of m.
    """
    m = minimal_polynomial(alpha)
    ext = system.promote(name)
    ext = ext.with_equations([MPoly.from_upoly(ext.varset, name, m)])
    gb = groebner_basis(ext)
    z = MPoly.var(ext.varset, name)
    weight = (z - alpha.lo) * (alpha.hi - z)
    return hermite_matrix(ext, gb=gb), hermite_matrix(ext, weight=weight, gb=gb), m.degree


def extension_counts(H1, Hh, degree, point):
    """(real, complex distinct) over alpha from the plain and weighted extension matrices."""
    if H1.dim == 0:
        return 0, 0
    sig1, rank1 = signature_rank(specialize(H1, point))
    sigh, _ = signature_rank(specialize(Hh, point))
    return (sig1 + sigh) // 2, rank1 // degree


class ClassifyService:
    def __init__(self, mode=None, samples=None, seed=None, max_minutes=None, max_parameters=None, jobs=None):
        self.mode = mode or config.get('classify', 'mode', 'certified')
        if self.mode not in MODES:
            raise InputError(f'unknown classification mode {self.mode!r}; expected one of {", ".join(MODES)}')
        self.samples = config.getint('classify', 'samples', 64) if samples is None else samples
        self.seed = config.getint('classify', 'seed', 20240101) if seed is None else seed
        self.max_parameters = (config.getint('classify', 'max_parameters', 3)
                               if max_parameters is None else max_parameters)
        minutes = config.getfloat('classify', 'max_minutes', 0) if max_minutes is None else max_minutes
        self.deadline = time.monotonic() + 60 * minutes if minutes else None
        self.pool = WorkerPool(jobs)

    def check_deadline(self, where):
        if self.deadline and time.monotonic() > self.deadline:
            raise TimeBudgetExceeded(f'time budget exhausted during {where}')

    def new_report(self, system, H):
        return ClassificationReport(system.name, tuple(H.params), H.dim, H.w.to_text(), H.winfty.to_text(),
                                    H.wh.to_text(), H.degrees(), mode=self.mode, seed=self.seed)

    def classify(self, system, target=None):
        """Classification report; with a target count, a verified witness is searched as well."""
        logger.info(f"Classifying {system.name or 'system'}: {system.nparams} parameter(s), "
                    f"{len(system.varset.vars)} variable(s), {len(system.equations)} equation(s)")
        H = hermite_matrix(system)
        if system.nparams == 0:
            report = self.classify_0param(system, H)
        elif system.nparams == 1:
            report = self.classify_1param(system, H)
        else:
            report = self.classify_multiparam(system, H)
        if target is not None and not report.incomplete:
            try:
                witness = self.find_witness(system, target, H)
            except TimeBudgetExceeded as e:
                logger.warning(f"Witness search stopped: {e}")
                report.incomplete = True
            else:
                if witness is not ABSENT_ON_SAMPLED_CELLS:
                    report.witnesses.append(witness)
        report.check()
        logger.info(f"Classification of {system.name or 'system'}: {len(report.regions)} regions, "
                    f"{len(report.boundary)} boundary entries, {len(report.unresolved)} unresolved, "
                    f"max real {report.max_real}")
        return report

    def classify_0param(self, system, H=None):
        H = H or hermite_matrix(system)
        report = self.new_report(system, H)
        sig, rank = signature_rank(specialize(H, {}))
        report.regions.append(Region({}, 'fiber', sig, rank, sig))
        return report

    # one parameter

    def classify_1param(self, system, H=None):
        H = H or hermite_matrix(system)
        report = self.new_report(system, H)
        name = H.params[0]
        w = H.w.to_upoly(name)
        roots = isolate_real_roots(w) if w.degree >= 1 else []
        logger.info(f"w has {len(roots)} real root(s) in {name}")

        samples = samples_between(roots)
        self.check_deadline('region sampling')
        counts = self.pool.map(_counts_at, [(H, {name: s}) for s, _, _ in samples])
        for (s, left, right), (sig, rank) in zip(samples, counts):
            report.regions.append(Region({name: s}, {'interval': [root_label(left), root_label(right)]},
                                         sig, rank, sig))
        for alpha in roots:
            self.check_deadline('boundary counts')
            report.boundary.append(self.boundary_point(system, H, name, alpha))
        return report

    def boundary_point(self, system, H, name, alpha):
        """Exact counts on the fiber over a real root of w."""
        label = f'{name} = {root_label(alpha)}'
        if not H.winfty.is_constant() and sign_at(H.winfty.to_upoly(name), alpha) == 0:
            return self.winfty_boundary_point(system, name, alpha, label)

        signs = minor_sign_sequence(H, alpha, name)
        real, cplx = counts_from_minor_signs(signs)
        sig, rank = signature_rank_at(H, alpha, name)
        if (real, cplx) == (sig, rank):
            return BoundaryPoint(alpha, real, cplx, 'minor-signs', label, signs)
        if real is UNDETERMINED:
            note = 'minor-sign rule inconclusive; exact signature over the extension'
        else:
            note = f'minor-sign rule gives ({real}, {cplx}); exact signature over the extension'
        logger.warning(f"Boundary {label}: signs {tuple(signs)}, {note}")
        return BoundaryPoint(alpha, sig, rank, 'extension', label, signs, note)

    def winfty_boundary_point(self, system, name, alpha, label):
        """Counts over a root of wInfty, where the parametric matrix does not specialize."""
        value = exact_value(alpha)
        method = 'substitution' if value is not None else 'extension'
        try:
            if value is not None:
                real, cplx = self.fiber_counts(system.specialize({name: value}))
            else:
                real, cplx = extension_counts(*extension_hermite(system, name, alpha), {})
        except NotZeroDimensional as e:
            logger.warning(f"Boundary {label}: {e}")
            return BoundaryPoint(alpha, UNDETERMINED, UNDETERMINED, method, label,
                                 note='positive-dimensional fiber', on_winfty=True)
        return BoundaryPoint(alpha, real, cplx, method, label, on_winfty=True)

    def fiber_counts(self, system):
        """(real, complex distinct) of a system without parameters."""
        if not system.equations:
            raise NotZeroDimensional(f'every equation of {system.name or "the system"} vanishes on this fiber')
        H = hermite_matrix(system)
        return signature_rank(specialize(H, {}))

    # several parameters

    def sample_points(self, w, report=None):
        if self.mode == 'randomized':
            return random_samples(w, self.samples, self.seed)
        changes = report.coordinate_changes if report is not None else None
        try:
            return sample_open_cells(w, self.max_parameters, self.deadline, self.seed, changes)
        except TimeBudgetExceeded as e:
            logger.warning(f"Open cells: {e}; falling back to {self.samples} random samples")
            if report is not None:
                report.incomplete = True
            return random_samples(w, self.samples, self.seed)

    def classify_multiparam(self, system, H=None):
        H = H or hermite_matrix(system)
        report = self.new_report(system, H)
        points = self.sample_points(H.w, report)
        counts = self.pool.map(_counts_at, [(H, p) for p in points])
        factors = irreducible_factors(H.w)
        for point, (sig, rank) in zip(points, counts):
            report.regions.append(Region(point, {'signs': [sign(f.evaluate(point)) for f in factors]},
                                         sig, rank, sig))
        for factor in H.winfty_factors:
            try:
                self.check_deadline('wInfty strata')
                stratum = self.handle_winfty_stratum(system, factor)
            except TimeBudgetExceeded as e:
                logger.warning(f"Strata: {e}")
                report.incomplete = True
                report.unresolved.append(f'{factor} = 0 (time budget)')
                continue
            report.merge(stratum, prefix=f'[{factor} = 0] ')
        if not H.wh.is_constant():
            report.unresolved.append(f'wH = 0 (multiple-root locus, degree {H.wh.total_degree()})')
        return report

    def handle_winfty_stratum(self, system, factor):
        """Partial report for the stratum {factor = 0} of an irreducible wInfty factor."""
        label = f'{factor} = 0'
        report = ClassificationReport(label, tuple(system.varset.params), 0, '', seed=self.seed)
        if has_no_real_zeros(factor):
            logger.info(f"Stratum {label}: no real points")
            report.vacuous.append(label)
            return report

        linear = solve_linear(factor, system.varset.params)
        if linear is not None:
            name, value = linear
            logger.info(f"Stratum {label}: substituting {name} = {value}")
            report.merge(self.classify_stratum(system.substitute(name, value.embed(system.varset))),
                         prefix=f'{name} = {value}: ')
            return report

        variables = factor.variables()
        if len(variables) != 1:
            logger.warning(f"Stratum {label}: neither linear in a parameter nor univariate")
            report.unresolved.append(f'{label} (neither linear in a parameter nor univariate)')
            return report

        name = variables[0]
        roots = isolate_real_roots(factor.to_upoly(name))
        if not roots:
            report.vacuous.append(label)
            return report
        free = system.nparams - 1
        for alpha in roots:
            value = exact_value(alpha)
            prefix = f'{name} = {root_label(alpha)}: '
            if value is not None:
                report.merge(self.classify_stratum(system.specialize({name: value})), prefix=prefix)
            elif free <= 1:
                report.merge(self.classify_extension_stratum(system, name, alpha), prefix=prefix,
                             method='extension')
            else:
                logger.warning(f"Stratum {label}: {free} free parameters over {name} = {root_label(alpha)}")
                report.unresolved.append(f'{name} = {alpha.to_text(name)} ({free} free parameters remain)')
        return report

    def classify_stratum(self, system):
        """Recursive classification of a substituted system; failures become unresolved entries."""
        if not system.equations:
            report = ClassificationReport(system.name, tuple(system.varset.params), 0, '')
            report.unresolved.append('every equation vanishes (positive-dimensional fibers)')
            return report
        try:
            return self.classify(system)
        except (NotZeroDimensional, NotRadical) as e:
            logger.warning(f"Stratum unresolved: {e}")
            report = ClassificationReport(system.name, tuple(system.varset.params), 0, '')
            report.unresolved.append(str(e))
            return report

    def classify_extension_stratum(self, system, name, alpha):
        """Counts over an irrational root alpha of `name`, at most one parameter left free."""
        report = ClassificationReport(f'{name} = {root_label(alpha)}', (), 0, '')
        try:
            H1, Hh, degree = extension_hermite(system, name, alpha)
        except PreconditionViolation as e:
            logger.warning(f"Extension {name} = {root_label(alpha)}: {e}")
            report.unresolved.append(str(e))
            return report
        report.delta = H1.dim
        if not H1.params:
            real, cplx = extension_counts(H1, Hh, degree, {})
            report.regions.append(Region({}, 'fiber', real, cplx))
            return report

        q = H1.params[0]
        w1 = H1.w.to_upoly(q)
        roots = isolate_real_roots(w1) if w1.degree >= 1 else []
        for s, left, right in samples_between(roots):
            real, cplx = extension_counts(H1, Hh, degree, {q: s})
            report.regions.append(Region({q: s}, {'interval': [root_label(left), root_label(right)]}, real, cplx))
        if roots:
            report.unresolved.append(f'{len(roots)} boundary value(s) of {q}')
        return report

    # witnesses

    def find_witness(self, system, target, H=None):
        """Verified parameter point with exactly `target` distinct real solutions."""
        H = H or hermite_matrix(system)
        if H.dim < target:
            logger.info(f"Witness search: delta = {H.dim} < {target}")
            return ABSENT_ON_SAMPLED_CELLS
        if not H.params:
            found = self.first_match(system, H, [{}], target)
            return found or ABSENT_ON_SAMPLED_CELLS

        found = self.first_match(system, H, random_samples(H.w, self.samples, self.seed), target)
        if found:
            return found
        if self.mode == 'certified':
            found = self.first_match(system, H, sample_open_cells(H.w, self.max_parameters, self.deadline,
                                                                  self.seed), target)
            if found:
                return found
        for factor in H.winfty_factors:
            found = self.stratum_witness(system, factor, target)
            if found:
                return found
        logger.info(f"Witness search: no point with {target} real solutions on the sampled cells")
        return ABSENT_ON_SAMPLED_CELLS

    def first_match(self, system, H, points, target):
        batch = max(8, 4 * self.pool.jobs)
        for start in range(0, len(points), batch):
            self.check_deadline('witness search')
            chunk = points[start:start + batch]
            for point, (sig, rank) in zip(chunk, self.pool.map(_counts_at, [(H, p) for p in chunk])):
                if sig == target:
                    witness = self.verify_witness(system, point, sig, rank)
                    if witness:
                        return witness
        return None

    def verify_witness(self, system, point, real, cplx):
        """Recount at the point with the oracle; None if it disagrees or fails."""
        try:
            result = oracle_count(system.specialize(point))
        except (ComputationError, PreconditionViolation) as e:
            logger.warning(f"Witness {point_text(point)}: oracle failed: {e}")
            return None
        if (result.real_distinct, result.complex_distinct) != (real, cplx):
            logger.error(f"Witness {point_text(point)}: Hermite ({real}, {cplx}) but oracle "
                         f"({result.real_distinct}, {result.complex_distinct})")
            return None
        logger.info(f"Witness {point_text(point)}: {real} real of {cplx}, confirmed by the oracle")
        return Witness(dict(point), real, cplx, result.real_distinct)

    def stratum_witness(self, system, factor, target):
        if has_no_real_zeros(factor):
            return None
        candidates = []
        linear = solve_linear(factor, system.varset.params)
        if linear is not None:
            name, value = linear
            candidates.append((name, value, system.substitute(name, value.embed(system.varset))))
        elif len(factor.variables()) == 1:
            name = factor.variables()[0]
            for alpha in isolate_real_roots(factor.to_upoly(name)):
                value = exact_value(alpha)
                if value is not None:
                    candidates.append((name, value, system.specialize({name: value})))
        for name, value, sub in candidates:
            if not sub.equations:
                continue
            try:
                found = self.find_witness(sub, target)
            except (NotZeroDimensional, NotRadical) as e:
                logger.debug(f"Stratum {factor} = 0: {e}")
                continue
            if found is ABSENT_ON_SAMPLED_CELLS:
                continue
            completed = dict(found.point)
            completed[name] = value.evaluate(found.point) if isinstance(value, MPoly) else value
            found.point = {p: completed[p] for p in system.varset.params}
            return found
        return None
