"""Parametric Hermite matrices.

Entries are traces of multiplication maps on the generic quotient, stored as
numerators over one even power K of wInfty, so every minor of the numerator
matrix has the sign of the corresponding minor of H wherever wInfty != 0.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from shared.errors import NonSpecializable, NotRadical
from shared.logging import setup_logger
from shared.models import UNDETERMINED
from services.groebner import groebner_basis, normal_form
from services.mpoly import MPoly, squarefree
from services.scalar import RealAlgebraicNumber, sign, sign_at

from .linalg import SymRatMatrix, berkowitz, determinant, leading_minors, signature_rank_from_signs

logger = setup_logger('hermite')


class _Fractions:
    """Arithmetic on numerator / wInfty^power pairs."""

    def __init__(self, winfty):
        self.winfty = winfty
        self._powers = [MPoly.constant(winfty.varset, 1)]

    def power(self, k):
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] * self.winfty)
        return self._powers[k]

    def lift(self, pair, k):
        num, p = pair
        return num * self.power(k - p) if k > p else num

    def add(self, a, b):
        k = max(a[1], b[1])
        return self.lift(a, k) + self.lift(b, k), k

    def mul(self, a, b):
        return a[0] * b[0], a[1] + b[1]


class _TraceTable:
    """Normal forms per x-monomial and traces of multiplication maps."""

    def __init__(self, gb):
        self.gb = gb
        self.varset = gb.varset
        self.pad = (0,) * self.varset.nparams
        self.fractions = _Fractions(gb.winfty)
        self._nf = {}
        self._trace = {}
        zero = MPoly.zero(self.varset)
        self.basis_traces = []
        for k in range(gb.delta):
            total = (zero, 0)
            for l in range(gb.delta):
                m = tuple(a + b for a, b in zip(gb.basis[k], gb.basis[l]))
                total = self.fractions.add(total, self.coordinate(m, l))
            self.basis_traces.append(total)

    def normal_form(self, xmono):
        if xmono not in self._nf:
            nf = normal_form(MPoly.monomial(self.varset, xmono + self.pad), self.gb)
            self._nf[xmono] = (nf.coordinates(self.gb.basis), nf.power)
        return self._nf[xmono]

    def coordinate(self, xmono, l):
        coords, power = self.normal_form(xmono)
        return coords[l], power

    def trace(self, xmono):
        """trace(L_m) for an x-monomial m."""
        if xmono not in self._trace:
            coords, power = self.normal_form(xmono)
            total = (MPoly.zero(self.varset), 0)
            for c, tau in zip(coords, self.basis_traces):
                if c:
                    total = self.fractions.add(total, self.fractions.mul((c, power), tau))
            self._trace[xmono] = total
        return self._trace[xmono]

    def trace_of(self, poly):
        """trace(L_p) for p with x-part and parameter coefficients."""
        total = (MPoly.zero(self.varset), 0)
        for xmono, coeff in poly.split_x().items():
            num, power = self.trace(xmono)
            total = self.fractions.add(total, (num * coeff, power))
        return total


def _common_power(pairs, fractions):
    k = max((p for _, p in pairs), default=0)
    if k % 2:
        k += 1
    return k, [fractions.lift(pair, k) for pair in pairs]


def _to_param_space(p):
    return p.embed(p.varset.param_space())


@dataclass(frozen=True)
class RationalMatrix:
    """numerators / wInfty^power, entries in the parameter ring."""

    numerators: tuple
    power: int
    winfty: MPoly


def mult_matrix(g, gb):
    """Matrix of multiplication by g on the quotient basis; column j = NF(g * b_j)."""
    table = _TraceTable(gb)
    delta = gb.delta
    columns = []
    for j in range(delta):
        product = g * gb.basis_poly(j)
        column = [(MPoly.zero(gb.varset), 0)] * delta
        for xmono, coeff in product.split_x().items():
            coords, power = table.normal_form(xmono)
            for i in range(delta):
                if coords[i]:
                    column[i] = table.fractions.add(column[i], (coords[i] * coeff, power))
        columns.append(column)
    flat = [columns[j][i] for i in range(delta) for j in range(delta)]
    k = max((p for _, p in flat), default=0)
    rows = tuple(
        tuple(_to_param_space(table.fractions.lift(columns[j][i], k)) for j in range(delta))
        for i in range(delta)
    )
    return RationalMatrix(rows, k, _to_param_space(gb.winfty))


@dataclass(frozen=True)
class HermiteMatrix:
    varset: object
    basis: tuple
    basis_text: tuple
    numerators: tuple
    power: int
    winfty: MPoly
    winfty_factors: tuple
    raw_det: MPoly
    wh: MPoly
    w: MPoly
    weight: str = '1'
    system_name: str = ''

    @property
    def dim(self):
        return len(self.basis)

    @property
    def params(self):
        return self.varset.vars

    def entry(self, i, j):
        """(numerator, power): the entry is numerator / wInfty^power."""
        return self.numerators[i][j], self.power

    def degrees(self):
        return {
            'raw_det': self.raw_det.total_degree(),
            'wh': self.wh.total_degree(),
            'winfty': self.winfty.total_degree(),
            'w': self.w.total_degree(),
        }

    @cached_property
    def minor_polys(self):
        one = MPoly.constant(self.varset, 1)
        return leading_minors([list(r) for r in self.numerators], one)

    @cached_property
    def charpoly_coeffs(self):
        one = MPoly.constant(self.varset, 1)
        return berkowitz([list(r) for r in self.numerators], one)

    def entries_text(self):
        denominator = '' if self.power == 0 or self.winfty == 1 else f' / ({self.winfty})^{self.power}'
        return [[f'{self.numerators[i][j]}{denominator}' for j in range(self.dim)] for i in range(self.dim)]


def hermite_matrix(system, weight=None, gb=None):
    """Parametric Hermite matrix of the trace form (p, q) -> trace(L_{h p q})."""
    gb = gb or groebner_basis(system)
    varset = gb.varset
    pspace = varset.param_space()
    table = _TraceTable(gb)
    delta = gb.delta
    h = weight if weight is not None else MPoly.constant(varset, 1)

    pairs = {}
    for i in range(delta):
        for j in range(i, delta):
            pairs[i, j] = table.trace_of(h * gb.basis_poly(i) * gb.basis_poly(j))
    k, lifted = _common_power(list(pairs.values()), table.fractions)
    lifted = dict(zip(pairs, lifted))
    numerators = tuple(
        tuple(_to_param_space(lifted[min(i, j), max(i, j)]) for j in range(delta))
        for i in range(delta)
    )

    winfty = _to_param_space(gb.winfty)
    one = MPoly.constant(pspace, 1)
    raw_det = determinant([list(r) for r in numerators], one)
    wh = raw_det
    if wh.is_zero():
        if pspace.nx:
            raise NotRadical(f'the Hermite determinant vanishes identically'
                             f'{" for " + system.name if system.name else ""}: '
                             f'the system is not radical over the parameter field')
        w = MPoly.zero(pspace)
    else:
        if not winfty.is_constant():
            while True:
                try:
                    wh = wh.exact_div(winfty)
                except ArithmeticError:
                    break
        wh = wh.primitive()
        w = squarefree(winfty * wh) if pspace.nx else MPoly.constant(pspace, 1)

    H = HermiteMatrix(pspace, gb.basis, tuple(gb.basis_text()), numerators, k, winfty,
                      tuple(_to_param_space(f) for f in gb.winfty_factors), raw_det, wh, w,
                      weight='1' if weight is None else weight.to_text(), system_name=system.name)
    degrees = H.degrees()
    logger.info(f"Hermite matrix{' of ' + system.name if system.name else ''}: dim {delta}, "
                f"deg wInfty={degrees['winfty']}, deg wH={degrees['wh']} (raw {degrees['raw_det']}), "
                f"deg w={degrees['w']}")
    return H


def specialize(H, point):
    """Exact rational matrix H(eta)."""
    point = {name: Fraction(v) for name, v in point.items()}
    scale = H.winfty.evaluate(point)
    if scale == 0:
        raise NonSpecializable(f'wInfty vanishes at {", ".join(f"{k}={v}" for k, v in point.items())}')
    denominator = scale ** H.power
    return SymRatMatrix(tuple(
        tuple(entry.evaluate(point) / denominator for entry in row) for row in H.numerators
    ))


def _univariate_at(p, name, fixed):
    """Substitute the fixed rational coordinates and view p as univariate in name."""
    if fixed:
        p = p.subs(fixed)
    if name is None:
        return p.constant_value(), None
    return None, p.to_upoly(name)


def _sign_at_point(p, name, point, fixed):
    const, u = _univariate_at(p, name, fixed)
    if u is None:
        return sign(const)
    return sign_at(u, point)


def _as_point(point):
    if point is None or isinstance(point, RealAlgebraicNumber):
        return point
    return RealAlgebraicNumber.from_rational(point)


def _check_specializable(H, name, point, fixed):
    if _sign_at_point(H.winfty, name, point, fixed) == 0:
        raise NonSpecializable(f'wInfty vanishes at {name} = {point.to_text(name) if point else fixed}')


def minor_sign_sequence(H, point=None, name=None, fixed=None):
    """Signs of the leading principal minors at a point of parameter space.

    `name` is the free parameter evaluated at the real algebraic number `point`;
    every other parameter is fixed to a rational value via `fixed`.
    """
    fixed = fixed or {}
    point = _as_point(point)
    if name is None and H.params:
        name = next(p for p in H.params if p not in fixed)
    _check_specializable(H, name, point, fixed)
    return [_sign_at_point(m, name, point, fixed) for m in H.minor_polys]


def counts_from_minor_signs(signs):
    """(real, complex distinct) from a leading-principal-minor sign sequence."""
    rank = 0
    for k, s in enumerate(signs, 1):
        if s:
            rank = k
    if rank == 0:
        return 0, 0
    sequence = [1] + list(signs[:rank])
    if 0 in sequence:
        return UNDETERMINED, UNDETERMINED
    permanences = sum(1 for a, b in zip(sequence, sequence[1:]) if a == b)
    variations = rank - permanences
    real = permanences - variations
    if real < 0:
        return UNDETERMINED, rank
    return real, rank


def signature_rank_at(H, point=None, name=None, fixed=None):
    """Exact (signature, rank) of H at a real algebraic parameter value."""
    fixed = fixed or {}
    point = _as_point(point)
    if H.dim == 0:
        return 0, 0
    if name is None and H.params:
        name = next(p for p in H.params if p not in fixed)
    _check_specializable(H, name, point, fixed)
    return signature_rank_from_signs([_sign_at_point(c, name, point, fixed) for c in H.charpoly_coeffs])
