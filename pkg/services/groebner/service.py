"""Gröbner bases of parametric systems in the joint ring Q[x, y].

The block order puts the variables x above the parameters y, so the x-leading
coefficients of the reduced basis are polynomials in y; their square-free lcm
is the non-specialization polynomial wInfty.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from shared.config import config
from shared.errors import InputError, NotZeroDimensional, VarSetMismatch, ZeroPolynomial
from shared.logging import setup_logger
from services.mpoly import MonomialOrder, MPoly, VarSet, parse_poly
from services.mpoly.poly import divides, grevlex_key, mono_div, mono_lcm, mono_mul
from services.mpoly.syntax import factor_list

logger = setup_logger('groebner')


@dataclass(frozen=True)
class ParametricSystem:
    varset: VarSet
    equations: tuple
    name: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'equations', tuple(self.equations))
        for eq in self.equations:
            if eq.varset != self.varset:
                raise VarSetMismatch(f"equation {eq} is over {eq.varset.names}, system over {self.varset.names}")

    @property
    def nparams(self):
        return self.varset.nparams

    def to_text(self):
        lines = []
        if self.name:
            lines.append(f'# {self.name}')
        lines.append('params: ' + ' '.join(self.varset.params))
        lines.append('vars: ' + ' '.join(self.varset.vars))
        lines.extend(eq.to_text() for eq in self.equations)
        return '\n'.join(lines) + '\n'

    def specialize(self, point):
        """Substitute rational values for the named parameters."""
        target = self.varset.without(*point)
        equations = [eq.subs(point).embed(target) for eq in self.equations]
        return ParametricSystem(target, [eq for eq in equations if not eq.is_zero()], self.name)

    def substitute(self, name, value):
        """Eliminate parameter `name` by a polynomial in the remaining symbols."""
        target = self.varset.without(name)
        equations = [eq.subs({name: value}).embed(target) for eq in self.equations]
        return ParametricSystem(target, [eq for eq in equations if not eq.is_zero()], self.name)

    def promote(self, name):
        """Treat parameter `name` as the last variable."""
        target = VarSet(self.varset.vars + (name,), tuple(p for p in self.varset.params if p != name))
        return ParametricSystem(target, [eq.embed(target) for eq in self.equations], self.name)

    def with_equations(self, extra):
        return ParametricSystem(self.varset, list(self.equations) + list(extra), self.name)


def parse_system(text, name=''):
    """Parse `params:` / `vars:` headers followed by one polynomial per line."""
    params, variables, bodies = None, None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(':')
        if sep and key.strip() == 'params':
            params = rest.split()
        elif sep and key.strip() == 'vars':
            variables = rest.split()
        else:
            bodies.append((lineno, line))
    if variables is None:
        raise InputError(f'{name or "system"}: missing "vars:" header')
    varset = VarSet(variables, params or ())
    equations = []
    for lineno, body in bodies:
        try:
            eq = parse_poly(body, varset)
        except InputError as e:
            raise InputError(f'{name or "system"} line {lineno}: {e}') from e
        if not eq.is_zero():
            equations.append(eq)
    if not equations:
        raise InputError(f'{name or "system"}: no equations')
    return ParametricSystem(varset, equations, name)


def load_system(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InputError(f'cannot read system file {path}: {e}') from e
    return parse_system(text, path.stem)


@dataclass(frozen=True)
class NormalForm:
    """numerator / wInfty^power; numerator has x-support in the staircase."""

    numerator: MPoly
    power: int = 0

    def coordinates(self, basis):
        """Parameter-only coefficient of each basis monomial."""
        parts = self.numerator.split_x()
        zero = MPoly.zero(self.numerator.varset)
        return [parts.get(b, zero) for b in basis]


@dataclass(frozen=True)
class ParametricGB:
    varset: VarSet
    generators: tuple
    order: MonomialOrder
    x_leads: tuple
    x_coeffs: tuple
    basis: tuple
    winfty: MPoly
    winfty_factors: tuple
    lc_multiplicities: tuple = field(repr=False)

    @property
    def delta(self):
        return len(self.basis)

    @property
    def staircase(self):
        return frozenset(self.basis)

    def basis_poly(self, i):
        return MPoly.monomial(self.varset, self.basis[i] + (0,) * self.varset.nparams)

    def basis_text(self):
        return [self.basis_poly(i).to_text() for i in range(self.delta)]

    def specialize(self, point):
        target = self.varset.without(*point)
        return [g.subs(point).embed(target) for g in self.generators]


def _reduce(p, basis, order):
    """Full reduction of p by basis over Q."""
    remainder = {}
    leads = [(g.leading_term(order), g) for g in basis]
    while p:
        e, c = p.leading_term(order)
        for (ge, gc), g in leads:
            if divides(ge, e):
                p = p - g.mul_term(mono_div(e, ge), c / gc)
                break
        else:
            remainder[e] = c
            p = MPoly(p.varset, {k: v for k, v in p.terms.items() if k != e})
    return MPoly(p.varset, remainder)


def _spoly(f, g, order):
    (fe, fc), (ge, gc) = f.leading_term(order), g.leading_term(order)
    lcm = mono_lcm(fe, ge)
    return f.mul_term(mono_div(lcm, fe), 1 / fc) - g.mul_term(mono_div(lcm, ge), 1 / gc)


def buchberger(polys, order):
    """Reduced Gröbner basis (monic) with the normal strategy and both criteria."""
    basis = []
    for p in polys:
        if not p.is_zero():
            basis.append(p.monic(order))
    if not basis:
        raise ZeroPolynomial('Gröbner basis of the zero ideal')
    leads = [g.leading_monomial(order) for g in basis]
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    reductions = 0
    while pairs:
        i, j = min(pairs, key=lambda ij: (order.key(mono_lcm(leads[ij[0]], leads[ij[1]])), ij))
        pairs.discard((i, j))
        lcm = mono_lcm(leads[i], leads[j])
        if lcm == mono_mul(leads[i], leads[j]):
            continue
        if any(k not in (i, j) and divides(leads[k], lcm)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(basis))):
            continue
        h = _reduce(_spoly(basis[i], basis[j], order), basis, order)
        reductions += 1
        if h.is_zero():
            continue
        basis.append(h.monic(order))
        leads.append(basis[-1].leading_monomial(order))
        n = len(basis) - 1
        pairs.update((k, n) for k in range(n))
    logger.debug(f"Buchberger: {reductions} S-polynomial reductions, {len(basis)} generators before interreduction")

    # minimal, then reduced
    minimal = []
    for k, g in enumerate(basis):
        if any(divides(leads[m], leads[k]) and (leads[m] != leads[k] or m < k)
               for m in range(len(basis)) if m != k):
            continue
        minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        reduced.append(_reduce(g, others, order).monic(order))
    return sorted(reduced, key=lambda g: order.key(g.leading_monomial(order)))


def standard_monomials(leads, nx):
    """x-monomials outside every cone; NotZeroDimensional when infinitely many."""
    if any(not any(e) for e in leads):
        return []
    for i in range(nx):
        if not any(e[i] > 0 and sum(e) == e[i] for e in leads):
            raise NotZeroDimensional(f'no pure power of variable {i + 1} among the x-leading monomials')
    seen = set()
    frontier = [(0,) * nx]
    while frontier:
        m = frontier.pop()
        if m in seen or any(divides(e, m) for e in leads):
            continue
        seen.add(m)
        for i in range(nx):
            frontier.append(m[:i] + (m[i] + 1,) + m[i + 1:])
    return sorted(seen, key=grevlex_key)


def groebner_basis(system):
    varset = system.varset
    nx = varset.nx
    if not system.equations:
        raise InputError('empty system')
    order = MonomialOrder.block(varset)
    generators = buchberger(system.equations, order)

    x_leads, x_coeffs = [], []
    for g in generators:
        parts = g.split_x()
        lead = max(parts, key=grevlex_key)
        x_leads.append(lead)
        x_coeffs.append(parts[lead])

    basis = standard_monomials(x_leads, nx)

    factors = []
    multiplicities = []
    for c in x_coeffs:
        mult = {}
        if not c.is_constant():
            for f, k in factor_list(c)[1]:
                if f.is_constant():
                    continue
                if f not in factors:
                    factors.append(f)
                mult[factors.index(f)] = k
        multiplicities.append(mult)
    winfty = MPoly.constant(varset, 1)
    for f in factors:
        winfty = winfty * f

    gb = ParametricGB(varset, tuple(generators), order, tuple(x_leads), tuple(x_coeffs),
                      tuple(basis), winfty, tuple(factors), tuple(multiplicities))
    logger.info(f"Gröbner basis{' of ' + system.name if system.name else ''}: "
                f"{len(generators)} generators, delta={gb.delta}, "
                f"deg wInfty={winfty.total_degree()} ({len(factors)} factors)")
    return gb


def normal_form(p, gb):
    """Pseudo-reduce p by the x-leading terms of gb; exact over Q[y]."""
    varset = gb.varset
    nx = varset.nx
    pad = (0,) * varset.nparams
    counts = [0] * len(gb.generators)
    remainder = MPoly.zero(varset)
    # generators sharing an x-lead: prefer constant x-coefficients
    candidates = sorted(range(len(gb.generators)),
                        key=lambda k: (not gb.x_coeffs[k].is_constant(), gb.x_coeffs[k].total_degree()))
    while p:
        parts = p.split_x()
        m = max(parts, key=grevlex_key)
        c = parts[m]
        for k in candidates:
            lead = gb.x_leads[k]
            if not divides(lead, m):
                continue
            g, lc = gb.generators[k], gb.x_coeffs[k]
            shift = mono_div(m, lead) + pad
            if lc.is_constant():
                p = p - g.mul_term(shift, 1 / lc.constant_value()) * c
                break
            try:
                quotient = c.exact_div(lc)
            except ArithmeticError:
                p = p * lc - g.mul_term(shift, 1) * c
                remainder = remainder * lc
                counts[k] += 1
            else:
                p = p - g.mul_term(shift, 1) * quotient
            break
        else:
            term = c.mul_term(m + pad, 1)
            remainder = remainder + term
            p = p - term
    if not any(counts):
        return NormalForm(remainder, 0)
    exponents = [0] * len(gb.winfty_factors)
    for k, n in enumerate(counts):
        for f, mult in gb.lc_multiplicities[k].items():
            exponents[f] += n * mult
    power = max(exponents)
    cofactor = MPoly.constant(varset, 1)
    for f, e in zip(gb.winfty_factors, exponents):
        cofactor = cofactor * f ** (power - e)
    # constants of the x-coefficients are not powers of wInfty
    scale = Fraction(1)
    for k, n in enumerate(counts):
        if n:
            lc = gb.x_coeffs[k]
            product = MPoly.constant(varset, 1)
            for f, mult in gb.lc_multiplicities[k].items():
                product = product * gb.winfty_factors[f] ** mult
            scale *= (product.leading_coefficient() / lc.leading_coefficient()) ** n
    return NormalForm((remainder * cofactor).scale(scale), power)


def check_radical_generic(gb, system, points=4, seed=None):
    """Randomized audit of the radicality precondition: 'ok' or 'suspect'."""
    from services.oracle.service import oracle_count

    rng = random.Random(config.getint('oracle', 'seed', 7) if seed is None else seed)
    params = system.varset.params
    tested = 0
    attempts = 0
    while tested < points and attempts < 20 * points:
        attempts += 1
        point = {p: Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for p in params}
        if params and gb.winfty.evaluate(point) == 0:
            continue
        tested += 1
        counts = oracle_count(system.specialize(point))
        if counts.complex_distinct == gb.delta:
            logger.debug(f"Radical audit: square-free fiber at {point}")
            return 'ok'
    logger.warning(f"Radical audit: every tested fiber has fewer than {gb.delta} distinct solutions")
    return 'suspect'
