"""Sample points in every connected component of {w != 0}.

Open-cell cylindrical decomposition: project the irreducible factors of w by
leading coefficients, discriminants and pairwise resultants (last parameter
first), isolate the roots of the base polynomials and lift through rational
samples strictly between consecutive roots.
"""
import math
import random
import time
from fractions import Fraction

from shared.errors import ComputationError, TimeBudgetExceeded, TooManyParameters
from shared.logging import setup_logger
from services.mpoly import MPoly, discriminant, irreducible_factors, resultant
from services.mpoly.elimination import leading_coeff_in
from services.scalar import UPoly, isolate_real_roots, simplest_between

logger = setup_logger('classify')


class _Nullified(Exception):
    pass


def samples_between(roots):
    """(sample, left root, right root) for every open interval cut out by sorted roots."""
    if not roots:
        return [(Fraction(0), None, None)]
    samples = [(Fraction(math.floor(roots[0].lo) - 1), None, roots[0])]
    for left, right in zip(roots, roots[1:]):
        samples.append((simplest_between(left.hi, right.lo), left, right))
    samples.append((Fraction(math.ceil(roots[-1].hi) + 1), roots[-1], None))
    return samples


def _distinct_factors(polys):
    factors = []
    for p in polys:
        if p.is_zero() or p.is_constant():
            continue
        for f in irreducible_factors(p):
            if f not in factors:
                factors.append(f)
    return factors


def projection_levels(factors, names):
    """levels[k] = polynomials whose highest variable (in `names` order) is names[k]."""
    levels = [[] for _ in names]
    current = list(factors)
    for k in range(len(names) - 1, -1, -1):
        name = names[k]
        top = [f for f in current if f.involves(name)]
        rest = [f for f in current if not f.involves(name)]
        levels[k] = top
        if k == 0:
            break
        projected = []
        for i, f in enumerate(top):
            projected.append(leading_coeff_in(f, name))
            if f.degree(name) >= 2:
                projected.append(discriminant(f, name))
            for g in top[i + 1:]:
                projected.append(resultant(f, g, name))
        current = _distinct_factors(rest + projected)
        logger.debug(f"Projection onto {', '.join(names[:k])}: {len(current)} factors")
    return levels


def _lift(levels, names, deadline):
    points = [{}]
    for k, name in enumerate(names):
        lifted = []
        for point in points:
            if deadline and time.monotonic() > deadline:
                raise TimeBudgetExceeded(f'time budget exhausted while lifting over {name}')
            product = UPoly((1,))
            for f in levels[k]:
                u = f.subs(point).to_upoly(name) if point else f.to_upoly(name)
                if u.is_zero():
                    raise _Nullified(f'{f} vanishes identically over {point}')
                product = product * u
            roots = isolate_real_roots(product) if product.degree >= 1 else []
            for value, _, _ in samples_between(roots):
                lifted.append({**point, name: value})
        points = lifted
    return points


def _shear(w, names, coeffs):
    """w(z_1 + c_1 z_t, ..., z_{t-1} + c_{t-1} z_t, z_t)."""
    last = MPoly.var(w.varset, names[-1])
    return w.subs({n: MPoly.var(w.varset, n) + last * c for n, c in zip(names[:-1], coeffs)})


def sample_open_cells(w, max_parameters=3, deadline=None, seed=0, changes=None):
    """Rational points meeting every connected component of {w != 0}."""
    names = list(w.varset.vars)
    if not names:
        return [{}]
    if len(names) > max_parameters:
        raise TooManyParameters(f'{len(names)} parameters exceed the certified limit of {max_parameters}; '
                                f'use randomized mode')
    rng = random.Random(seed)
    coeffs = [0] * (len(names) - 1)
    current = w
    for attempt in range(4):
        factors = _distinct_factors([current])
        if not factors:
            return [{n: Fraction(0) for n in names}]
        try:
            levels = projection_levels(factors, names)
            points = _lift(levels, names, deadline)
            break
        except _Nullified as e:
            coeffs = [rng.randint(-3, 3) or 1 for _ in names[:-1]]
            logger.warning(f"Open cells: {e}; shearing by {coeffs}")
            if changes is not None:
                changes.append(', '.join(f'{n} -> {n} + {c}*{names[-1]}' for n, c in zip(names[:-1], coeffs)))
            current = _shear(w, names, coeffs)
    else:
        raise ComputationError('projection stays degenerate after coordinate changes')
    if any(coeffs):
        points = [{**{n: p[n] + c * p[names[-1]] for n, c in zip(names[:-1], coeffs)}, names[-1]: p[names[-1]]}
                  for p in points]
    kept = [p for p in points if w.evaluate(p) != 0]
    if len(kept) != len(points):
        logger.warning(f"Open cells: {len(points) - len(kept)} samples landed on w = 0")
    logger.info(f"Open cells: {len(kept)} sample points over {', '.join(names)}")
    return kept


def random_samples(w, count, seed, radius=8):
    """Seeded random rational points with w != 0 and small denominators."""
    rng = random.Random(seed)
    names = list(w.varset.vars)
    points = []
    attempts = 0
    while len(points) < count and attempts < 20 * count:
        attempts += 1
        den = rng.choice((1, 2, 3, 4, 8, 16, 100))
        point = {n: Fraction(rng.randint(-radius * den, radius * den), den) for n in names}
        if w.evaluate(point) != 0:
            points.append(point)
    return points
