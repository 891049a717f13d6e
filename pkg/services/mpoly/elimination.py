"""Resultants and discriminants by the subresultant pseudo-remainder sequence.

Sign convention: res_v(p, q) is the determinant of the Sylvester matrix with
the rows of p first, so res_x(x - a, x - b) = a - b and res_x(x^2 - t, x) = -t.
The discriminant is res_v(p, dp/dv) / lc_v(p), which is (-1)^(n(n-1)/2) times
the classical one: disc_y(y^2 - t) = -4t.
"""
from shared.errors import DegenerateInput

from .poly import MPoly


def _degree(coeffs):
    return len(coeffs) - 1


def _trim(coeffs):
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def prem(a, b):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b on coefficient lists."""
    rem = list(a)
    db = _degree(b)
    lead = b[-1]
    steps = _degree(rem) - db + 1
    if steps <= 0:
        return rem
    for _ in range(steps):
        if len(rem) - 1 < db:
            rem = [c * lead for c in rem]
            continue
        top = rem[-1]
        shift = len(rem) - 1 - db
        rem = [c * lead for c in rem]
        for j, c in enumerate(b):
            rem[shift + j] = rem[shift + j] - top * c
        rem.pop()
        _trim(rem)
    return rem


def resultant_coeffs(a, b, varset):
    """Resultant of two polynomials given as dense coefficient lists over a ring of MPoly."""
    zero = MPoly.zero(varset)
    one = MPoly.constant(varset, 1)
    a, b = _trim(list(a)), _trim(list(b))
    if not a or not b:
        return zero
    s = 1
    if _degree(a) < _degree(b):
        a, b = b, a
        if _degree(a) % 2 and _degree(b) % 2:
            s = -1
    if _degree(b) == 0:
        return b[0] ** _degree(a) * s
    g = h = one
    while True:
        delta = _degree(a) - _degree(b)
        if _degree(a) % 2 and _degree(b) % 2:
            s = -s
        r = prem(a, b)
        if not r:
            return zero
        divisor = g * h ** delta
        a, b = b, [c.exact_div(divisor) for c in r]
        g = a[-1]
        if delta:
            h = (g ** delta).exact_div(h ** (delta - 1))
        if _degree(b) == 0:
            break
    da = _degree(a)
    h = (b[0] ** da).exact_div(h ** (da - 1)) if da >= 1 else h
    return h * s


def resultant(p, q, name):
    """res_name(p, q); both arguments must have positive degree in name."""
    if p.degree(name) < 1 or q.degree(name) < 1:
        raise DegenerateInput(f'resultant in {name}: {p} or {q} is constant in {name}')
    return resultant_coeffs(p.coeffs_in(name), q.coeffs_in(name), p.varset)


def discriminant(p, name):
    if p.degree(name) < 2:
        raise DegenerateInput(f'discriminant in {name} needs degree >= 2, got {p}')
    lead = p.coeffs_in(name)[-1]
    return resultant(p, p.diff(name), name).exact_div(lead)


def leading_coeff_in(p, name):
    return p.coeffs_in(name)[-1]
