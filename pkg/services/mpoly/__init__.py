from .poly import GREVLEX, LEX, MonomialOrder, MPoly, VarSet
from .elimination import discriminant, resultant
from .syntax import factor_list, irreducible_factors, parse_poly, parse_rational, squarefree

__all__ = [
    'GREVLEX', 'LEX', 'MonomialOrder', 'MPoly', 'VarSet',
    'discriminant', 'resultant',
    'factor_list', 'irreducible_factors', 'parse_poly', 'parse_rational', 'squarefree',
]
