from .upoly import UPoly, gcd_upoly, simplest_between, sign, squarefree_part, sturm_count
from .realalg import RealAlgebraicNumber, isolate_real_roots, sign_at

__all__ = [
    'UPoly', 'gcd_upoly', 'simplest_between', 'sign', 'squarefree_part', 'sturm_count',
    'RealAlgebraicNumber', 'isolate_real_roots', 'sign_at',
]
