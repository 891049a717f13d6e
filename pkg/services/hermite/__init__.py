from .linalg import SymRatMatrix, berkowitz, signature_rank
from .service import (HermiteMatrix, RationalMatrix, counts_from_minor_signs, hermite_matrix,
                      minor_sign_sequence, mult_matrix, signature_rank_at, specialize)

__all__ = [
    'SymRatMatrix', 'berkowitz', 'signature_rank',
    'HermiteMatrix', 'RationalMatrix', 'counts_from_minor_signs', 'hermite_matrix',
    'minor_sign_sequence', 'mult_matrix', 'signature_rank_at', 'specialize',
]
