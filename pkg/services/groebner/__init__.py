from .service import (NormalForm, ParametricGB, ParametricSystem, check_radical_generic,
                      groebner_basis, load_system, normal_form, parse_system)

__all__ = [
    'NormalForm', 'ParametricGB', 'ParametricSystem', 'check_radical_generic',
    'groebner_basis', 'load_system', 'normal_form', 'parse_system',
]
