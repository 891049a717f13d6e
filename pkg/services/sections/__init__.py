from .service import (ProjectiveCurve, SectionProblem, SectionService, chart_system, hyperplane_text, load_curve,
                      parse_curve, parse_form, section_system, totally_real_fibers)

__all__ = [
    'ProjectiveCurve', 'SectionProblem', 'SectionService', 'chart_system', 'hyperplane_text', 'load_curve',
    'parse_curve', 'parse_form', 'section_system', 'totally_real_fibers',
]
