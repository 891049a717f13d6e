from .cells import projection_levels, random_samples, sample_open_cells, samples_between
from .service import ClassifyService, exact_value, extension_counts, extension_hermite, root_label

__all__ = [
    'projection_levels', 'random_samples', 'sample_open_cells', 'samples_between',
    'ClassifyService', 'exact_value', 'extension_counts', 'extension_hermite', 'root_label',
]
