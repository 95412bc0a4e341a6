"""
Local Outlier Factor with k-d tree neighbour search.
"""
from .kdtree import KDTree, kdtree_knn
from .outlier_factor import (
    DENSITY_SENTINEL,
    LocalOutlierFactor,
    LofModel,
    fit_lof,
    local_reachability_density,
    lof_fit_predict,
    lof_score,
    lof_scores,
    reachability_densities,
)

__all__ = [
    'DENSITY_SENTINEL',
    'KDTree',
    'LocalOutlierFactor',
    'LofModel',
    'fit_lof',
    'kdtree_knn',
    'local_reachability_density',
    'lof_fit_predict',
    'lof_score',
    'lof_scores',
    'reachability_densities',
]
