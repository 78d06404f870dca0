from src.groups.core import (Element, MetricGroup, NormalSide, OneDimAxis, Splitting, Subgroup, conjugate,
                             decompose, dist_to_subgroup)
from src.groups.splitting_constants import comparison_constant, estimate_splitting_constants, projection_constant
from src.groups.word_metric import WordMetricTable, word_metric_distance
from src.groups.zoo import GroupSpec, instantiate_group, load_splitting, parse_group_spec, verify_metric_axioms

__all__ = [
    'Element', 'MetricGroup', 'NormalSide', 'OneDimAxis', 'Splitting', 'Subgroup',
    'conjugate', 'decompose', 'dist_to_subgroup',
    'comparison_constant', 'estimate_splitting_constants', 'projection_constant',
    'WordMetricTable', 'word_metric_distance',
    'GroupSpec', 'instantiate_group', 'load_splitting', 'parse_group_spec', 'verify_metric_axioms'
]
