from src.lipschitz.estimators import (CONDITIONS, condition_constant, condition_constants, domain_pairs,
                                      domain_triples, fssc_constant, fssc_ratio)
from src.lipschitz.separation import (HalfConeResult, SeparationResult, axis_separation, cone_separation_test,
                                      halfcone_graph_test, split_separation)
from src.lipschitz.stability import (StabilityReport, graph_projection_constant, limit_stability_check,
                                     metric_vs_intrinsic, projection_bound)

__all__ = [
    'CONDITIONS', 'condition_constant', 'condition_constants', 'domain_pairs', 'domain_triples', 'fssc_constant',
    'fssc_ratio', 'HalfConeResult', 'SeparationResult', 'axis_separation', 'cone_separation_test',
    'halfcone_graph_test', 'split_separation', 'StabilityReport', 'graph_projection_constant',
    'limit_stability_check', 'metric_vs_intrinsic', 'projection_bound'
]
