from src.quasi.distance import (graph_equivalence_constants, graph_map_constant, map_metric_constant,
                                normal_case_identity, quasi_distance, quasi_distance_report, quasi_triangle_constant,
                                relative_elements)

__all__ = [
    'graph_equivalence_constants', 'graph_map_constant', 'map_metric_constant', 'normal_case_identity',
    'quasi_distance', 'quasi_distance_report', 'quasi_triangle_constant', 'relative_elements'
]
