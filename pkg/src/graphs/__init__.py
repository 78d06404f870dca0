from src.graphs.graphing import (GraphPoint, PointClass, axis_value, boundary_sequences, classify_point,
                                 graph_distance_bound, graph_points, graphing_map, on_graph)
from src.graphs.maps import (FiniteMap, FunctionMap, IntrinsicMap, MapSpec, TableMap, TranslatedMap, all_finite_maps,
                             build_map, parse_map_spec, translate_map)

__all__ = [
    'GraphPoint', 'PointClass', 'axis_value', 'boundary_sequences', 'classify_point', 'graph_distance_bound',
    'graph_points', 'graphing_map', 'on_graph',
    'FiniteMap', 'FunctionMap', 'IntrinsicMap', 'MapSpec', 'TableMap', 'TranslatedMap', 'all_finite_maps',
    'build_map', 'parse_map_spec', 'translate_map'
]
