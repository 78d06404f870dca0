from typing import List, Sequence, Tuple

from src.error.errors import DegenerateSample
from src.graphs.maps import IntrinsicMap
from src.groups.core import Element
from src.groups.splitting_constants import estimate_splitting_constants, projection_constant
from src.lipschitz.estimators import domain_pairs, domain_triples, fssc_constant
from src.models import json_number
from src.quasi.distance import (graph_map_constant, map_metric_constant, normal_case_identity, quasi_distance,
                                quasi_distance_report, relative_elements)
from src.suites.runner import SuiteContext

TRIPLE_CAP = 5000
PAIR_CAP = 2000
SPLITTING_CAP = 1000

CHECKS = {
    'quasi.symmetry': 'd_phi(n1, n2) = d_phi(n2, n1) and d_phi(n, n) = 0',
    'quasi.triangle': 'd_phi(n1, n2) <= C(1 + L)(d_phi(n1, n3) + d_phi(n3, n2))',
    'quasi.equivalence': 'd(Phi(n1), Phi(n2)) / d_phi(n1, n2) lies in [1/C, 1 + L]',
    'quasi.graph_map': 'Phi is (1 + L)-Lipschitz from (E, d_phi) to (G, d) on an independent sample',
    'quasi.map_metric': 'phi is 2L-Lipschitz from (E, d_phi) to (H, d) when N is normal',
    'quasi.normal_identity': 'with H normal, d_phi is the distance of N',
}


def _both_orders(pairs: Sequence[Tuple[Element, Element]]) -> List[Tuple[Element, Element]]:
    return [pair for a, b in pairs for pair in ((a, b), (b, a))]


def _triple_pairs(triples: Sequence[Tuple[Element, Element, Element]]) -> List[Tuple[Element, Element]]:
    return _both_orders([pair for a, b, c in triples for pair in ((a, b), (a, c), (b, c))])


def _check_map(ctx: SuiteContext, phi: IntrinsicMap, stream: int) -> None:
    s, group, tol = ctx.splitting, ctx.group, ctx.tolerances
    triples = domain_triples(phi, ctx.count(TRIPLE_CAP), ctx.sampler(stream), ctx.box, ctx.exhaustive)
    pairs = domain_pairs(phi, ctx.count(PAIR_CAP), ctx.sampler(stream + 1), ctx.box, ctx.exhaustive)
    if not triples or not pairs:
        for check_id in CHECKS:
            ctx.collector.skip(check_id)
        return

    for a, b in pairs:
        ctx.observe('quasi.symmetry', abs(quasi_distance(phi, a, b) - quasi_distance(phi, b, a)), tol.exact)
        ctx.observe('quasi.symmetry', quasi_distance(phi, a, a), tol.exact)

    triple_pairs = _triple_pairs(triples)
    ordered = _both_orders(pairs)
    # The constants have to cover the relative elements the bounds are derived at
    extra = relative_elements(phi, triple_pairs) + relative_elements(phi, pairs)
    constants = estimate_splitting_constants(s, ctx.box, ctx.count(SPLITTING_CAP), ctx.seed, tol, ctx.search,
                                             exhaustive=ctx.exhaustive, extra=extra, subgroup_distance=False)
    c = projection_constant(constants)
    try:
        triangle_l = fssc_constant(phi, triple_pairs, tol).estimate
        pair_l = fssc_constant(phi, ordered, tol).estimate
        report = quasi_distance_report(phi, triples, pairs, c, pair_l, ctx.box.describe() if ctx.box else '', tol)
    except DegenerateSample:
        for check_id in CHECKS:
            ctx.collector.skip(check_id)
        return

    summary = report.to_dict()
    summary['C3'] = json_number(constants.c3)
    ctx.collector.constant('quasi.triangle', phi.name, summary)
    bound = c * (1.0 + triangle_l)
    if ctx.triangle_holds():
        ctx.observe('quasi.triangle', report.quasi_triangle - bound, tol.sample(bound))
    else:
        ctx.collector.skip('quasi.triangle', len(triples))

    low = 1.0 / constants.c3 if constants.c3 > 0 else 0.0
    ctx.observe('quasi.equivalence', low - report.c_low, tol.sample(low))
    ctx.observe('quasi.equivalence', report.c_high - (1.0 + pair_l), tol.sample(1.0 + pair_l))

    graph_pairs = domain_pairs(phi, ctx.count(PAIR_CAP), ctx.sampler(stream + 2), ctx.box, ctx.exhaustive)
    try:
        graph_map = graph_map_constant(phi, graph_pairs, tol).estimate
        graph_l = fssc_constant(phi, _both_orders(graph_pairs), tol).estimate
    except DegenerateSample:
        ctx.collector.skip('quasi.graph_map')
    else:
        ctx.observe('quasi.graph_map', graph_map - (1.0 + graph_l), tol.sample(1.0 + graph_l))

    map_metric = map_metric_constant(phi, pairs, tol).estimate
    ctx.collector.constant('quasi.map_metric', phi.name, {'map_metric': json_number(map_metric),
                                                          'L': json_number(pair_l)})
    if s.n_normal:
        ctx.observe('quasi.map_metric', map_metric - 2.0 * pair_l, tol.sample(2.0 * pair_l))
    else:
        ctx.collector.skip('quasi.map_metric', len(pairs))

    if s.h_normal:
        ctx.observe('quasi.normal_identity', normal_case_identity(phi, pairs), tol.exact)
    else:
        ctx.collector.skip('quasi.normal_identity', len(pairs))


def quasi_suite(ctx: SuiteContext) -> None:
    """The quasi-distance d_phi against the distance of G."""
    for check_id, anchor in CHECKS.items():
        ctx.check(check_id, anchor)
    for index, phi in enumerate(ctx.maps):
        _check_map(ctx, phi, 300 + 10 * index)
    for check_id in CHECKS:
        ctx.collector.finish(check_id)
