import math
from typing import List

from src.graphs.graphing import PointClass, boundary_sequences, classify_point, graph_distance_bound, graphing_map
from src.graphs.maps import IntrinsicMap, all_finite_maps, translate_map
from src.groups.core import Element
from src.suites.runner import SuiteContext

TRANSLATION_CAP = 100
DOMAIN_CAP = 1000
BOUNDARY_KS = (1, 2, 5, 10, 100)
COMPOSITION_POINTS = 10


def _translations(ctx: SuiteContext) -> List[Element]:
    elements = ctx.group.elements()
    if ctx.exhaustive and elements is not None:
        return elements
    return ctx.group.sample(ctx.count(TRANSLATION_CAP), ctx.sampler(31), ctx.box)


def _composition_points(ctx: SuiteContext, once: IntrinsicMap) -> List[Element]:
    elements = once.domain_elements()
    if ctx.exhaustive and elements is not None:
        return elements
    return once.sample_domain(COMPOSITION_POINTS, ctx.sampler(33), ctx.box)


def _maps(ctx: SuiteContext) -> List[IntrinsicMap]:
    if ctx.exhaustive and ctx.splitting.n_elements() is not None and ctx.splitting.h_elements() is not None:
        return list(all_finite_maps(ctx.splitting)) + list(ctx.maps)
    return list(ctx.maps)


def _check_translation(ctx: SuiteContext, phi: IntrinsicMap, q: Element, domain: List[Element]) -> None:
    """q·Gamma_phi and Gamma_{phi_q} agree, in both directions, over the domain sample."""
    s, group, tol = ctx.splitting, ctx.group, ctx.tolerances.exact
    translated = translate_map(phi, q)
    q_inv = group.inverse(q)
    for n in domain:
        # q·Phi(n) lies on the graph of phi_q
        point = group.multiply(q, graphing_map(phi, n).point)
        m = s.project_n(point)
        if not translated.contains(m):
            ctx.observe('translation.identity', math.inf, tol)
            continue
        ctx.observe('translation.identity', group.residual(translated.evaluate(m), s.project_h(point)), tol)
        # q^-1·Phi_q(m) lies on the graph of phi
        back = group.multiply(q_inv, graphing_map(translated, m).point)
        base = s.project_n(back)
        if not phi.contains(base):
            ctx.observe('translation.identity', math.inf, tol)
            continue
        ctx.observe('translation.identity', group.residual(phi.evaluate(base), s.project_h(back)), tol)


def translation_suite(ctx: SuiteContext) -> None:
    """Left translation of graphs, composition of translations, boundary sequences and the distance bound."""
    s, group, tol = ctx.splitting, ctx.group, ctx.tolerances
    qs = _translations(ctx)
    ps = group.sample(len(qs), ctx.sampler(32), ctx.box)

    ctx.check('translation.identity', 'left translation maps the graph of phi onto the graph of phi_q')
    ctx.check('translation.composition', '(phi_p)_q = phi_{q·p}')
    for index, phi in enumerate(_maps(ctx)):
        domain = ctx.domain(phi, 40 + index, DOMAIN_CAP)
        for q, p in zip(qs, ps):
            _check_translation(ctx, phi, q, domain)
            twice = translate_map(translate_map(phi, p), q)
            once = translate_map(phi, group.multiply(q, p))
            for m in _composition_points(ctx, once):
                if not twice.contains(m):
                    ctx.observe('translation.composition', math.inf, tol.exact)
                    continue
                ctx.observe('translation.composition', group.residual(twice.evaluate(m), once.evaluate(m)),
                            tol.exact)
    ctx.collector.finish('translation.identity')
    ctx.collector.finish('translation.composition')

    check_id = 'translation.distance_bound'
    ctx.check(check_id, 'dist(p, Gamma_phi) <= d(1, pi_H(p)^-1 phi(pi_N(p)))')
    for index, phi in enumerate(ctx.maps):
        domain = ctx.domain(phi, 60 + index, DOMAIN_CAP)
        graph = [graphing_map(phi, n).point for n in domain]
        for p in group.sample(ctx.count(TRANSLATION_CAP), ctx.sampler(61 + index), ctx.box):
            if not phi.contains(s.project_n(p)):
                ctx.collector.skip(check_id)
                continue
            bound, witness = graph_distance_bound(phi, p)
            ctx.observe(check_id, abs(group.distance(p, witness.point) - bound), tol.metric)
            nearest = min([group.distance(p, x) for x in graph] + [group.distance(p, witness.point)])
            ctx.observe(check_id, nearest - bound, tol.sample(bound))
    ctx.collector.finish(check_id)

    if s.axis is None:
        return
    check_id = 'translation.boundary_sequences'
    ctx.check(check_id, 'n·h(f(n) -/+ 1/k) lie at distance 1/k below/above the graph point')
    for index, phi in enumerate(ctx.maps):
        for n in phi.sample_domain(ctx.count(TRANSLATION_CAP), ctx.sampler(70 + index), ctx.box):
            p = graphing_map(phi, n).point
            for k, below, above in boundary_sequences(phi, n, BOUNDARY_KS):
                ctx.observe(check_id, abs(group.distance(below, p) - 1.0 / k), tol.metric)
                ctx.observe(check_id, abs(group.distance(above, p) - 1.0 / k), tol.metric)
                ctx.flag(check_id, classify_point(phi, below, tol.exact) == PointClass.SUBGRAPH)
                ctx.flag(check_id, classify_point(phi, above, tol.exact) == PointClass.SUPERGRAPH)
    ctx.collector.finish(check_id)
