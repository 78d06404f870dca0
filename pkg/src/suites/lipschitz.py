import math
from typing import List, Optional, Sequence, Tuple

from src.cones.cones import ConeFamily, ConeHalf, ConeSpec, cone_contains, cone_sides
from src.error.errors import DegenerateSample, NotConverged, PremiseFailed
from src.error.logger import get_logger
from src.graphs.graphing import PointClass, classify_point, graphing_map
from src.graphs.maps import FunctionMap, IntrinsicMap
from src.groups.core import Element
from src.groups.splitting_constants import estimate_splitting_constants
from src.lipschitz.estimators import (condition_constant, condition_constants, domain_pairs, fssc_constant,
                                      fssc_ratio)
from src.lipschitz.separation import cone_separation_test, halfcone_graph_test, split_separation
from src.lipschitz.stability import (graph_projection_constant, limit_stability_check, metric_vs_intrinsic,
                                     projection_bound)
from src.models import Supremum, json_number
from src.suites.runner import SuiteContext

logger = get_logger(__name__)

BASES = 5
DOMAIN_CAP = 2000
AXIS_CAP = 200
SPLITTING_CAP = 1000
CONE_SAMPLES = 200
PAIR_CAP = 1000
PROJECTION_RADIUS = 2.0
STABILITY_STEPS = 8
# Relative inflation of a sampled L before asserting that nothing beats it
LIPSCHITZ_SLACK = 1e-3

CHECKS = {
    'lipschitz.coherence': 'conditions 1-5 give comparable constants at every base point',
    'lipschitz.separation': 'phi is L-Lipschitz iff p·C(1/L) meets the graph only at p',
    'lipschitz.axis_separation': 'p·X_H(1/((k+1)L)) meets the graph only at p when L >= k',
    'lipschitz.halfcone': 'p·C+(1/L) lies in the supergraph and p·C-(1/L) in the subgraph iff phi is L-Lipschitz',
    'lipschitz.projection_bound': 'pi_H is alpha/(1-alpha)-Lipschitz at 1 on the translated graph',
    'lipschitz.stability': 'a pointwise limit of L-Lipschitz maps is L-Lipschitz',
    'lipschitz.metric_vs_intrinsic': 'with H normal, intrinsic and metric Lipschitz constants differ by at most 1',
}


def _upper(ctx: SuiteContext, lipschitz: float) -> float:
    return lipschitz * (1.0 + LIPSCHITZ_SLACK) + ctx.tolerances.sample(lipschitz)


def _graph_constant(ctx: SuiteContext, phi: IntrinsicMap, bases: Sequence[Element],
                    samples: Sequence[Element]) -> Optional[float]:
    """FSSC constant over the pairs (base, sample); None when every pair is degenerate."""
    try:
        return fssc_constant(phi, [(m, n) for m in bases for n in samples], ctx.tolerances).estimate
    except DegenerateSample:
        return None


def _coherence(ctx: SuiteContext, phi: IntrinsicMap, bases: Sequence[Element], samples: Sequence[Element]) -> None:
    s, tol = ctx.splitting, ctx.tolerances
    check_id = 'lipschitz.coherence'
    largest = {}
    for m in bases:
        try:
            c = {k: v.estimate for k, v in condition_constants(phi, m, samples, (1, 2, 4, 5), tol).items()}
            if s.n_normal:
                c[3] = condition_constant(phi, 3, m, samples, tolerances=tol).estimate
        except DegenerateSample:
            ctx.collector.skip(check_id)
            continue
        for k, v in c.items():
            largest[f"C{k}"] = max(largest.get(f"C{k}", 0.0), v)
        if s.n_normal:
            ctx.observe(check_id, abs(c[1] - c[2]), tol.sample(c[1]))
            ctx.observe(check_id, abs(c[2] - c[3]), tol.sample(c[2]))
        ctx.observe(check_id, c[5] - (1.0 + c[1]), tol.sample(c[1]))
        ctx.observe(check_id, c[1] - (1.0 + c[5]), tol.sample(c[5]))
        ctx.observe(check_id, c[4] - (1.0 + c[1]), tol.sample(c[1]))
    ctx.collector.constant(check_id, phi.name, {k: json_number(v) for k, v in sorted(largest.items())})


def _separation(ctx: SuiteContext, phi: IntrinsicMap, lipschitz: float, bases: Sequence[Element],
                samples: Sequence[Element]) -> None:
    check_id = 'lipschitz.separation'
    upper = _upper(ctx, lipschitz)
    for m in bases:
        ctx.flag(check_id, cone_separation_test(phi, m, upper, samples, tolerances=ctx.tolerances).separated)
        sixth = condition_constant(phi, 6, m, samples, opening=1.0 / upper, tolerances=ctx.tolerances)
        ctx.observe(check_id, sixth.estimate, 0.0)
        if lipschitz <= 0:
            continue
        # Below the sampled constant a witness has to carry a ratio above the opening
        lower = 0.5 * lipschitz
        result = cone_separation_test(phi, m, lower, samples, tolerances=ctx.tolerances)
        if not result.separated:
            num, den = fssc_ratio(phi, graphing_map(phi, m).point, result.witness)
            ctx.observe(check_id, lower * den - num, 0.0)


def _axis_constant(ctx: SuiteContext, points: Sequence[Element]) -> float:
    """sup d(1, pi_N(x)) / dist(1, xH) over the points."""
    sup = Supremum()
    for x in points:
        dist, _ = cone_sides(ctx.splitting, ConeFamily.AXIS_STRICT, x, ctx.search)
        sup.add(ctx.group.norm(ctx.splitting.project_n(x)), dist, x, ctx.tolerances.exact)
    return sup.value


def _axis_separation(ctx: SuiteContext, phi: IntrinsicMap, bases: Sequence[Element],
                     samples: Sequence[Element]) -> None:
    check_id = 'lipschitz.axis_separation'
    group = ctx.group
    samples = samples[:AXIS_CAP]
    lipschitz = _graph_constant(ctx, phi, bases, samples)
    if lipschitz is None or lipschitz <= 0:
        ctx.collector.skip(check_id, len(bases))
        return
    points = []
    for m in bases:
        p_inv = group.inverse(graphing_map(phi, m).point)
        points += [group.multiply(p_inv, graphing_map(phi, n).point) for n in samples]
    k = _axis_constant(ctx, points)
    asserted = lipschitz >= k
    upper = _upper(ctx, lipschitz)
    for m in bases:
        result = cone_separation_test(phi, m, upper, samples, ConeFamily.AXIS_STRICT, k, ctx.tolerances, ctx.search)
        if asserted:
            ctx.flag(check_id, result.separated)
        else:
            ctx.collector.skip(check_id)

    # k read as the constant of pi_N at 1 (C3); reported, never asserted
    c3 = estimate_splitting_constants(ctx.splitting, ctx.box, ctx.count(SPLITTING_CAP), ctx.seed, ctx.tolerances,
                                      ctx.search, exhaustive=ctx.exhaustive, extra=points,
                                      subgroup_distance=False).c3
    separated = sum(cone_separation_test(phi, m, upper, samples, ConeFamily.AXIS_STRICT, c3, ctx.tolerances,
                                         ctx.search).separated for m in bases)
    if separated < len(bases):
        logger.info(f"{phi.name}: axis cones with k = C3 = {c3:.4g} meet the graph at "
                    f"{len(bases) - separated} of {len(bases)} base points")
    ctx.collector.constant(check_id, phi.name, {
        'L': json_number(lipschitz),
        'k': json_number(k),
        'asserted': asserted,
        'C3': json_number(c3),
        'separated_with_C3': separated,
        'printed_constant_holds': separated == len(bases)
    })


def _witness_from_separation(ctx: SuiteContext, phi: IntrinsicMap, m: Element, q: Element,
                             lipschitz: float) -> Tuple[Element, ConeHalf, float]:
    """
    Push a graph point strictly inside p·C(1/L) off the graph along the axis.

    Returns:
        A point of p·C+(1/L) below the graph (or of p·C-(1/L) above it), its
        half and the distance it was pushed
    """
    s, group = ctx.splitting, ctx.group
    axis = s.axis
    x = group.multiply(group.inverse(graphing_map(phi, m).point), q)
    t = axis.parameter(s.project_h(x))
    depth = abs(t) / lipschitz - group.norm(s.project_n(x))
    eps = min(0.5 * abs(t), 0.5 * depth * lipschitz)
    sign = 1.0 if t > 0 else -1.0
    half = ConeHalf.PLUS if sign > 0 else ConeHalf.MINUS
    return group.multiply(q, axis.point(-sign * eps)), half, eps


def _halfcone(ctx: SuiteContext, phi: IntrinsicMap, lipschitz: float, bases: Sequence[Element],
              samples: Sequence[Element], stream: int) -> None:
    s, group, tol = ctx.splitting, ctx.group, ctx.tolerances
    check_id = 'lipschitz.halfcone'
    forbidden = {ConeHalf.PLUS: PointClass.SUBGRAPH, ConeHalf.MINUS: PointClass.SUPERGRAPH}
    openings = [_upper(ctx, lipschitz)] + ([0.5 * lipschitz] if lipschitz > 0 else [])
    outcomes = {}
    for index, value in enumerate(openings):
        result = halfcone_graph_test(phi, value, bases, ctx.count(CONE_SAMPLES), ctx.sampler(stream + index),
                                     ctx.box, tol)
        outcomes[f"{value:.6g}"] = result.to_dict()
        if not result.contained:
            # A point of the half cone on the wrong side puts a graph point beyond the opening
            num, den = fssc_ratio(phi, graphing_map(phi, result.base).point,
                                  graphing_map(phi, s.project_n(result.witness)).point)
            ctx.observe(check_id, value * den - num, 0.0)
        for m in bases:
            separation = split_separation(phi, m, 1.0 / value, samples, tolerances=tol)
            if separation.separated:
                continue
            w, half, eps = _witness_from_separation(ctx, phi, m, separation.witness, value)
            cone = ConeSpec(ConeFamily.SPLIT_LEFT, 1.0 / value, graphing_map(phi, m).point, half)
            inside = cone_contains(s, cone, w, tol)
            ctx.flag(check_id, inside and classify_point(phi, w, 0.5 * eps) == forbidden[half])
    ctx.collector.constant(check_id, phi.name, outcomes)


def _projection(ctx: SuiteContext, phi: IntrinsicMap, bases: Sequence[Element], samples: Sequence[Element]) -> None:
    check_id = 'lipschitz.projection_bound'
    if not ctx.triangle_holds():
        ctx.collector.skip(check_id, len(bases))
        ctx.collector.constant(check_id, 'skipped_reason', 'the distance fails the triangle inequality')
        return
    for m in bases:
        q = graphing_map(phi, m).point
        estimate, alpha = graph_projection_constant(phi, q, PROJECTION_RADIUS, samples, ctx.tolerances)
        if estimate.samples == 0 or alpha >= 1.0:
            ctx.collector.skip(check_id)
            continue
        bound = projection_bound(alpha)
        ctx.observe(check_id, estimate.estimate - bound, ctx.tolerances.sample(bound))


def _shifted(phi: IntrinsicMap, step: float) -> IntrinsicMap:
    """phi followed by a shift of the first H chart coordinate."""
    s = phi.splitting

    def fn(n: Element) -> Element:
        u = list(s.h_to_chart(phi.evaluate(n)))
        u[0] += step
        return s.h_from_chart(u)

    return FunctionMap(s, fn, f"{phi.name}+{step:g}", domain=phi.contains)


def _stability(ctx: SuiteContext, phi: IntrinsicMap, stream: int) -> None:
    check_id = 'lipschitz.stability'
    if ctx.splitting.n_elements() is not None:
        ctx.collector.skip(check_id)
        return
    sequence = [_shifted(phi, 10.0 ** -j) for j in range(STABILITY_STEPS)]
    pairs = domain_pairs(phi, ctx.count(PAIR_CAP), ctx.sampler(stream), ctx.box)
    try:
        report = limit_stability_check(sequence, phi, pairs, tolerances=ctx.tolerances)
    except DegenerateSample:
        ctx.collector.skip(check_id)
        return
    except (PremiseFailed, NotConverged) as e:
        ctx.collector.constant(check_id, phi.name, str(e))
        ctx.flag(check_id, False)
        return
    ctx.collector.constant(check_id, phi.name, report.to_dict())
    ctx.flag(check_id, report.holds)


def _metric_vs_intrinsic(ctx: SuiteContext, phi: IntrinsicMap, stream: int) -> None:
    check_id = 'lipschitz.metric_vs_intrinsic'
    tol = ctx.tolerances
    if not ctx.splitting.h_normal:
        ctx.collector.skip(check_id)
        return
    pairs = domain_pairs(phi, ctx.count(PAIR_CAP), ctx.sampler(stream), ctx.box, ctx.exhaustive)
    try:
        intrinsic, metric = metric_vs_intrinsic(phi, pairs, tol)
    except DegenerateSample:
        ctx.collector.skip(check_id)
        return
    ctx.collector.constant(check_id, phi.name, {'intrinsic': json_number(intrinsic.estimate),
                                                'metric': json_number(metric.estimate)})
    ctx.observe(check_id, metric.estimate - (1.0 + intrinsic.estimate), tol.sample(intrinsic.estimate))
    ctx.observe(check_id, intrinsic.estimate - (1.0 + metric.estimate), tol.sample(metric.estimate))


def _maps_with_domain(ctx: SuiteContext) -> List[Tuple[int, IntrinsicMap, List[Element], List[Element]]]:
    found = []
    for index, phi in enumerate(ctx.maps):
        samples = ctx.domain(phi, 200 + 10 * index, DOMAIN_CAP)
        bases = ctx.domain(phi, 201 + 10 * index, BASES)
        if samples and bases:
            found.append((index, phi, bases, samples))
    return found


def lipschitz_suite(ctx: SuiteContext) -> None:
    """The equivalent characterizations of intrinsic Lipschitz maps, checked against each other."""
    for check_id, anchor in CHECKS.items():
        ctx.check(check_id, anchor)
    for index, phi, bases, samples in _maps_with_domain(ctx):
        stream = 200 + 10 * index
        _coherence(ctx, phi, bases, samples)
        lipschitz = _graph_constant(ctx, phi, bases, samples)
        if lipschitz is None or not math.isfinite(lipschitz):
            ctx.collector.skip('lipschitz.separation', len(bases))
        else:
            _separation(ctx, phi, lipschitz, bases, samples)
            if ctx.splitting.axis is not None:
                _halfcone(ctx, phi, lipschitz, bases, samples, stream + 2)
        _axis_separation(ctx, phi, bases, samples)
        _projection(ctx, phi, bases, samples)
        _stability(ctx, phi, stream + 5)
        _metric_vs_intrinsic(ctx, phi, stream + 6)
    for check_id in CHECKS:
        ctx.collector.finish(check_id)
