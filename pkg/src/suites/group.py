import math

from src.groups.splitting_constants import estimate_splitting_constants
from src.groups.word_metric import word_metric_distance
from src.groups.zoo import verify_metric_axioms
from src.suites.runner import SuiteContext

SPLITTING_CAP = 2000


def group_suite(ctx: SuiteContext) -> None:
    """Group laws, projections and the splitting constants of one instance."""
    s, group, tol = ctx.splitting, ctx.group, ctx.tolerances
    count = ctx.count()
    elements = group.elements() if ctx.exhaustive else None
    if elements is not None:
        firsts = [g for g in elements for _ in elements]
        seconds = [p for _ in elements for p in elements]
        thirds = list(reversed(seconds))
    else:
        firsts = group.sample(count, ctx.sampler(1), ctx.box)
        seconds = group.sample(count, ctx.sampler(2), ctx.box)
        thirds = group.sample(count, ctx.sampler(3), ctx.box)

    ctx.check('group.left_invariance', 'the distance is invariant under left translation')
    ctx.check('group.decompose', 'every element factors as n·h and recomposes')
    ctx.check('group.right_decompose', 'every element factors as l·m with l in H and m in N')
    for g, q, p in zip(firsts, seconds, thirds):
        ctx.observe('group.left_invariance',
                    abs(group.distance(group.multiply(p, g), group.multiply(p, q)) - group.distance(g, q)),
                    tol.metric)
        n, h = s.project_n(g), s.project_h(g)
        ok = s.in_n(n) and s.in_h(h)
        ctx.observe('group.decompose', group.residual(group.multiply(n, h), g) if ok else math.inf, tol.exact)
        ell, m = s.right_decompose(g)
        ok = s.in_h(ell) and s.in_n(m)
        ctx.observe('group.right_decompose', group.residual(group.multiply(ell, m), g) if ok else math.inf,
                    tol.exact)
    for check_id in ('group.left_invariance', 'group.decompose', 'group.right_decompose'):
        ctx.collector.finish(check_id)

    if s.n_normal:
        ctx.check('group.projection_homomorphism', 'with N normal, pi_H is a homomorphism')
        for g, q in zip(firsts, seconds):
            lhs = s.project_h(group.multiply(g, q))
            rhs = group.multiply(s.project_h(g), s.project_h(q))
            ctx.observe('group.projection_homomorphism', group.residual(lhs, rhs), tol.exact)
        ctx.collector.finish('group.projection_homomorphism')

    check_id = 'group.splitting_constants'
    ctx.check(check_id, 'the splitting is locally Lipschitz; C3 <= C2 and C4 <= C2 on one sample')
    constants = estimate_splitting_constants(s, ctx.box, ctx.count(SPLITTING_CAP), ctx.seed, tol, ctx.search,
                                             exhaustive=ctx.exhaustive)
    for key, value in constants.to_dict().items():
        ctx.collector.constant(check_id, key, value)
    ctx.flag(check_id, all(math.isfinite(c) for c in constants.as_tuple()))
    ctx.observe(check_id, constants.c3 - constants.c2, 0.0)
    ctx.observe(check_id, constants.c4 - constants.c2, 0.0)
    ctx.collector.finish(check_id)


def zoo_suite(ctx: SuiteContext) -> None:
    """Metric axioms of the instance; the word metric on finite instances."""
    s, group, tol = ctx.splitting, ctx.group, ctx.tolerances
    report = verify_metric_axioms(s, ctx.count(), ctx.seed, ctx.box, tol)

    check_id = 'zoo.metric_axioms'
    ctx.check(check_id, 'zero diagonal, symmetry and left invariance of the distance')
    for key, value in report.to_dict().items():
        ctx.collector.constant(check_id, key, value)
    ctx.observe(check_id, report.max_diagonal, tol.exact)
    ctx.observe(check_id, report.max_asymmetry, tol.metric)
    ctx.observe(check_id, report.max_left_invariance_residual, tol.metric)
    ctx.collector.finish(check_id)

    check_id = 'zoo.triangle'
    ctx.check(check_id, 'triangle inequality; a gauge that fails it is labelled quasi-metric')
    ctx.collector.constant(check_id, 'label', report.label)
    ctx.collector.constant(check_id, 'triangle_violations', report.triangle_violations)
    ctx.collector.constant(check_id, 'asserted', group.triangle_certified)
    if group.triangle_certified:
        ctx.observe(check_id, report.worst_triangle_excess, tol.metric)
    else:
        ctx.collector.skip(check_id, report.samples)
    ctx.collector.finish(check_id)

    check_id = 'zoo.inverse_symmetry'
    ctx.check(check_id, 'd(1, g) = d(1, g^-1)')
    for g in group.sample(ctx.count(), ctx.sampler(4), ctx.box):
        ctx.observe(check_id, abs(group.norm(g) - group.norm(group.inverse(g))), tol.exact)
    ctx.collector.finish(check_id)

    table = getattr(group, 'table', None)
    if table is not None:
        check_id = 'zoo.word_metric'
        ctx.check(check_id, 'the word metric satisfies the metric axioms exactly')
        elements = group.elements()
        ctx.collector.constant(check_id, 'diameter', table.diameter())
        for g in elements:
            for p in elements:
                d_gp = word_metric_distance(table, group, g, p)
                ctx.observe(check_id, abs(d_gp - word_metric_distance(table, group, p, g)), 0.0)
                ctx.observe(check_id, max(d_gp - word_metric_distance(table, group, g, q)
                                          - word_metric_distance(table, group, q, p) for q in elements), 0.0)
        ctx.collector.finish(check_id)
