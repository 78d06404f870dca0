import math

from src.error.errors import DegenerateSample, NotASubgroup, PremiseFailed
from src.lipschitz.estimators import domain_pairs
from src.subgroups.identities import (identity_residuals, power_bound_check, power_premise_constant,
                                      subgroup_closure_check, subgroup_examples, uniqueness_residual)
from src.suites.runner import SuiteContext

PAIR_CAP = 2000

CHECKS = {
    'subgroups.closure': 'the graph of each shipped example is closed under products and inverses',
    'subgroups.identities': 'identities of subgroup graphs hold on the normal side',
    'subgroups.power_bound': 'd(1, phi(n)) <= C d(1, n^k) makes phi intrinsically Ck-Lipschitz',
    'subgroups.uniqueness': 'pi_N(h·pi_N(h^-1 n)) = n',
}


def subgroups_suite(ctx: SuiteContext) -> None:
    """Subgroup graphs: closure, identities, the power bound and the uniqueness residual."""
    s, group, tol = ctx.splitting, ctx.group, ctx.tolerances
    for check_id, anchor in CHECKS.items():
        ctx.check(check_id, anchor)
    powers = (1,) if group.finite else (1, 2)
    for index, phi in enumerate(subgroup_examples(s)):
        pairs = domain_pairs(phi, ctx.count(PAIR_CAP), ctx.sampler(400 + 10 * index), ctx.box, ctx.exhaustive)
        closure = subgroup_closure_check(phi, pairs, tol)
        ctx.collector.constant('subgroups.closure', phi.name, closure.to_dict())
        ctx.observe('subgroups.closure', closure.residual, tol.exact)

        try:
            report = identity_residuals(phi, pairs, tol)
        except NotASubgroup as e:
            ctx.collector.constant('subgroups.identities', phi.name, str(e))
            ctx.flag('subgroups.identities', False)
        else:
            ctx.collector.constant('subgroups.identities', phi.name, report.to_dict())
            ctx.observe('subgroups.identities', report.max_residual(), tol.exact)

        for k in powers:
            constant = power_premise_constant(phi, k, pairs, tol)
            if not math.isfinite(constant):
                ctx.collector.skip('subgroups.power_bound')
                continue
            try:
                ok, estimate = power_bound_check(phi, constant, k, pairs, tol)
            except DegenerateSample:
                ctx.collector.skip('subgroups.power_bound')
                continue
            except PremiseFailed as e:
                ctx.collector.constant('subgroups.power_bound', f"{phi.name}^{k}", str(e))
                ctx.flag('subgroups.power_bound', False)
                continue
            ctx.collector.constant('subgroups.power_bound', f"{phi.name}^{k}", {'C': constant, 'FSSC': estimate})
            ctx.flag('subgroups.power_bound', ok)

    ns = s.sample_n(ctx.count(), ctx.sampler(480), ctx.box)
    hs = s.sample_h(ctx.count(), ctx.sampler(481), ctx.box)
    ctx.observe('subgroups.uniqueness', uniqueness_residual(s, list(zip(ns, hs))), tol.exact)
    for check_id in CHECKS:
        ctx.collector.finish(check_id)
