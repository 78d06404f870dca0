from typing import List

from src.cones.cones import (ConeFamily, ConeHalf, ConeSpec, cone_sides, half_shift_margin, power_margin,
                             sample_cone)
from src.groups.core import Element
from src.groups.splitting_constants import comparison_constant, estimate_splitting_constants
from src.sampling.halton import Box
from src.suites.runner import SuiteContext

CHAIN_OPENINGS = (0.0, 0.5, 1.0, 3.0)
SEARCH_CAP = 10000
SPLITTING_CAP = 1000
POWERS = (2, 3)
POWER_OPENINGS = (0.5, 1.0, 3.0)
NEAR_H_SCALE = 0.1


def _near_h(ctx: SuiteContext, count: int, stream: int) -> List[Element]:
    """Points n·h with n small, so that narrow cones get sampled too."""
    s, group = ctx.splitting, ctx.group
    base = ctx.box or group.default_box()
    small = Box(tuple((NEAR_H_SCALE * lo, NEAR_H_SCALE * hi) for lo, hi in base.bounds))
    ns = s.sample_n(count, ctx.sampler(stream), small)
    hs = s.sample_h(count, ctx.sampler(stream + 1), base)
    return [group.multiply(n, h) for n, h in zip(ns, hs)]


def _pool(ctx: SuiteContext, count: int, stream: int) -> List[Element]:
    group = ctx.group
    elements = group.elements()
    if ctx.exhaustive and elements is not None:
        return elements
    half = max(1, count // 2)
    points = group.sample(half, ctx.sampler(stream), ctx.box) + _near_h(ctx, half, stream + 1)
    if group.elements() is None:
        points += ctx.splitting.sample_h(max(1, count // 10), ctx.sampler(stream + 3), ctx.box)
    return points


def _monotonicity(ctx: SuiteContext) -> None:
    s, tol = ctx.splitting, ctx.tolerances
    check_id = 'cones.monotonicity'
    ctx.check(check_id, 'C(a1) is contained in C(a2) for a1 < a2')
    openings = ctx.sampler(81).unit(ctx.count(), 2) * 4.0
    for family, cap in ((ConeFamily.SPLIT_LEFT, None), (ConeFamily.SPLIT_RIGHT, None),
                        (ConeFamily.AXIS, SEARCH_CAP)):
        points = _pool(ctx, ctx.count(cap), 82)
        for g, (a, b) in zip(points, openings):
            a1, a2 = min(a, b), max(a, b)
            lhs, rhs = cone_sides(s, family, g, ctx.search)
            slack = tol.inf if family == ConeFamily.AXIS else tol.exact
            if lhs <= a1 * rhs + slack:
                ctx.observe(check_id, lhs - a2 * rhs, slack)
    ctx.collector.finish(check_id)


def _chain(ctx: SuiteContext) -> None:
    s, group, tol = ctx.splitting, ctx.group, ctx.tolerances
    check_id = 'cones.chain'
    ctx.check(check_id, 'left cone C(a) within right cone C(a+2) within left cone C(a+4)')
    if not s.n_normal:
        ctx.collector.constant(check_id, 'skipped_reason', 'H is the only normal factor')
        ctx.collector.finish(check_id)
        return
    points = _pool(ctx, ctx.count(), 84)
    for g in points:
        left = cone_sides(s, ConeFamily.SPLIT_LEFT, g)
        right = cone_sides(s, ConeFamily.SPLIT_RIGHT, g)
        for alpha in CHAIN_OPENINGS:
            if left[0] <= alpha * left[1]:
                ctx.observe(check_id, right[0] - (alpha + 2.0) * right[1], tol.exact * (1.0 + right[1]))
            if right[0] <= (alpha + 2.0) * right[1]:
                ctx.observe(check_id, left[0] - (alpha + 4.0) * left[1], tol.exact * (1.0 + left[1]))
    ctx.collector.finish(check_id)

    check_id = 'cones.inverse_symmetry'
    ctx.check(check_id, 'g is in the left cone C(a) iff g^-1 is in the right cone C(a)')
    for g in points:
        left = cone_sides(s, ConeFamily.SPLIT_LEFT, g)
        right = cone_sides(s, ConeFamily.SPLIT_RIGHT, group.inverse(g))
        ctx.observe(check_id, max(abs(left[0] - right[0]), abs(left[1] - right[1])), tol.exact)
    ctx.collector.finish(check_id)


def _comparison(ctx: SuiteContext) -> None:
    s, group, tol = ctx.splitting, ctx.group, ctx.tolerances
    check_id = 'cones.comparison'
    ctx.check(check_id, 'locally X_H(a1) is inside C(b1) and C(b2) is inside X_H(b2·C) when pi_H is C-Lipschitz')
    points = _pool(ctx, ctx.count(SEARCH_CAP), 86)
    constants = estimate_splitting_constants(s, ctx.box, ctx.count(SPLITTING_CAP), ctx.seed, tol, ctx.search,
                                             exhaustive=ctx.exhaustive, extra=points)
    c = comparison_constant(constants)
    ctx.collector.constant(check_id, 'C', c)
    alphas = [0.1 / (c + 1.0), 0.5 / (c + 1.0)]
    betas = [0.5 / c, 0.9 / c] if c > 0 else []
    for g in points:
        d_g = group.norm(g)
        if d_g <= tol.exact:
            ctx.collector.skip(check_id)
            continue
        d_n, d_h = cone_sides(s, ConeFamily.SPLIT_LEFT, g)
        dist, _ = cone_sides(s, ConeFamily.AXIS_STRICT, g, ctx.search)
        for alpha in alphas:
            if dist <= alpha * d_g + tol.inf:
                beta = alpha * (c + 1.0) / (1.0 - alpha * (c + 1.0))
                ctx.observe(check_id, d_n - beta * d_h, (c + 2.0) * (1.0 + beta) * tol.inf)
        for beta in betas:
            if d_n <= beta * d_h:
                ctx.observe(check_id, dist - beta * c * d_g, 2.0 * tol.inf)
    ctx.collector.finish(check_id)


def _powers(ctx: SuiteContext) -> None:
    s, tol = ctx.splitting, ctx.tolerances
    check_id = 'cones.power'
    ctx.check(check_id, 'g in C(a) puts g^k in C(k^2 + k(a-1))')
    if not s.n_normal:
        ctx.collector.constant(check_id, 'skipped_reason', 'pi_H(g^k) = pi_H(g)^k needs N normal')
        ctx.collector.finish(check_id)
        return
    for g in _pool(ctx, ctx.count(SEARCH_CAP), 88):
        for alpha in POWER_OPENINGS:
            for k in POWERS:
                margin = power_margin(s, alpha, g, k)
                if margin is not None:
                    ctx.observe(check_id, margin, k * tol.metric)
    ctx.collector.finish(check_id)


def _half_shift(ctx: SuiteContext) -> None:
    s, tol = ctx.splitting, ctx.tolerances
    check_id = 'cones.half_shift'
    ctx.check(check_id, 'p·h(t)·C+(a) is inside p·C+(a+2) for t > 0, mirrored for C-')
    if s.axis is None or not s.n_normal:
        ctx.collector.constant(check_id, 'skipped_reason', 'needs a one-dimensional axis and N normal')
        ctx.collector.finish(check_id)
        return
    count = ctx.count(SEARCH_CAP)
    shifts = ctx.sampler(90).unit(count, 1)[:, 0] * 2.0
    for half, sign in ((ConeHalf.PLUS, 1.0), (ConeHalf.MINUS, -1.0)):
        for alpha in POWER_OPENINGS:
            cone = ConeSpec(ConeFamily.SPLIT_LEFT, alpha, None, half)
            points = sample_cone(s, cone, count, ctx.sampler(91 + (half == ConeHalf.MINUS)), ctx.box)
            for x, t in zip(points, shifts):
                margin = half_shift_margin(s, alpha, sign * float(t), x, half)
                if margin is None:
                    ctx.collector.skip(check_id)
                    continue
                ctx.observe(check_id, margin, tol.metric)
    ctx.collector.finish(check_id)


def cones_suite(ctx: SuiteContext) -> None:
    """Inclusions between cones of every family."""
    _monotonicity(ctx)
    _chain(ctx)
    _comparison(ctx)
    _powers(ctx)
    _half_shift(ctx)
