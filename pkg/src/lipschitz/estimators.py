import itertools
import math
from typing import Dict, List, Optional, Sequence, Tuple

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.error.errors import DegenerateSample, InvalidArgument
from src.error.logger import get_logger
from src.graphs.graphing import graphing_map
from src.graphs.maps import IntrinsicMap
from src.groups.core import Element, conjugate
from src.lipschitz.separation import split_separation
from src.models import LipschitzEstimate, Supremum
from src.sampling.halton import Box, HaltonSampler

logger = get_logger(__name__)

CONDITIONS = {
    1: 'd(1, phi_{p^-1}(n)) <= L d(1, n)',
    2: 'd(phi(m), phi(n)) <= L d(1, pi_N(p^-1 q))',
    3: 'd(phi(pi_N(p)), phi(pi_N(p n))) <= L d(1, n)',
    4: 'd(1, q) <= L~ d(1, pi_N(q)) on the graph of phi_{p^-1}',
    5: 'd(p, q) <= L- d(1, pi_N(p^-1 q))',
    6: 'p·C(1/L^) meets the graph only at p',
}


def domain_pairs(phi: IntrinsicMap, count: int, sampler: HaltonSampler, box: Optional[Box] = None,
                 exhaustive: bool = False) -> List[Tuple[Element, Element]]:
    """Pairs of domain points: every ordered pair of a finite domain, or two sampled streams."""
    if exhaustive:
        elements = phi.domain_elements()
        if elements is not None:
            return [(a, b) for a, b in itertools.permutations(elements, 2)]
    first = phi.sample_domain(count, sampler.child(11), box)
    second = phi.sample_domain(count, sampler.child(12), box)
    return list(zip(first, second))


def domain_triples(phi: IntrinsicMap, count: int, sampler: HaltonSampler, box: Optional[Box] = None,
                   exhaustive: bool = False) -> List[Tuple[Element, Element, Element]]:
    if exhaustive:
        elements = phi.domain_elements()
        if elements is not None:
            return list(itertools.product(elements, repeat=3))
    streams = [phi.sample_domain(count, sampler.child(21 + i), box) for i in range(3)]
    return list(zip(*streams))


def _finish(sup: Supremum, condition: str, description: str, context: str) -> LipschitzEstimate:
    if sup.empty:
        raise DegenerateSample(f"{context}: every sampled denominator vanished ({sup.skipped} skipped)")
    logger.debug(f"{context}: {condition} = {sup.value:.6g} over {sup.count} samples, {sup.skipped} skipped")
    return LipschitzEstimate(condition, sup.value, sup.count, sup.skipped, description, sup.witness)


def fssc_ratio(phi: IntrinsicMap, x: Element, y: Element) -> Tuple[float, float]:
    """(d(1, pi_H(x^-1 y)), d(1, pi_N(x^-1 y))) for graph points x, y."""
    s = phi.splitting
    group = phi.group
    z = group.multiply(group.inverse(x), y)
    return group.norm(s.project_h(z)), group.norm(s.project_n(z))


def fssc_constant(phi: IntrinsicMap, pairs: Sequence[Tuple[Element, Element]],
                  tolerances: Tolerances = DEFAULT_TOLERANCES) -> LipschitzEstimate:
    """
    Sampled FSSC constant: sup over graph pairs of d(1, pi_H(x^-1 x')) / d(1, pi_N(x^-1 x')).

    Args:
        phi: The map
        pairs: Pairs (n, n') of domain points
        tolerances: Degenerate-denominator threshold

    Returns:
        LipschitzEstimate with condition 'FSSC'
    """
    sup = Supremum()
    for n, m in pairs:
        num, den = fssc_ratio(phi, graphing_map(phi, n).point, graphing_map(phi, m).point)
        sup.add(num, den, (n, m), tolerances.exact)
    return _finish(sup, 'FSSC', f"{len(pairs)} graph pairs", phi.name)


def _condition_ratio(phi: IntrinsicMap, condition: int, m: Element, p: Element, n_prime: Element) -> Tuple[float, float]:
    """Numerator and denominator of one condition at base point m for the graph point over n_prime."""
    s = phi.splitting
    group = phi.group
    phi_m = phi.evaluate(m)
    q = graphing_map(phi, n_prime).point
    relative = group.multiply(group.inverse(p), q)
    n = s.project_n(relative)
    if condition == 1:
        # phi_{p^-1}(n) = pi_H(p^-1 q)
        return group.norm(s.project_h(relative)), group.norm(n)
    if condition == 2:
        return group.distance(phi_m, phi.evaluate(n_prime)), group.norm(n)
    if condition == 3:
        # n1 with pi_N(p n1) = n_prime
        if s.n_normal:
            n1 = conjugate(group, group.inverse(phi_m), group.multiply(group.inverse(m), n_prime))
        else:
            n1 = group.multiply(group.inverse(m), n_prime)
        target = s.project_n(group.multiply(p, n1))
        if not phi.contains(target):
            return 0.0, 0.0
        return group.distance(phi.evaluate(s.project_n(p)), phi.evaluate(target)), group.norm(n1)
    if condition in (4, 5):
        return group.norm(relative), group.norm(n)
    raise InvalidArgument(f"unknown condition {condition}")


def condition_constants(phi: IntrinsicMap, m: Element, samples: Sequence[Element],
                        conditions: Sequence[int] = (1, 2, 3, 4, 5),
                        tolerances: Tolerances = DEFAULT_TOLERANCES) -> Dict[int, LipschitzEstimate]:
    """Sampled constants of several ratio conditions at the base point m over one sample of the domain."""
    p = graphing_map(phi, m).point
    sups = {c: Supremum() for c in conditions}
    for n_prime in samples:
        for c in conditions:
            num, den = _condition_ratio(phi, c, m, p, n_prime)
            sups[c].add(num, den, n_prime, tolerances.exact)
    description = f"{len(samples)} domain points, base {m}"
    return {c: _finish(sups[c], f"C{c}", description, f"{phi.name} at {m}") for c in conditions}


def condition_constant(phi: IntrinsicMap, condition: int, m: Element, samples: Sequence[Element],
                       opening: Optional[float] = None, include_vertex: bool = False,
                       tolerances: Tolerances = DEFAULT_TOLERANCES) -> LipschitzEstimate:
    """
    Estimate one of the six equivalent conditions at the base point m.

    Conditions 1-5 give sampled suprema. Condition 6 needs an opening and
    returns 0 when the cone p·C(opening) meets the sampled graph only at p,
    +inf otherwise.

    Raises:
        DegenerateSample: Every denominator vanished
        OutsideDomain: m is not in the domain
    """
    if condition == 6:
        if opening is None:
            raise InvalidArgument("condition 6 needs a cone opening")
        result = split_separation(phi, m, opening, samples, include_vertex, tolerances)
        return LipschitzEstimate('C6', 0.0 if result.separated else math.inf, result.checked, result.skipped,
                                 f"opening {opening:g}, base {m}", result.witness)
    if condition not in CONDITIONS:
        raise InvalidArgument(f"unknown condition {condition}")
    return condition_constants(phi, m, samples, (condition,), tolerances)[condition]
