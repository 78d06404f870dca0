from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.error.errors import InvalidArgument, NotConverged, PremiseFailed, WrongNormalSide
from src.error.logger import get_logger
from src.graphs.graphing import graphing_map
from src.graphs.maps import IntrinsicMap, translate_map
from src.groups.core import Element
from src.lipschitz.estimators import fssc_constant, fssc_ratio
from src.models import LipschitzEstimate, Supremum, json_number

logger = get_logger(__name__)


def graph_projection_constant(phi: IntrinsicMap, q: Element, radius: float, samples: Sequence[Element],
                              tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[LipschitzEstimate, float]:
    """
    Sampled Lipschitz constant at 1 of pi_H on the translated graph q^-1·Gamma_phi inside B(1, r).

    Args:
        phi: The map
        q: A point of Gamma_phi
        radius: Radius r of the ball around 1
        samples: Domain points of phi; their graph points are translated by q^-1

    Returns:
        The estimate sup d(1, pi_H(p)) / d(1, p) and the intrinsic constant
        alpha of phi at q over the same points, which bounds it by alpha/(1-alpha)
    """
    s = phi.splitting
    group = phi.group
    translated = translate_map(phi, group.inverse(q))
    q_inv = group.inverse(q)
    projection, alpha = Supremum(), Supremum()
    for n in samples:
        p = group.multiply(q_inv, graphing_map(phi, n).point)
        if group.norm(p) > radius:
            continue
        if not translated.contains(s.project_n(p)):
            continue
        projection.add(group.norm(s.project_h(p)), group.norm(p), n, tolerances.exact)
        alpha.add(*fssc_ratio(phi, q, graphing_map(phi, n).point), n, tolerances.exact)
    estimate = LipschitzEstimate('projection', projection.value, projection.count, projection.skipped,
                                 f"{projection.count} graph points in B(1, {radius:g})", projection.witness)
    return estimate, alpha.value


def projection_bound(alpha: float) -> float:
    """alpha / (1 - alpha)."""
    if not 0 <= alpha < 1:
        raise InvalidArgument(f"projection bound needs 0 <= alpha < 1 (got {alpha})")
    return alpha / (1.0 - alpha)


@dataclass
class StabilityReport:
    """Outcome of the pointwise-limit check."""

    holds: bool
    limit_constant: float
    lipschitz: float
    epsilon: float
    bound: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            'holds': self.holds,
            'limit_constant': json_number(self.limit_constant),
            'L': json_number(self.lipschitz),
            'epsilon': self.epsilon,
            'bound': json_number(self.bound)
        }


def limit_stability_check(maps: Sequence[IntrinsicMap], limit: IntrinsicMap,
                          pairs: Sequence[Tuple[Element, Element]], lipschitz: Optional[float] = None,
                          stabilization: Optional[float] = None,
                          tolerances: Tolerances = DEFAULT_TOLERANCES) -> StabilityReport:
    """
    Check that the pointwise limit of intrinsically L-Lipschitz maps is L-Lipschitz on the sample.

    Args:
        maps: The sequence phi_h, last element closest to the limit
        limit: The limit map
        pairs: Domain pairs the constants are sampled on
        lipschitz: L; defaults to the largest sampled constant of the sequence
        stabilization: Largest allowed d(phi_h(n), phi(n)) at the last h

    Returns:
        StabilityReport; the limit passes when its constant is at most
        L + tau_sample + (2 + 2L)·epsilon

    Raises:
        PremiseFailed: Some phi_h exceeds L on the sample
        NotConverged: The last map is farther than the stabilization tolerance from the limit
    """
    if not maps:
        raise InvalidArgument("limit check needs at least one map")
    estimates = [fssc_constant(phi, pairs, tolerances).estimate for phi in maps]
    if lipschitz is None:
        lipschitz = max(estimates)
    for index, estimate in enumerate(estimates):
        if estimate > lipschitz + tolerances.sample(lipschitz):
            raise PremiseFailed(f"map #{index} has sampled constant {estimate:.6g} > L = {lipschitz:g}",
                                witness=maps[index].name)

    group = limit.group
    points = {n for pair in pairs for n in pair}
    last = maps[-1]
    epsilon = max((group.distance(last(n), limit(n)) for n in points), default=0.0)
    stabilization = tolerances.sample(lipschitz) if stabilization is None else stabilization
    if epsilon > stabilization:
        raise NotConverged(f"last map differs from the limit by {epsilon:.3e} > {stabilization:.3e}")

    limit_constant = fssc_constant(limit, pairs, tolerances).estimate
    bound = lipschitz + tolerances.sample(lipschitz) + (2.0 + 2.0 * lipschitz) * epsilon
    logger.debug(f"limit constant {limit_constant:.6g} against bound {bound:.6g}")
    return StabilityReport(limit_constant <= bound, limit_constant, lipschitz, epsilon, bound)


def metric_vs_intrinsic(phi: IntrinsicMap, pairs: Sequence[Tuple[Element, Element]],
                        tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[LipschitzEstimate, LipschitzEstimate]:
    """
    Intrinsic constant of phi and metric Lipschitz constant of Phi: (N, d) -> (G, d).

    Raises:
        WrongNormalSide: The codomain H is not normal
    """
    if not phi.splitting.h_normal:
        raise WrongNormalSide(f"{phi.splitting.name}: H is not normal")
    group = phi.group
    intrinsic = fssc_constant(phi, pairs, tolerances)
    metric = Supremum()
    for n, m in pairs:
        metric.add(group.distance(graphing_map(phi, n).point, graphing_map(phi, m).point),
                   group.distance(n, m), (n, m), tolerances.exact)
    return intrinsic, LipschitzEstimate('metric', metric.value, metric.count, metric.skipped,
                                        f"{len(pairs)} domain pairs", metric.witness)
