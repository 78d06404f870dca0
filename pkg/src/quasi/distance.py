import math
from typing import List, Optional, Sequence, Tuple

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.error.errors import DegenerateSample, WrongNormalSide
from src.error.logger import get_logger
from src.graphs.graphing import graphing_map
from src.graphs.maps import IntrinsicMap
from src.groups.core import Element
from src.models import LipschitzEstimate, QuasiDistanceReport, Supremum

logger = get_logger(__name__)


def quasi_distance(phi: IntrinsicMap, n1: Element, n2: Element) -> float:
    """
    d_phi(n1, n2) = (d(1, pi_N(q1^-1 q2)) + d(1, pi_N(q2^-1 q1))) / 2 with q_i = Phi(n_i).

    Raises:
        OutsideDomain: n1 or n2 is not in the domain
    """
    group = phi.group
    s = phi.splitting
    q1 = graphing_map(phi, n1).point
    q2 = graphing_map(phi, n2).point
    forward = group.norm(s.project_n(group.multiply(group.inverse(q1), q2)))
    backward = group.norm(s.project_n(group.multiply(group.inverse(q2), q1)))
    return 0.5 * (forward + backward)


def relative_elements(phi: IntrinsicMap, pairs: Sequence[Tuple[Element, Element]]) -> List[Element]:
    """q1^-1 q2 and q2^-1 q1 for every pair; the points the splitting constants must cover."""
    group = phi.group
    elements = []
    for n1, n2 in pairs:
        q1, q2 = graphing_map(phi, n1).point, graphing_map(phi, n2).point
        elements.append(group.multiply(group.inverse(q1), q2))
        elements.append(group.multiply(group.inverse(q2), q1))
    return elements


def quasi_triangle_constant(phi: IntrinsicMap, triples: Sequence[Tuple[Element, Element, Element]],
                            tolerances: Tolerances = DEFAULT_TOLERANCES) -> LipschitzEstimate:
    """Sampled sup of d_phi(n1, n2) / (d_phi(n1, n3) + d_phi(n3, n2))."""
    sup = Supremum()
    for n1, n2, n3 in triples:
        sup.add(quasi_distance(phi, n1, n2), quasi_distance(phi, n1, n3) + quasi_distance(phi, n3, n2),
                (n1, n2, n3), tolerances.exact)
    if sup.empty:
        raise DegenerateSample(f"{phi.name}: every sampled triple is degenerate")
    return LipschitzEstimate('quasi_triangle', sup.value, sup.count, sup.skipped,
                             f"{len(triples)} triples", sup.witness)


def graph_equivalence_constants(phi: IntrinsicMap, pairs: Sequence[Tuple[Element, Element]],
                                tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[float, float]:
    """
    Sampled inf and sup of d(q1, q2) / d_phi(n1, n2) over pairs with n1 != n2.

    Raises:
        DegenerateSample: No pair has a positive d_phi
    """
    group = phi.group
    low, high = math.inf, 0.0
    used = 0
    for n1, n2 in pairs:
        d_phi = quasi_distance(phi, n1, n2)
        if d_phi < tolerances.exact:
            continue
        ratio = group.distance(graphing_map(phi, n1).point, graphing_map(phi, n2).point) / d_phi
        low, high = min(low, ratio), max(high, ratio)
        used += 1
    if not used:
        raise DegenerateSample(f"{phi.name}: every sampled pair has d_phi = 0")
    return low, high


def graph_map_constant(phi: IntrinsicMap, pairs: Sequence[Tuple[Element, Element]],
                       tolerances: Tolerances = DEFAULT_TOLERANCES) -> LipschitzEstimate:
    """Lipschitz constant of Phi from (E, d_phi) to (G, d) on the sample."""
    group = phi.group
    sup = Supremum()
    for n1, n2 in pairs:
        sup.add(group.distance(graphing_map(phi, n1).point, graphing_map(phi, n2).point),
                quasi_distance(phi, n1, n2), (n1, n2), tolerances.exact)
    return LipschitzEstimate('graph_map', sup.value, sup.count, sup.skipped, f"{len(pairs)} pairs", sup.witness)


def map_metric_constant(phi: IntrinsicMap, pairs: Sequence[Tuple[Element, Element]],
                        tolerances: Tolerances = DEFAULT_TOLERANCES) -> LipschitzEstimate:
    """Lipschitz constant of phi from (E, d_phi) to (H, d) on the sample; at most 2L."""
    group = phi.group
    sup = Supremum()
    for n1, n2 in pairs:
        sup.add(group.distance(phi(n1), phi(n2)), quasi_distance(phi, n1, n2), (n1, n2), tolerances.exact)
    return LipschitzEstimate('map_metric', sup.value, sup.count, sup.skipped, f"{len(pairs)} pairs", sup.witness)


def normal_case_identity(phi: IntrinsicMap, pairs: Sequence[Tuple[Element, Element]]) -> float:
    """
    max |d_phi(m, k) - d(m, k)| over the pairs.

    Raises:
        WrongNormalSide: H is not normal
    """
    if not phi.splitting.h_normal:
        raise WrongNormalSide(f"{phi.splitting.name}: d_phi = d needs a normal codomain")
    group = phi.group
    return max((abs(quasi_distance(phi, m, k) - group.distance(m, k)) for m, k in pairs), default=0.0)


def quasi_distance_report(phi: IntrinsicMap, triples: Sequence[Tuple[Element, Element, Element]],
                          pairs: Sequence[Tuple[Element, Element]], splitting_constant: float,
                          lipschitz: float, sample_box: str = '',
                          tolerances: Tolerances = DEFAULT_TOLERANCES) -> QuasiDistanceReport:
    """
    Quasi-triangle and equivalence constants with the constants C and L they are compared to.

    The printed pair (2/C, L + 1) is evaluated and reported, never asserted.
    """
    triangle = quasi_triangle_constant(phi, triples, tolerances).estimate
    c_low, c_high = graph_equivalence_constants(phi, pairs, tolerances)
    printed_low = 2.0 / splitting_constant if splitting_constant > 0 else math.inf
    printed = (c_low >= printed_low - tolerances.sample(printed_low)
               and c_high <= lipschitz + 1.0 + tolerances.sample(lipschitz + 1.0))
    if not printed:
        logger.info(f"{phi.name}: printed equivalence constants (2/C, L+1) fail on the sample "
                    f"(c_low={c_low:.6g}, c_high={c_high:.6g}, C={splitting_constant:.6g}, L={lipschitz:.6g})")
    return QuasiDistanceReport(
        map_name=phi.name,
        sample_box=sample_box,
        quasi_triangle=triangle,
        c_low=c_low,
        c_high=c_high,
        splitting_constant=splitting_constant,
        lipschitz_constant=lipschitz,
        printed_constants_hold=printed
    )
