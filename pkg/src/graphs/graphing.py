from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from src.config import DEFAULT_TOLERANCES
from src.error.errors import AxisMissing, OutsideDomain
from src.groups.core import Element, OneDimAxis, Splitting
from src.graphs.maps import IntrinsicMap
from src.sampling.halton import Box, HaltonSampler


@dataclass(frozen=True)
class GraphPoint:
    """Phi(n) = n·phi(n) together with its components."""

    base: Element
    value: Element
    point: Element


class PointClass(str, Enum):
    SUPERGRAPH = 'Supergraph'
    SUBGRAPH = 'Subgraph'
    GRAPH = 'Graph'


def graphing_map(phi: IntrinsicMap, n: Element) -> GraphPoint:
    value = phi(n)
    return GraphPoint(n, value, phi.group.multiply(n, value))


def graph_points(phi: IntrinsicMap, count: int, sampler: HaltonSampler, box: Optional[Box] = None,
                 exhaustive: bool = False) -> List[GraphPoint]:
    """Graph points over a sample of the domain, or over all of a finite domain."""
    if exhaustive:
        elements = phi.domain_elements()
        if elements is not None:
            return [graphing_map(phi, n) for n in elements]
    return [graphing_map(phi, n) for n in phi.sample_domain(count, sampler, box)]


def on_graph(phi: IntrinsicMap, p: Element, tol: float = DEFAULT_TOLERANCES.exact) -> bool:
    s = phi.splitting
    n = s.project_n(p)
    if not phi.contains(n):
        return False
    return phi.group.residual(phi.evaluate(n), s.project_h(p)) <= tol


def graph_distance_bound(phi: IntrinsicMap, p: Element) -> Tuple[float, GraphPoint]:
    """
    Upper bound dist(p, Gamma_phi) <= d(1, pi_H(p)^-1 · phi(pi_N(p))).

    Returns:
        The bound and the graph point over pi_N(p), whose distance to p equals it
    """
    s = phi.splitting
    group = phi.group
    witness = graphing_map(phi, s.project_n(p))
    bound = group.norm(group.multiply(group.inverse(s.project_h(p)), witness.value))
    return bound, witness


def _require_axis(splitting: Splitting) -> OneDimAxis:
    axis = splitting.axis
    if axis is None:
        raise AxisMissing(f"{splitting.name} has no one-dimensional axis for H")
    return axis


def axis_value(phi: IntrinsicMap, n: Element) -> float:
    """f(n), where phi(n) = h(f(n)) on the registered axis."""
    return _require_axis(phi.splitting).parameter(phi(n))


def classify_point(phi: IntrinsicMap, p: Element, tol: float = DEFAULT_TOLERANCES.exact) -> PointClass:
    """
    Place p = n·h(t) above, below or on the graph of phi along the axis.

    Raises:
        AxisMissing: H has no registered axis
        OutsideDomain: pi_N(p) is not in the domain
    """
    axis = _require_axis(phi.splitting)
    s = phi.splitting
    n = s.project_n(p)
    if not phi.contains(n):
        raise OutsideDomain(n)
    t = axis.parameter(s.project_h(p))
    f = axis.parameter(phi.evaluate(n))
    if t > f + tol:
        return PointClass.SUPERGRAPH
    if t < f - tol:
        return PointClass.SUBGRAPH
    return PointClass.GRAPH


def boundary_sequences(phi: IntrinsicMap, n: Element, ks: Sequence[int]) -> List[Tuple[int, Element, Element]]:
    """
    Points n·h(f(n) - 1/k) below and n·h(f(n) + 1/k) above the graph point over n.

    Returns:
        (k, p_k, q_k) for each k
    """
    axis = _require_axis(phi.splitting)
    f = axis_value(phi, n)
    group = phi.group
    return [(k, group.multiply(n, axis.point(f - 1.0 / k)), group.multiply(n, axis.point(f + 1.0 / k)))
            for k in ks]
