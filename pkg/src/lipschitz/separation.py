import math
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Sequence

from src.cones.cones import ConeFamily, ConeHalf, ConeSpec, cone_sides, sample_cone
from src.config import DEFAULT_TOLERANCES, SearchSettings, Tolerances
from src.error.errors import AxisMissing, InvalidArgument, OutsideDomain
from src.error.logger import get_logger
from src.graphs.graphing import PointClass, classify_point, graphing_map
from src.graphs.maps import IntrinsicMap
from src.groups.core import Element
from src.sampling.halton import Box, HaltonSampler

logger = get_logger(__name__)


@dataclass
class SeparationResult:
    """Whether a cone at a graph point avoids the rest of the sampled graph."""

    separated: bool
    opening: float
    checked: int
    skipped: int = 0
    witness: Optional[Element] = None
    depth: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'separated': self.separated,
            'opening': self.opening,
            'checked': self.checked,
            'skipped': self.skipped,
            'witness': list(self.witness) if self.witness is not None else None,
            'depth': self.depth
        }


def _graph_candidates(phi: IntrinsicMap, samples: Sequence[Element]) -> List[Element]:
    return [graphing_map(phi, n).point for n in samples]


def split_separation(phi: IntrinsicMap, m: Element, opening: float, samples: Sequence[Element],
                     include_vertex: bool = False,
                     tolerances: Tolerances = DEFAULT_TOLERANCES) -> SeparationResult:
    """
    Test p·C(opening) against the graph points over the sampled domain, p = Phi(m).

    A graph point is a witness when it lies strictly inside the cone, with
    alpha·d(1, pi_H) - d(1, pi_N) above tau_exact at p^-1 q. The vertex itself
    is excluded unless include_vertex is set, in which case it always counts.
    """
    s = phi.splitting
    group = phi.group
    p = graphing_map(phi, m).point
    p_inv = group.inverse(p)
    result = SeparationResult(True, opening, 0)
    if include_vertex:
        result.separated, result.witness, result.depth = False, p, math.inf
        return result
    for q in _graph_candidates(phi, samples):
        x = group.multiply(p_inv, q)
        if group.norm(x) <= tolerances.exact:
            result.skipped += 1
            continue
        result.checked += 1
        lhs, rhs = cone_sides(s, ConeFamily.SPLIT_LEFT, x)
        depth = opening * rhs - lhs
        if depth > tolerances.exact and depth > result.depth:
            result.separated, result.witness, result.depth = False, q, depth
    return result


def axis_separation(phi: IntrinsicMap, m: Element, opening: float, samples: Sequence[Element],
                    tolerances: Tolerances = DEFAULT_TOLERANCES,
                    search: Optional[SearchSettings] = None) -> SeparationResult:
    """Same test for the X cone p·X_H(opening) measured by dist(1, gH) with a strict inequality."""
    s = phi.splitting
    group = phi.group
    p = graphing_map(phi, m).point
    p_inv = group.inverse(p)
    result = SeparationResult(True, opening, 0)
    for q in _graph_candidates(phi, samples):
        x = group.multiply(p_inv, q)
        if group.norm(x) <= tolerances.exact:
            result.skipped += 1
            continue
        result.checked += 1
        lhs, rhs = cone_sides(s, ConeFamily.AXIS_STRICT, x, search)
        depth = opening * rhs - lhs
        if depth > tolerances.inf and depth > result.depth:
            result.separated, result.witness, result.depth = False, q, depth
    return result


def cone_separation_test(phi: IntrinsicMap, m: Element, lipschitz: float, samples: Sequence[Element],
                         family: ConeFamily = ConeFamily.SPLIT_LEFT, splitting_constant: Optional[float] = None,
                         tolerances: Tolerances = DEFAULT_TOLERANCES,
                         search: Optional[SearchSettings] = None) -> SeparationResult:
    """
    Look for graph points other than Phi(m) inside the cone at Phi(m).

    The split family uses opening 1/L; the axis family uses 1/((k+1)L) with k
    the splitting constant of pi_N at 1.

    Args:
        phi: The map
        m: Base point in the domain
        lipschitz: The constant L
        samples: Domain points whose graph points are tested
        family: SplitLeft or AxisStrict
        splitting_constant: k, required for the axis family

    Returns:
        SeparationResult with the deepest witness, if any
    """
    if lipschitz <= 0:
        raise InvalidArgument(f"Lipschitz constant must be positive (got {lipschitz})")
    if family == ConeFamily.SPLIT_LEFT:
        return split_separation(phi, m, 1.0 / lipschitz, samples, tolerances=tolerances)
    if family in (ConeFamily.AXIS, ConeFamily.AXIS_STRICT):
        if splitting_constant is None:
            raise InvalidArgument("the axis family needs the splitting constant k")
        opening = 1.0 / ((splitting_constant + 1.0) * lipschitz)
        return axis_separation(phi, m, opening, samples, tolerances, search)
    raise InvalidArgument(f"separation is not defined for {family.value} cones")


@dataclass
class HalfConeResult:
    """Half-cone containment in the closed super/subgraph at sampled base points."""

    contained: bool
    checked: int
    skipped: int = 0
    witness: Optional[Element] = None
    base: Optional[Element] = None
    half: Optional[ConeHalf] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'contained': self.contained,
            'checked': self.checked,
            'skipped': self.skipped,
            'witness': list(self.witness) if self.witness is not None else None,
            'base': list(self.base) if self.base is not None else None,
            'half': self.half.value if self.half is not None else None
        }


def halfcone_graph_test(phi: IntrinsicMap, lipschitz: float, bases: Sequence[Element], cone_samples: int,
                        sampler: HaltonSampler, box: Optional[Box] = None,
                        tolerances: Tolerances = DEFAULT_TOLERANCES) -> HalfConeResult:
    """
    Check Phi(m)·C+(1/L) within the closed supergraph and Phi(m)·C-(1/L) within the closed subgraph.

    Cone points are rejection-sampled around each base point; points over
    which phi is undefined are skipped. A Subgraph point in the plus cone or a
    Supergraph point in the minus cone is a witness.

    Raises:
        AxisMissing: H has no registered one-dimensional axis
    """
    s = phi.splitting
    if s.axis is None:
        raise AxisMissing(f"{s.name} has no one-dimensional axis")
    if lipschitz <= 0:
        raise InvalidArgument(f"Lipschitz constant must be positive (got {lipschitz})")
    # Sampled cone points satisfy the cone inequality without slack
    sharp = replace(tolerances, exact=0.0)
    result = HalfConeResult(True, 0)
    forbidden = {ConeHalf.PLUS: PointClass.SUBGRAPH, ConeHalf.MINUS: PointClass.SUPERGRAPH}
    for index, m in enumerate(bases):
        p = graphing_map(phi, m).point
        for half, bad in forbidden.items():
            cone = ConeSpec(ConeFamily.SPLIT_LEFT, 1.0 / lipschitz, p, half)
            stream = sampler.child(100 + 2 * index + (half == ConeHalf.MINUS))
            for g in sample_cone(s, cone, cone_samples, stream, box, tolerances=sharp):
                try:
                    label = classify_point(phi, g, tolerances.exact)
                except OutsideDomain:
                    result.skipped += 1
                    continue
                result.checked += 1
                if label == bad and result.contained:
                    result.contained, result.witness, result.base, result.half = False, g, m, half
    if not result.contained:
        logger.debug(f"{phi.name}: half-cone witness {result.witness} at base {result.base}")
    return result
