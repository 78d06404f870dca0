import csv
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from src.config import DEFAULT_TOLERANCES, SearchSettings, Tolerances
from src.error.errors import AxisMissing, InvalidArgument
from src.error.logger import get_logger
from src.groups.core import Element, Splitting, dist_to_subgroup
from src.sampling.halton import Box, HaltonSampler

logger = get_logger(__name__)


class ConeFamily(str, Enum):
    AXIS = 'Axis'
    AXIS_STRICT = 'AxisStrict'
    SPLIT_LEFT = 'SplitLeft'
    SPLIT_RIGHT = 'SplitRight'


class ConeHalf(str, Enum):
    FULL = 'Full'
    PLUS = 'Plus'
    MINUS = 'Minus'


@dataclass(frozen=True)
class ConeSpec:
    """
    Cone with a family, an opening alpha >= 0 and a vertex p.

    Membership of g is decided for p^-1 g in the cone with vertex 1.
    """

    family: ConeFamily
    opening: float
    vertex: Optional[Element] = None
    half: ConeHalf = ConeHalf.FULL

    def __post_init__(self):
        if not self.opening >= 0:
            raise InvalidArgument(f"cone opening must be >= 0 (got {self.opening})")


def _relative(splitting: Splitting, vertex: Optional[Element], g: Element) -> Element:
    group = splitting.group
    if vertex is None:
        return g
    return group.multiply(group.inverse(vertex), g)


def in_half(splitting: Splitting, half: ConeHalf, x: Element, tol: float = DEFAULT_TOLERANCES.exact) -> bool:
    """x in the closed halfspace S+ (axis parameter of pi_H(x) >= 0) or S- (<= 0)."""
    if half == ConeHalf.FULL:
        return True
    axis = splitting.axis
    if axis is None:
        raise AxisMissing(f"{splitting.name} has no one-dimensional axis; half cones are undefined")
    t = axis.parameter(splitting.project_h(x))
    return t >= -tol if half == ConeHalf.PLUS else t <= tol


def cone_sides(splitting: Splitting, family: ConeFamily, x: Element,
               search: Optional[SearchSettings] = None) -> Tuple[float, float]:
    """
    The two sides of a cone inequality at x (vertex 1): lhs <= alpha * rhs.

    Axis measures inf d(1, x^-1 q) over q in H, AxisStrict inf d(1, x q);
    both against d(1, x). The split families compare the N and H components
    of the left (n·h) or right (l·m) factorisation.
    """
    group = splitting.group
    if family == ConeFamily.SPLIT_LEFT:
        return group.norm(splitting.project_n(x)), group.norm(splitting.project_h(x))
    if family == ConeFamily.SPLIT_RIGHT:
        ell, m = splitting.right_decompose(x)
        return group.norm(m), group.norm(ell)
    sub = splitting.h_subgroup()
    if family == ConeFamily.AXIS:
        return dist_to_subgroup(group, sub, group.inverse(x), search), group.norm(x)
    return dist_to_subgroup(group, sub, x, search), group.norm(x)


def _slack(family: ConeFamily, tolerances: Tolerances) -> float:
    if family in (ConeFamily.AXIS, ConeFamily.AXIS_STRICT):
        return tolerances.inf
    return tolerances.exact


def cone_contains(splitting: Splitting, cone: ConeSpec, g: Element,
                  tolerances: Tolerances = DEFAULT_TOLERANCES,
                  search: Optional[SearchSettings] = None) -> bool:
    """
    Whether g lies in the cone.

    Raises:
        AxisMissing: Half cone on a splitting without an axis
    """
    x = _relative(splitting, cone.vertex, g)
    if not in_half(splitting, cone.half, x, tolerances.exact):
        return False
    lhs, rhs = cone_sides(splitting, cone.family, x, search)
    slack = _slack(cone.family, tolerances)
    if cone.family == ConeFamily.AXIS_STRICT:
        return lhs - slack < cone.opening * rhs
    return lhs <= cone.opening * rhs + slack


def minimal_opening(splitting: Splitting, family: ConeFamily, g: Element, vertex: Optional[Element] = None,
                    half: ConeHalf = ConeHalf.FULL, tolerances: Tolerances = DEFAULT_TOLERANCES,
                    search: Optional[SearchSettings] = None) -> float:
    """
    Smallest alpha whose cone contains g.

    Returns:
        lhs / rhs; 0 when lhs vanishes, +inf when only rhs vanishes or g is
        outside the requested halfspace
    """
    x = _relative(splitting, vertex, g)
    if not in_half(splitting, half, x, tolerances.exact):
        return math.inf
    lhs, rhs = cone_sides(splitting, family, x, search)
    if lhs <= _slack(family, tolerances):
        return 0.0
    if rhs <= tolerances.exact:
        return math.inf
    return lhs / rhs


def power_cone_bound(alpha: float, k: int) -> float:
    """Opening k^2 + k(alpha - 1) of a cone containing g^k whenever g is in C(alpha)."""
    if alpha < 0:
        raise InvalidArgument(f"alpha must be >= 0 (got {alpha})")
    if k < 2:
        raise InvalidArgument(f"power must be >= 2 (got {k})")
    return k * k + k * (alpha - 1.0)


def power_margin(splitting: Splitting, alpha: float, g: Element, k: int) -> Optional[float]:
    """
    d(1, pi_N(g^k)) - bound * d(1, pi_H(g^k)) for g in C(alpha).

    Returns:
        None when g is not in the split cone of opening alpha
    """
    group = splitting.group
    lhs, rhs = cone_sides(splitting, ConeFamily.SPLIT_LEFT, g)
    if lhs > alpha * rhs + DEFAULT_TOLERANCES.exact:
        return None
    lhs_k, rhs_k = cone_sides(splitting, ConeFamily.SPLIT_LEFT, group.power(g, k))
    return lhs_k - power_cone_bound(alpha, k) * rhs_k


def half_shift_margin(splitting: Splitting, alpha: float, t: float, x: Element,
                      half: ConeHalf = ConeHalf.PLUS) -> Optional[float]:
    """
    For x in the half cone C+(alpha) (C- for half=Minus) and h = h(t) with t on
    the same side, the margin of h·x against the half cone of opening alpha + 2.

    Membership of p·h·x in p·h·C+(alpha) is membership of x in C+(alpha), so the
    vertex plays no role.

    Returns:
        None when x is not in the starting half cone
    """
    axis = splitting.axis
    if axis is None:
        raise AxisMissing(f"{splitting.name} has no one-dimensional axis")
    if not in_half(splitting, half, x):
        return None
    lhs, rhs = cone_sides(splitting, ConeFamily.SPLIT_LEFT, x)
    if lhs > alpha * rhs + DEFAULT_TOLERANCES.exact:
        return None
    y = splitting.group.multiply(axis.point(t), x)
    if not in_half(splitting, half, y):
        return math.inf
    lhs_y, rhs_y = cone_sides(splitting, ConeFamily.SPLIT_LEFT, y)
    return lhs_y - (alpha + 2.0) * rhs_y


def sample_cone(splitting: Splitting, cone: ConeSpec, count: int, sampler: HaltonSampler,
                box: Optional[Box] = None, max_rounds: int = 20,
                tolerances: Tolerances = DEFAULT_TOLERANCES) -> List[Element]:
    """
    Rejection-sample points of a cone.

    Candidates are drawn in a chart box around the identity, filtered by the
    vertex-1 cone and translated by the vertex.
    """
    group = splitting.group
    at_identity = ConeSpec(cone.family, cone.opening, None, cone.half)
    found: List[Element] = []
    for round_no in range(max_rounds):
        candidates = group.sample(count, sampler.child(round_no), box)
        found.extend(x for x in candidates if cone_contains(splitting, at_identity, x, tolerances))
        if len(found) >= count:
            break
    if cone.vertex is not None:
        found = [group.multiply(cone.vertex, x) for x in found]
    return found[:count]


SWEEP_FAMILIES = (ConeFamily.AXIS, ConeFamily.AXIS_STRICT, ConeFamily.SPLIT_LEFT, ConeFamily.SPLIT_RIGHT)


def export_cone_sweep(splitting: Splitting, points: Sequence[Element], path: str,
                      vertex: Optional[Element] = None,
                      search: Optional[SearchSettings] = None) -> int:
    """
    Write one CSV row per point: its coordinates and the minimal opening of every family.

    Returns:
        Number of rows written
    """
    coords = [f"g{i}" for i in range(len(splitting.group.identity))]
    halves = [ConeHalf.PLUS, ConeHalf.MINUS] if splitting.axis is not None else []
    header = coords + [f.value for f in SWEEP_FAMILIES] + [f"SplitLeft{h.value}" for h in halves]
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for g in points:
            row = list(g)
            row += [minimal_opening(splitting, family, g, vertex, search=search) for family in SWEEP_FAMILIES]
            row += [minimal_opening(splitting, ConeFamily.SPLIT_LEFT, g, vertex, half) for half in halves]
            writer.writerow(row)
    logger.info(f"Wrote {len(points)} cone-sweep rows to {path}")
    return len(points)
