from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from src.config import DEFAULT_TOLERANCES, SearchSettings, Tolerances, default_search
from src.error.errors import DecompositionFailure, InvalidArgument, InvalidSpec, SearchBudgetExceeded
from src.error.logger import get_logger
from src.sampling.halton import Box, HaltonSampler

logger = get_logger(__name__)

# Coordinates for Lie instances, (index, flip) pairs for dihedral ones
Element = Tuple


class NormalSide(str, Enum):
    N_NORMAL = 'N_normal'
    H_NORMAL = 'H_normal'
    BOTH = 'both'


class MetricGroup(ABC):
    """A group with a left-invariant distance."""

    finite = False
    # False when the distance is only known to be a quasi-metric
    triangle_certified = True

    def __init__(self, name: str, params: Optional[Dict[str, Any]] = None):
        self.name = name
        self.params = params or {}

    @property
    @abstractmethod
    def identity(self) -> Element:
        ...

    @abstractmethod
    def multiply(self, g: Element, p: Element) -> Element:
        ...

    @abstractmethod
    def inverse(self, g: Element) -> Element:
        ...

    @abstractmethod
    def norm(self, g: Element) -> float:
        """d(1, g)."""

    def distance(self, g: Element, p: Element) -> float:
        return self.norm(self.multiply(self.inverse(g), p))

    def product(self, *elements: Element) -> Element:
        result = self.identity
        for g in elements:
            result = self.multiply(result, g)
        return result

    def power(self, g: Element, k: int) -> Element:
        if k < 0:
            return self.power(self.inverse(g), -k)
        result = self.identity
        for _ in range(k):
            result = self.multiply(result, g)
        return result

    def residual(self, a: Element, b: Element) -> float:
        """Size of the disagreement between two elements that should coincide."""
        return float(max((abs(x - y) for x, y in zip(a, b)), default=0.0))

    def equal(self, a: Element, b: Element, tol: float = 0.0) -> bool:
        return self.residual(a, b) <= tol

    # Charts are used only for sampling and table maps
    @property
    def chart_dim(self) -> int:
        return len(self.identity)

    def from_chart(self, u: Sequence[float]) -> Element:
        return tuple(float(x) for x in u)

    def to_chart(self, g: Element) -> Tuple[float, ...]:
        return tuple(float(x) for x in g)

    def elements(self) -> Optional[List[Element]]:
        return None

    def default_box(self) -> Box:
        return Box.cube(self.chart_dim)

    def sample(self, count: int, sampler: HaltonSampler, box: Optional[Box] = None) -> List[Element]:
        elements = self.elements()
        if elements is not None:
            return [elements[i] for i in sampler.indices(count, len(elements))[:, 0]]
        box = (box or self.default_box()).resize(self.chart_dim)
        return [self.from_chart(u) for u in sampler.box(count, box)]

    def descriptor(self) -> Dict[str, Any]:
        return {'name': self.name, 'params': dict(self.params)}


@dataclass(frozen=True)
class Subgroup:
    """
    A subgroup searched by dist_to_subgroup.

    Either a finite list of elements, a one-parameter family t -> point(t) whose
    search window for an element of norm r is window(r), or a closed form.
    """

    name: str
    elements: Optional[Tuple[Element, ...]] = None
    point: Optional[Callable[[float], Element]] = None
    window: Optional[Callable[[float], float]] = None
    closed_form: Optional[Callable[[Element], float]] = None


@dataclass(frozen=True)
class OneDimAxis:
    """Geodesic homomorphic parametrization t -> h(t) of a one-dimensional H."""

    point: Callable[[float], Element]
    parameter: Callable[[Element], float]
    generator: str = 'V'


class Splitting(ABC):
    """A metric group G = N·H with unique factorisation g = n·h."""

    normal_side = NormalSide.N_NORMAL

    def __init__(self, group: MetricGroup, name: str):
        self.group = group
        self.name = name

    @property
    def n_normal(self) -> bool:
        return self.normal_side in (NormalSide.N_NORMAL, NormalSide.BOTH)

    @property
    def h_normal(self) -> bool:
        return self.normal_side in (NormalSide.H_NORMAL, NormalSide.BOTH)

    @abstractmethod
    def project_n(self, g: Element) -> Element:
        ...

    @abstractmethod
    def project_h(self, g: Element) -> Element:
        ...

    @abstractmethod
    def in_n(self, g: Element, tol: float = DEFAULT_TOLERANCES.exact) -> bool:
        ...

    @abstractmethod
    def in_h(self, g: Element, tol: float = DEFAULT_TOLERANCES.exact) -> bool:
        ...

    # Chart coordinates of the factors
    @property
    @abstractmethod
    def n_chart_dim(self) -> int:
        ...

    @property
    @abstractmethod
    def h_chart_dim(self) -> int:
        ...

    @property
    @abstractmethod
    def n_axes(self) -> Tuple[int, ...]:
        """Axes of the group chart that carry the N chart."""
        ...

    @property
    def h_axes(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.group.chart_dim) if i not in self.n_axes)

    @abstractmethod
    def n_from_chart(self, u: Sequence[float]) -> Element:
        ...

    @abstractmethod
    def n_to_chart(self, n: Element) -> Tuple[float, ...]:
        ...

    @abstractmethod
    def h_from_chart(self, u: Sequence[float]) -> Element:
        ...

    @abstractmethod
    def h_to_chart(self, h: Element) -> Tuple[float, ...]:
        ...

    @abstractmethod
    def h_subgroup(self) -> Subgroup:
        ...

    @property
    def axis(self) -> Optional[OneDimAxis]:
        return None

    def n_elements(self) -> Optional[List[Element]]:
        return None

    def h_elements(self) -> Optional[List[Element]]:
        return None

    def homomorphism(self, params: Sequence[float]) -> Tuple[Callable[[Element], Element], Optional[List[Element]]]:
        """
        Builtin homomorphism N -> H.

        Returns:
            The map and, for partial maps on finite groups, the domain elements
        """
        raise InvalidSpec(f"no builtin homomorphism on {self.name}")

    def linear(self, slope: float) -> Callable[[Element], Element]:
        fn, _ = self.homomorphism([slope])
        return fn

    def h_from_values(self, values: Sequence[float]) -> Element:
        """An H element given either as full coordinates or as H chart values."""
        if len(values) == len(self.group.identity) and self.in_h(tuple(values)):
            return tuple(type(c)(v) for c, v in zip(self.group.identity, values))
        if len(values) == self.h_chart_dim:
            return self.h_from_chart(values)
        raise InvalidSpec(f"{list(values)} does not describe an element of H in {self.name}")

    def right_decompose(self, g: Element) -> Tuple[Element, Element]:
        """Factor g = l·m with l in H and m in N."""
        n, h = self.project_n(g), self.project_h(g)
        grp = self.group
        if self.n_normal:
            return h, grp.product(grp.inverse(h), n, h)
        return grp.product(n, h, grp.inverse(n)), n

    def default_n_box(self) -> Box:
        return Box.cube(self.n_chart_dim)

    def factor_box(self, box: Optional[Box], axes: Tuple[int, ...]) -> Optional[Box]:
        """A group-chart box projected onto the chart of one factor; factor boxes pass through."""
        if box is None or box.dim == len(axes):
            return box
        if box.dim == self.group.chart_dim:
            return box.project(axes)
        return box.resize(len(axes))

    def sample_n(self, count: int, sampler: HaltonSampler, box: Optional[Box] = None) -> List[Element]:
        elements = self.n_elements()
        if elements is not None:
            return [elements[i] for i in sampler.indices(count, len(elements))[:, 0]]
        box = self.factor_box(box, self.n_axes) or self.default_n_box()
        return [self.n_from_chart(u) for u in sampler.box(count, box)]

    def sample_h(self, count: int, sampler: HaltonSampler, box: Optional[Box] = None) -> List[Element]:
        elements = self.h_elements()
        if elements is not None:
            return [elements[i] for i in sampler.indices(count, len(elements))[:, 0]]
        box = self.factor_box(box, self.h_axes) or Box.cube(self.h_chart_dim)
        return [self.h_from_chart(u) for u in sampler.box(count, box)]

    def descriptor(self) -> Dict[str, Any]:
        return {
            'splitting': self.name,
            'group': self.group.descriptor(),
            'normal_side': self.normal_side.value
        }


def conjugate(group: MetricGroup, g: Element, n: Element) -> Element:
    """C_g(n) = g·n·g^-1."""
    return group.product(g, n, group.inverse(g))


def decompose(splitting: Splitting, g: Element,
              tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[Element, Element]:
    """
    Split g into its N and H components.

    Args:
        splitting: The splitting of the parent group
        g: The element to split
        tolerances: Recomposition slack

    Returns:
        (n, h) with n·h = g
    """
    n, h = splitting.project_n(g), splitting.project_h(g)
    residual = splitting.group.residual(splitting.group.multiply(n, h), g)
    if residual > tolerances.exact:
        raise DecompositionFailure(
            f"{splitting.name}: n·h differs from {g} by {residual:.3e}"
        )
    return n, h


def dist_to_subgroup(group: MetricGroup, sub: Subgroup, g: Element,
                     search: Optional[SearchSettings] = None) -> float:
    """
    dist(g, H) = inf { d(1, g·q) : q in H }.

    Finite subgroups are searched exhaustively. One-parameter subgroups are
    scanned on a uniform grid and the best grid cell is refined by a bounded
    Brent search over its two neighbouring cells.
    """
    if sub.closed_form is not None:
        return float(sub.closed_form(g))
    if sub.elements is not None:
        return float(min(group.norm(group.multiply(g, q)) for q in sub.elements))
    if sub.point is None:
        raise InvalidArgument(f"subgroup {sub.name} cannot be searched")

    search = search or default_search()
    radius = group.norm(g)
    if radius == 0.0:
        return 0.0
    half_width = (sub.window(radius) if sub.window else 2.0 * radius) + search.margin

    def objective(t: float) -> float:
        return group.norm(group.multiply(g, sub.point(t)))

    grid = np.linspace(-half_width, half_width, search.grid_points)
    values = np.array([objective(t) for t in grid])
    best = int(np.argmin(values))
    best_value = float(values[best])
    if best == 0 or best == len(grid) - 1:
        return best_value

    lower, upper = float(grid[best - 1]), float(grid[best + 1])
    result = minimize_scalar(objective, bounds=(lower, upper), method='bounded',
                             options={'xatol': search.xtol, 'maxiter': search.max_iter})
    if not result.success:
        raise SearchBudgetExceeded(
            f"bounded search on {sub.name} did not converge in {search.max_iter} iterations"
        )
    return float(min(best_value, result.fun))
