import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from src.config import DEFAULT_TOLERANCES
from src.error.errors import InvalidSpec
from src.groups.core import Element, MetricGroup, NormalSide, OneDimAxis, Splitting, Subgroup


class AbelianPlane(MetricGroup):
    """R^m x R^k with vector addition and the Euclidean distance."""

    def __init__(self, m: int, k: int):
        if m < 1 or k < 1:
            raise InvalidSpec(f"abelian plane needs m, k >= 1 (got {m}, {k})")
        super().__init__('abelian', {'m': m, 'k': k})
        self.m = m
        self.k = k
        self._identity = (0.0,) * (m + k)

    @property
    def identity(self) -> Element:
        return self._identity

    def multiply(self, g: Element, p: Element) -> Element:
        return tuple(a + b for a, b in zip(g, p))

    def inverse(self, g: Element) -> Element:
        return tuple(-a for a in g)

    def norm(self, g: Element) -> float:
        return math.hypot(*g)

    def power(self, g: Element, k: int) -> Element:
        return tuple(k * a for a in g)


class AbelianSplitting(Splitting):
    """First m coordinates as N, last k as H; both factors are normal."""

    normal_side = NormalSide.BOTH

    def __init__(self, m: int = 1, k: int = 1):
        super().__init__(AbelianPlane(m, k), f"abelian:{m},{k}")
        self.m = m
        self.k = k

    def project_n(self, g: Element) -> Element:
        return tuple(g[:self.m]) + (0.0,) * self.k

    def project_h(self, g: Element) -> Element:
        return (0.0,) * self.m + tuple(g[self.m:])

    def in_n(self, g: Element, tol: float = DEFAULT_TOLERANCES.exact) -> bool:
        return all(abs(c) <= tol for c in g[self.m:])

    def in_h(self, g: Element, tol: float = DEFAULT_TOLERANCES.exact) -> bool:
        return all(abs(c) <= tol for c in g[:self.m])

    @property
    def n_chart_dim(self) -> int:
        return self.m

    @property
    def h_chart_dim(self) -> int:
        return self.k

    @property
    def n_axes(self) -> Tuple[int, ...]:
        return tuple(range(self.m))

    def n_from_chart(self, u: Sequence[float]) -> Element:
        return tuple(float(c) for c in u) + (0.0,) * self.k

    def n_to_chart(self, n: Element) -> Tuple[float, ...]:
        return tuple(n[:self.m])

    def h_from_chart(self, u: Sequence[float]) -> Element:
        return (0.0,) * self.m + tuple(float(c) for c in u)

    def h_to_chart(self, h: Element) -> Tuple[float, ...]:
        return tuple(h[self.m:])

    def h_subgroup(self) -> Subgroup:
        # The nearest point of a flat H is the orthogonal projection
        return Subgroup('H', closed_form=lambda g: math.hypot(*g[:self.m]))

    @property
    def axis(self) -> Optional[OneDimAxis]:
        if self.k != 1:
            return None
        return OneDimAxis(point=lambda t: (0.0,) * self.m + (float(t),),
                          parameter=lambda h: h[self.m],
                          generator=f"e{self.m + 1}")

    def homomorphism(self, params: Sequence[float]) -> Tuple[Callable[[Element], Element], Optional[List[Element]]]:
        """Linear map given as a k x m matrix in row-major order, or a scalar when m == k."""
        if len(params) == 1 and self.m == self.k:
            matrix = params[0] * np.eye(self.k)
        elif len(params) == self.k * self.m:
            matrix = np.array(params, dtype=float).reshape(self.k, self.m)
        else:
            raise InvalidSpec(f"hom on {self.name} needs {self.k * self.m} entries")

        def apply(n: Element) -> Element:
            return self.h_from_chart(matrix @ np.array(n[:self.m], dtype=float))

        return apply, None
