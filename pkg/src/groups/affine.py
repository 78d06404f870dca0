import math
from typing import Callable, List, Optional, Sequence, Tuple

from src.config import DEFAULT_TOLERANCES
from src.error.errors import InvalidSpec
from src.groups.core import Element, MetricGroup, NormalSide, OneDimAxis, Splitting, Subgroup


def _acosh1p(x: float) -> float:
    """arccosh(1 + x) without cancellation for small x."""
    return math.log1p(x + math.sqrt(x * (x + 2.0)))


class AffineGroup(MetricGroup):
    """
    Orientation-preserving affine maps z -> a z + b of the line, a > 0.

    Acting on the upper half-plane, the hyperbolic distance between the images
    of i is left-invariant.
    """

    def __init__(self):
        super().__init__('affine', {'metric': 'hyperbolic'})

    @property
    def identity(self) -> Element:
        return (0.0, 1.0)

    def multiply(self, g: Element, p: Element) -> Element:
        b, a = g
        b2, a2 = p
        return (b + a * b2, a * a2)

    def inverse(self, g: Element) -> Element:
        b, a = g
        return (-b / a, 1.0 / a)

    def distance(self, g: Element, p: Element) -> float:
        b1, a1 = g
        b2, a2 = p
        return _acosh1p(((b1 - b2) ** 2 + (a1 - a2) ** 2) / (2.0 * a1 * a2))

    def norm(self, g: Element) -> float:
        return self.distance(self.identity, g)

    def from_chart(self, u: Sequence[float]) -> Element:
        return (float(u[0]), math.exp(float(u[1])))

    def to_chart(self, g: Element) -> Tuple[float, ...]:
        return (g[0], math.log(g[1]))


class AffineSplitting(Splitting):
    """
    Translations and dilations of the affine group.

    By default N = translations (normal) and H = dilations. With swap=True the
    roles are exchanged: N = dilations and the normal translations are the codomain.
    """

    def __init__(self, swap: bool = False):
        super().__init__(AffineGroup(), 'affine:swap' if swap else 'affine')
        self.swap = swap
        self.normal_side = NormalSide.H_NORMAL if swap else NormalSide.N_NORMAL

    def project_n(self, g: Element) -> Element:
        b, a = g
        return (0.0, a) if self.swap else (b, 1.0)

    def project_h(self, g: Element) -> Element:
        b, a = g
        return (b / a, 1.0) if self.swap else (0.0, a)

    def _is_translation(self, g: Element, tol: float) -> bool:
        return abs(g[1] - 1.0) <= tol

    def _is_dilation(self, g: Element, tol: float) -> bool:
        return abs(g[0]) <= tol

    def in_n(self, g: Element, tol: float = DEFAULT_TOLERANCES.exact) -> bool:
        return self._is_dilation(g, tol) if self.swap else self._is_translation(g, tol)

    def in_h(self, g: Element, tol: float = DEFAULT_TOLERANCES.exact) -> bool:
        return self._is_translation(g, tol) if self.swap else self._is_dilation(g, tol)

    @property
    def n_chart_dim(self) -> int:
        return 1

    @property
    def h_chart_dim(self) -> int:
        return 1

    @property
    def n_axes(self) -> Tuple[int, ...]:
        return (1,) if self.swap else (0,)

    def _translation(self, b: float) -> Element:
        return (float(b), 1.0)

    def _dilation(self, s: float) -> Element:
        return (0.0, math.exp(float(s)))

    def n_from_chart(self, u: Sequence[float]) -> Element:
        return self._dilation(u[0]) if self.swap else self._translation(u[0])

    def n_to_chart(self, n: Element) -> Tuple[float, ...]:
        return (math.log(n[1]),) if self.swap else (n[0],)

    def h_from_chart(self, u: Sequence[float]) -> Element:
        return self._translation(u[0]) if self.swap else self._dilation(u[0])

    def h_to_chart(self, h: Element) -> Tuple[float, ...]:
        return (h[0],) if self.swap else (math.log(h[1]),)

    def h_subgroup(self) -> Subgroup:
        if self.swap:
            # d(1, (t,1)) = arccosh(1 + t^2/2) <= 2r  iff  |t| <= 2 sinh(r)
            return Subgroup('translations', point=self._translation,
                            window=lambda r: 2.0 * math.sinh(min(r, 20.0)))
        return Subgroup('dilations', point=self._dilation, window=lambda r: 2.0 * r)

    @property
    def axis(self) -> Optional[OneDimAxis]:
        if self.swap:
            return None
        # d(1, (0, e^t)) = |t|
        return OneDimAxis(point=self._dilation, parameter=lambda h: math.log(h[1]), generator='D')

    def homomorphism(self, params: Sequence[float]) -> Tuple[Callable[[Element], Element], Optional[List[Element]]]:
        if len(params) != 1:
            raise InvalidSpec(f"hom on {self.name} takes one coefficient")
        c = float(params[0])
        if self.swap:
            return (lambda n: (c * math.log(n[1]), 1.0)), None
        return (lambda n: (0.0, math.exp(c * n[0]))), None
