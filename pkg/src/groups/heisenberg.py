from typing import Callable, List, Optional, Sequence, Tuple

from src.config import DEFAULT_TOLERANCES
from src.error.errors import InvalidSpec
from src.groups.core import Element, MetricGroup, NormalSide, OneDimAxis, Splitting, Subgroup


class HeisenbergGroup(MetricGroup):
    """
    First Heisenberg group in exponential coordinates.

    (x,y,t)(x',y',t') = (x+x', y+y', t+t'+(xy'-yx')/2), with the gauge
    ||(x,y,t)|| = ((x^2+y^2)^2 + t^2)^(1/4) and d(g,p) = ||g^-1 p||.
    """

    triangle_certified = False

    def __init__(self):
        super().__init__('heisenberg', {'gauge': '((x^2+y^2)^2+t^2)^(1/4)'})

    @property
    def identity(self) -> Element:
        return (0.0, 0.0, 0.0)

    def multiply(self, g: Element, p: Element) -> Element:
        x, y, t = g
        x2, y2, t2 = p
        return (x + x2, y + y2, t + t2 + 0.5 * (x * y2 - y * x2))

    def inverse(self, g: Element) -> Element:
        return (-g[0], -g[1], -g[2])

    def norm(self, g: Element) -> float:
        x, y, t = g
        r2 = x * x + y * y
        return (r2 * r2 + t * t) ** 0.25

    def power(self, g: Element, k: int) -> Element:
        # g lies on the one-parameter subgroup s -> (sx, sy, st)
        return (k * g[0], k * g[1], k * g[2])


class HeisenbergSplitting(Splitting):
    """N = {(0,y,t)} (normal), H = {(x,0,0)}."""

    normal_side = NormalSide.N_NORMAL

    def __init__(self):
        super().__init__(HeisenbergGroup(), 'heisenberg')

    def project_n(self, g: Element) -> Element:
        x, y, t = g
        return (0.0, y, t + 0.5 * x * y)

    def project_h(self, g: Element) -> Element:
        return (g[0], 0.0, 0.0)

    def in_n(self, g: Element, tol: float = DEFAULT_TOLERANCES.exact) -> bool:
        return abs(g[0]) <= tol

    def in_h(self, g: Element, tol: float = DEFAULT_TOLERANCES.exact) -> bool:
        return abs(g[1]) <= tol and abs(g[2]) <= tol

    @property
    def n_chart_dim(self) -> int:
        return 2

    @property
    def h_chart_dim(self) -> int:
        return 1

    @property
    def n_axes(self) -> Tuple[int, ...]:
        return (1, 2)

    def n_from_chart(self, u: Sequence[float]) -> Element:
        return (0.0, float(u[0]), float(u[1]))

    def n_to_chart(self, n: Element) -> Tuple[float, ...]:
        return (n[1], n[2])

    def h_from_chart(self, u: Sequence[float]) -> Element:
        return (float(u[0]), 0.0, 0.0)

    def h_to_chart(self, h: Element) -> Tuple[float, ...]:
        return (h[0],)

    def h_subgroup(self) -> Subgroup:
        return Subgroup('H', point=lambda t: (float(t), 0.0, 0.0), window=lambda r: 2.0 * r)

    @property
    def axis(self) -> Optional[OneDimAxis]:
        return OneDimAxis(point=lambda t: (float(t), 0.0, 0.0), parameter=lambda h: h[0], generator='X')

    def homomorphism(self, params: Sequence[float]) -> Tuple[Callable[[Element], Element], Optional[List[Element]]]:
        """(0,y,t) -> (a*y + b*t, 0, 0); N is abelian so every such map is a homomorphism."""
        if len(params) not in (1, 2):
            raise InvalidSpec("hom on heisenberg takes a or a,b")
        a = float(params[0])
        b = float(params[1]) if len(params) == 2 else 0.0
        return (lambda n: (a * n[1] + b * n[2], 0.0, 0.0)), None
