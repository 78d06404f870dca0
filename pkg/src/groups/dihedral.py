import math
from typing import Callable, List, Optional, Sequence, Tuple

from src.config import DEFAULT_TOLERANCES
from src.error.errors import InvalidSpec
from src.groups.core import Element, MetricGroup, NormalSide, Splitting, Subgroup
from src.groups.word_metric import WordMetricTable
from src.sampling.halton import Box


class DihedralGroup(MetricGroup):
    """
    D_n = Z_n x| Z_2 with the word metric for the generators r, r^-1, s.

    Element (k, e) stands for r^k s^e.
    """

    finite = True

    def __init__(self, n: int):
        if n < 2:
            raise InvalidSpec(f"dihedral group needs n >= 2 (got {n})")
        super().__init__("dihedral", {'n': n, 'generators': ['r', 'r^-1', 's']})
        self.n = n
        self._elements = [(k, e) for e in (0, 1) for k in range(n)]
        self.r = (1 % n, 0)
        self.s = (0, 1)
        self.table = WordMetricTable.build(
            self._elements, self.identity, self.multiply, self.inverse,
            [self.r, self.inverse(self.r), self.s]
        )

    @property
    def identity(self) -> Element:
        return (0, 0)

    def multiply(self, g: Element, p: Element) -> Element:
        k, e = g
        k2, e2 = p
        sign = -1 if e else 1
        return ((k + sign * k2) % self.n, (e + e2) % 2)

    def inverse(self, g: Element) -> Element:
        k, e = g
        return (k, 1) if e else ((-k) % self.n, 0)

    def norm(self, g: Element) -> float:
        return float(self.table.length(g))

    def residual(self, a: Element, b: Element) -> float:
        return self.distance(a, b)

    def elements(self) -> Optional[List[Element]]:
        return list(self._elements)

    def from_chart(self, u: Sequence[float]) -> Element:
        return (int(round(u[0])) % self.n, int(round(u[1])) % 2)

    def label(self, g: Element) -> str:
        k, e = g
        word = '' if k == 0 else ('r' if k == 1 else f"r^{k}")
        word += 's' if e else ''
        return word or '1'


class DihedralSplitting(Splitting):
    """N = rotations (normal), H = {1, s}."""

    normal_side = NormalSide.N_NORMAL

    def __init__(self, n: int):
        super().__init__(DihedralGroup(n), f"dihedral:{n}")
        self.n = n

    def project_n(self, g: Element) -> Element:
        return (g[0], 0)

    def project_h(self, g: Element) -> Element:
        return (0, g[1])

    def in_n(self, g: Element, tol: float = DEFAULT_TOLERANCES.exact) -> bool:
        return g[1] == 0

    def in_h(self, g: Element, tol: float = DEFAULT_TOLERANCES.exact) -> bool:
        return g[0] == 0

    @property
    def n_chart_dim(self) -> int:
        return 1

    @property
    def h_chart_dim(self) -> int:
        return 1

    @property
    def n_axes(self) -> Tuple[int, ...]:
        return (0,)

    def n_from_chart(self, u: Sequence[float]) -> Element:
        return (int(round(u[0])) % self.n, 0)

    def n_to_chart(self, n: Element) -> Tuple[float, ...]:
        return (float(n[0]),)

    def h_from_chart(self, u: Sequence[float]) -> Element:
        return (0, int(round(u[0])) % 2)

    def h_to_chart(self, h: Element) -> Tuple[float, ...]:
        return (float(h[1]),)

    def h_from_values(self, values: Sequence[float]) -> Element:
        if len(values) == 2:
            g = (int(values[0]) % self.n, int(values[1]) % 2)
            if self.in_h(g):
                return g
        elif len(values) == 1:
            return self.h_from_chart(values)
        raise InvalidSpec(f"{list(values)} does not describe an element of H in {self.name}")

    def h_subgroup(self) -> Subgroup:
        return Subgroup('H', elements=tuple(self.h_elements()))

    def n_elements(self) -> Optional[List[Element]]:
        return [(k, 0) for k in range(self.n)]

    def h_elements(self) -> Optional[List[Element]]:
        return [(0, 0), (0, 1)]

    def default_n_box(self) -> Box:
        return Box(((0.0, float(self.n - 1)),))

    def homomorphism(self, params: Sequence[float]) -> Tuple[Callable[[Element], Element], Optional[List[Element]]]:
        """
        Partial map r^(jd) -> s^(j mod 2) on the rotation subgroup generated by r^d.

        Its graph {r^(jd) s^j} is a subgroup when r^d has even order.
        """
        if len(params) != 1 or float(params[0]) != int(params[0]):
            raise InvalidSpec(f"hom on {self.name} takes one integer step d")
        d = int(params[0]) % self.n
        if d == 0:
            raise InvalidSpec(f"hom step must not be a multiple of {self.n}")
        order = self.n // math.gcd(self.n, d)
        if order % 2:
            raise InvalidSpec(f"r^{d} has odd order {order}; no homomorphism onto Z_2")
        domain = [((j * d) % self.n, 0) for j in range(order)]
        index = {n: j for j, n in enumerate(domain)}
        return (lambda n: (0, index[n] % 2)), domain

    def linear(self, slope: float) -> Callable[[Element], Element]:
        raise InvalidSpec(f"linear maps are not defined on {self.name}; use hom:d")
