import csv
import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from src.config import DEFAULT_TOLERANCES
from src.error.errors import InvalidSpec, OutsideDomain
from src.error.logger import get_logger
from src.groups.core import Element, Splitting
from src.sampling.halton import Box, HaltonSampler

logger = get_logger(__name__)

MAP_KINDS = ('const', 'linear', 'hom', 'table')


class IntrinsicMap(ABC):
    """A map phi: E -> H defined on a subset E of N."""

    def __init__(self, splitting: Splitting, name: str):
        self.splitting = splitting
        self.name = name

    @property
    def group(self):
        return self.splitting.group

    @abstractmethod
    def contains(self, n: Element) -> bool:
        """Membership of n in the domain E."""

    @abstractmethod
    def evaluate(self, n: Element) -> Element:
        """phi(n) without the domain check."""

    def __call__(self, n: Element) -> Element:
        if not self.contains(n):
            raise OutsideDomain(n, f"{n} is outside the domain of {self.name}")
        return self.evaluate(n)

    def domain_elements(self) -> Optional[List[Element]]:
        """Every point of E when E is finite."""
        elements = self.splitting.n_elements()
        if elements is None:
            return None
        return [n for n in elements if self.contains(n)]

    def sample_domain(self, count: int, sampler: HaltonSampler, box: Optional[Box] = None) -> List[Element]:
        elements = self.domain_elements()
        if elements is not None:
            if not elements:
                return []
            return [elements[i] for i in sampler.indices(count, len(elements))[:, 0]]
        return [n for n in self.splitting.sample_n(count, sampler, box) if self.contains(n)]

    def descriptor(self) -> Dict[str, Any]:
        return {'map': self.name, 'splitting': self.splitting.name}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r} on {self.splitting.name})"


class FunctionMap(IntrinsicMap):
    """A map given by a Python callable, defined on all of N unless a predicate is given."""

    def __init__(self, splitting: Splitting, fn: Callable[[Element], Element], name: str = 'function',
                 domain: Optional[Callable[[Element], bool]] = None):
        super().__init__(splitting, name)
        self.fn = fn
        self.domain = domain

    def contains(self, n: Element) -> bool:
        if not self.splitting.in_n(n):
            return False
        return self.domain is None or bool(self.domain(n))

    def evaluate(self, n: Element) -> Element:
        return self.fn(n)


class FiniteMap(IntrinsicMap):
    """A map given by its table of values on a finite domain."""

    def __init__(self, splitting: Splitting, values: Dict[Element, Element], name: str = 'finite'):
        super().__init__(splitting, name)
        self.values = dict(values)

    def contains(self, n: Element) -> bool:
        return n in self.values

    def evaluate(self, n: Element) -> Element:
        return self.values[n]

    def domain_elements(self) -> Optional[List[Element]]:
        return sorted(self.values)


class TableMap(IntrinsicMap):
    """
    Nearest-sample interpolation of a tabulated map.

    Each row of the TSV file holds the N chart coordinates followed by the H
    chart coordinates. The domain is the bounding box of the tabulated points.
    """

    def __init__(self, splitting: Splitting, path: str, tolerance: float = DEFAULT_TOLERANCES.exact):
        super().__init__(splitting, f"table:{path}")
        self.path = path
        n_dim, h_dim = splitting.n_chart_dim, splitting.h_chart_dim
        rows = self._read_rows(path, n_dim + h_dim)
        self.points = np.array([r[:n_dim] for r in rows], dtype=float)
        self.values = np.array([r[n_dim:] for r in rows], dtype=float)
        self.tree = cKDTree(self.points)
        self.box = Box(tuple((float(lo), float(hi)) for lo, hi in zip(self.points.min(axis=0), self.points.max(axis=0))))
        self.tolerance = tolerance
        logger.info(f"Loaded {len(rows)} table rows from {path}")

    @staticmethod
    def _read_rows(path: str, width: int) -> List[List[float]]:
        rows = []
        try:
            with open(path, newline='') as f:
                for line_no, row in enumerate(csv.reader(f, delimiter='\t'), start=1):
                    if not row or row[0].lstrip().startswith('#'):
                        continue
                    if len(row) != width:
                        raise InvalidSpec(f"{path}:{line_no}: expected {width} columns, got {len(row)}")
                    rows.append([float(v) for v in row])
        except OSError as e:
            raise InvalidSpec(f"cannot read map table {path}: {e}") from e
        except ValueError as e:
            raise InvalidSpec(f"{path}: non-numeric entry ({e})") from e
        if not rows:
            raise InvalidSpec(f"map table {path} has no rows")
        return rows

    def contains(self, n: Element) -> bool:
        if not self.splitting.in_n(n):
            return False
        u = np.array(self.splitting.n_to_chart(n), dtype=float)
        return bool(np.all(u >= self.box.low - self.tolerance) and np.all(u <= self.box.high + self.tolerance))

    def evaluate(self, n: Element) -> Element:
        _, index = self.tree.query(np.array(self.splitting.n_to_chart(n), dtype=float))
        return self.splitting.h_from_chart(self.values[int(index)])

    def sample_domain(self, count: int, sampler: HaltonSampler, box: Optional[Box] = None) -> List[Element]:
        return super().sample_domain(count, sampler, box or self.box)


class TranslatedMap(IntrinsicMap):
    """
    phi_q, whose graph is the left translate q·Gamma_phi.

    E_q = {n : pi_N(q^-1 n) in E} is tested lazily;
    phi_q(n) = pi_H(q^-1 n)^-1 · phi(pi_N(q^-1 n)).
    """

    def __init__(self, base: IntrinsicMap, q: Element):
        super().__init__(base.splitting, f"({base.name})_{q}")
        self.base = base
        self.q = q
        self._q_inv = base.group.inverse(q)

    def _pullback(self, n: Element) -> Tuple[Element, Element]:
        x = self.group.multiply(self._q_inv, n)
        return self.splitting.project_n(x), self.splitting.project_h(x)

    def contains(self, n: Element) -> bool:
        if not self.splitting.in_n(n):
            return False
        return self.base.contains(self._pullback(n)[0])

    def evaluate(self, n: Element) -> Element:
        m, h = self._pullback(n)
        return self.group.multiply(self.group.inverse(h), self.base.evaluate(m))

    def _push(self, m: Element) -> Element:
        point = self.group.multiply(self.q, self.group.multiply(m, self.base.evaluate(m)))
        return self.splitting.project_n(point)

    def domain_elements(self) -> Optional[List[Element]]:
        elements = self.base.domain_elements()
        if elements is None:
            return None
        return sorted({self._push(m) for m in elements})

    def sample_domain(self, count: int, sampler: HaltonSampler, box: Optional[Box] = None) -> List[Element]:
        return [self._push(m) for m in self.base.sample_domain(count, sampler, box)]

    def descriptor(self) -> Dict[str, Any]:
        descriptor = super().descriptor()
        descriptor.update({'base': self.base.descriptor(), 'translation': list(self.q)})
        return descriptor


def translate_map(phi: IntrinsicMap, q: Element) -> IntrinsicMap:
    return TranslatedMap(phi, q)


@dataclass(frozen=True)
class MapSpec:
    """Parsed --map value."""

    kind: str
    params: Tuple[float, ...] = ()
    path: Optional[str] = None
    text: str = field(default='', compare=False)


def parse_map_spec(text: str) -> MapSpec:
    """
    Parse `const[:v,...]` | `linear:lambda` | `hom:p,...` | `table:path`.

    Raises:
        InvalidSpec: For unknown kinds or malformed parameters
    """
    if not text:
        raise InvalidSpec("empty map spec")
    kind, _, rest = text.strip().partition(':')
    kind = kind.lower()
    if kind not in MAP_KINDS:
        raise InvalidSpec(f"unknown map kind '{kind}' (expected one of {', '.join(MAP_KINDS)})")
    if kind == 'table':
        if not rest:
            raise InvalidSpec("table map needs a file path")
        return MapSpec('table', path=rest, text=text)
    try:
        params = tuple(float(v) for v in rest.split(',') if v.strip())
    except ValueError as e:
        raise InvalidSpec(f"map spec '{text}' has a non-numeric parameter") from e
    if kind in ('linear', 'hom') and not params:
        raise InvalidSpec(f"map spec '{text}' needs parameters")
    if kind == 'linear' and len(params) != 1:
        raise InvalidSpec(f"linear map takes exactly one slope ('{text}')")
    return MapSpec(kind, params, text=text)


def build_map(splitting: Splitting, spec) -> IntrinsicMap:
    """Instantiate a builtin map on a splitting from a MapSpec or its text."""
    if isinstance(spec, str):
        spec = parse_map_spec(spec)
    name = spec.text or spec.kind
    if spec.kind == 'const':
        value = splitting.group.identity if not spec.params else splitting.h_from_values(spec.params)
        if not splitting.in_h(value):
            raise InvalidSpec(f"{value} is not in H")
        return FunctionMap(splitting, lambda n: value, name)
    if spec.kind == 'linear':
        return FunctionMap(splitting, splitting.linear(spec.params[0]), name)
    if spec.kind == 'hom':
        fn, domain = splitting.homomorphism(spec.params)
        if domain is not None:
            return FiniteMap(splitting, {n: fn(n) for n in domain}, name)
        return FunctionMap(splitting, fn, name)
    return TableMap(splitting, spec.path)


def all_finite_maps(splitting: Splitting) -> Iterator[FiniteMap]:
    """Every map N -> H of a finite splitting."""
    n_elements, h_elements = splitting.n_elements(), splitting.h_elements()
    if n_elements is None or h_elements is None:
        raise InvalidSpec(f"{splitting.name} is not finite")
    for index, values in enumerate(itertools.product(h_elements, repeat=len(n_elements))):
        yield FiniteMap(splitting, dict(zip(n_elements, values)), f"map#{index}")
