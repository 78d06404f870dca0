import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from src.config import DEFAULT_TOLERANCES, SearchSettings, Tolerances, default_search
from src.error.errors import InvalidArgument
from src.error.logger import get_logger
from src.graphs.maps import FunctionMap, IntrinsicMap, build_map
from src.groups.core import Element, Splitting
from src.groups.zoo import verify_metric_axioms
from src.monitoring.metrics import CheckCollector
from src.sampling.halton import Box, HaltonSampler
from src.subgroups.identities import subgroup_examples

logger = get_logger(__name__)

TRIANGLE_CAP = 1000


@dataclass
class SuiteContext:
    """Everything a suite needs: the instance, the maps under test and the sampling settings."""

    splitting: Splitting
    maps: List[IntrinsicMap]
    samples: int
    seed: int
    collector: CheckCollector
    tolerances: Tolerances = DEFAULT_TOLERANCES
    box: Optional[Box] = None
    exhaustive: bool = False
    search: SearchSettings = field(default_factory=default_search)
    _triangle: Optional[bool] = field(default=None, repr=False)

    @property
    def group(self):
        return self.splitting.group

    def sampler(self, stream: int) -> HaltonSampler:
        return HaltonSampler(self.seed).child(stream)

    def count(self, cap: Optional[int] = None) -> int:
        """Sample count for one check, capped for checks that search over H per point."""
        return self.samples if cap is None else max(1, min(self.samples, cap))

    def domain(self, phi: IntrinsicMap, stream: int, cap: Optional[int] = None) -> List[Element]:
        """All of a finite domain under --exhaustive, a sample of it otherwise."""
        elements = phi.domain_elements()
        if self.exhaustive and elements is not None:
            return elements
        return phi.sample_domain(self.count(cap), self.sampler(stream), self.box)

    def check(self, check_id: str, anchor: str):
        return self.collector.check(check_id, anchor)

    def observe(self, check_id: str, margin: float, tol: float) -> None:
        self.collector.observe(check_id, margin, tol)

    def triangle_holds(self) -> bool:
        """Whether bounds derived through the triangle inequality can be asserted on this instance."""
        if self._triangle is None:
            if self.group.triangle_certified:
                self._triangle = True
            else:
                report = verify_metric_axioms(self.splitting, self.count(TRIANGLE_CAP), self.seed, self.box,
                                              self.tolerances)
                self._triangle = report.triangle_violations == 0
        return self._triangle

    def flag(self, check_id: str, ok: bool) -> None:
        """Observe a yes/no outcome as margin 0 or 1."""
        self.collector.observe(check_id, 0.0 if ok else 1.0, 0.5)


def _sine_map(splitting: Splitting) -> IntrinsicMap:
    return FunctionMap(splitting, lambda n: (0.0, math.sin(n[0])), 'sin')


def shipped_maps(splitting: Splitting) -> List[IntrinsicMap]:
    """
    The maps suites run on when no --map is given.

    Every instance ships its subgroup-graph examples; continuous instances add
    a map whose graph is not a subgroup.
    """
    maps = subgroup_examples(splitting)
    name = splitting.name
    if name == 'abelian:1,1':
        maps.append(build_map(splitting, 'linear:2'))
        maps.append(_sine_map(splitting))
    elif name == 'heisenberg':
        maps.append(build_map(splitting, 'hom:0.3,0.2'))
    elif name == 'affine':
        maps.append(build_map(splitting, 'hom:0.5'))
    elif name == 'affine:swap':
        maps.append(build_map(splitting, 'hom:0.5'))
    elif name.startswith('dihedral'):
        maps.append(build_map(splitting, 'const:0,1'))
    return maps


SuiteFunction = Callable[[SuiteContext], None]


def _registry() -> Dict[str, SuiteFunction]:
    from src.suites import cones, group, lipschitz, quasi, subgroups, translation
    return {
        'group': group.group_suite,
        'zoo': group.zoo_suite,
        'translation': translation.translation_suite,
        'cones': cones.cones_suite,
        'lipschitz': lipschitz.lipschitz_suite,
        'quasi': quasi.quasi_suite,
        'subgroups': subgroups.subgroups_suite,
    }


SUITE_NAMES = ('group', 'zoo', 'translation', 'cones', 'lipschitz', 'quasi', 'subgroups', 'all')


def run_suite(name: str, context: SuiteContext) -> CheckCollector:
    """
    Run a named suite (or 'all') against the context.

    Raises:
        InvalidArgument: Unknown suite name or non-positive sample count
    """
    if context.samples < 1:
        raise InvalidArgument(f"--samples must be positive (got {context.samples})")
    registry = _registry()
    if name == 'all':
        names = [n for n in SUITE_NAMES if n != 'all']
    elif name in registry:
        names = [name]
    else:
        raise InvalidArgument(f"unknown suite '{name}' (expected one of {', '.join(SUITE_NAMES)})")
    for suite in names:
        logger.info(f"Running suite '{suite}' on {context.splitting.name} "
                    f"({context.samples} samples, seed {context.seed})")
        registry[suite](context)
    return context.collector
