from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.error.errors import InvalidSpec
from src.error.logger import get_logger
from src.groups.abelian import AbelianSplitting
from src.groups.affine import AffineSplitting
from src.groups.core import Splitting
from src.groups.dihedral import DihedralSplitting
from src.groups.heisenberg import HeisenbergSplitting
from src.models import MetricAxiomReport
from src.sampling.halton import Box, HaltonSampler

logger = get_logger(__name__)

GROUP_KINDS = ('abelian', 'heisenberg', 'affine', 'dihedral')


@dataclass(frozen=True)
class GroupSpec:
    """Parsed --group value."""

    kind: str
    params: Dict[str, Any] = field(default_factory=dict)

    def __str__(self) -> str:
        if self.kind == 'abelian':
            return f"abelian:{self.params['m']},{self.params['k']}"
        if self.kind == 'dihedral':
            return f"dihedral:{self.params['n']}"
        if self.kind == 'affine' and self.params.get('swap'):
            return 'affine:swap'
        return self.kind


def _parse_ints(text: str, count: int, spec: str) -> List[int]:
    parts = [p.strip() for p in text.split(',')]
    if len(parts) != count:
        raise InvalidSpec(f"group spec '{spec}' needs {count} integer parameter(s)")
    try:
        return [int(p) for p in parts]
    except ValueError as e:
        raise InvalidSpec(f"group spec '{spec}' has a non-integer parameter") from e


def parse_group_spec(text: str) -> GroupSpec:
    """
    Parse `abelian:m,k` | `heisenberg` | `affine` | `affine:swap` | `dihedral:n`.

    Raises:
        InvalidSpec: For unknown kinds or out-of-range parameters
    """
    if not text:
        raise InvalidSpec("empty group spec")
    kind, _, rest = text.strip().partition(':')
    kind = kind.lower()
    if kind == 'abelian':
        m, k = _parse_ints(rest or '1,1', 2, text)
        if m < 1 or k < 1:
            raise InvalidSpec(f"abelian plane needs m, k >= 1 (got {m}, {k})")
        return GroupSpec('abelian', {'m': m, 'k': k})
    if kind == 'heisenberg':
        if rest:
            raise InvalidSpec("heisenberg takes no parameters")
        return GroupSpec('heisenberg')
    if kind == 'affine':
        if rest not in ('', 'swap'):
            raise InvalidSpec(f"unknown affine variant '{rest}'")
        return GroupSpec('affine', {'swap': rest == 'swap'})
    if kind == 'dihedral':
        (n,) = _parse_ints(rest, 1, text)
        if n < 2:
            raise InvalidSpec(f"dihedral group needs n >= 2 (got {n})")
        return GroupSpec('dihedral', {'n': n})
    raise InvalidSpec(f"unknown group kind '{kind}' (expected one of {', '.join(GROUP_KINDS)})")


def instantiate_group(spec: GroupSpec) -> Splitting:
    """Build the splitting described by a GroupSpec."""
    if spec.kind == 'abelian':
        return AbelianSplitting(spec.params['m'], spec.params['k'])
    if spec.kind == 'heisenberg':
        return HeisenbergSplitting()
    if spec.kind == 'affine':
        return AffineSplitting(swap=spec.params.get('swap', False))
    if spec.kind == 'dihedral':
        return DihedralSplitting(spec.params['n'])
    raise InvalidSpec(f"unknown group kind '{spec.kind}'")


def load_splitting(text: str) -> Splitting:
    return instantiate_group(parse_group_spec(text))


def verify_metric_axioms(splitting: Splitting, n_samples: int, seed: int = 0,
                         box: Optional[Box] = None,
                         tolerances: Tolerances = DEFAULT_TOLERANCES) -> MetricAxiomReport:
    """
    Check the distance axioms and left-invariance on sampled triples.

    Triangle-inequality failures do not raise: an instance with failures is
    labelled quasi-metric and the count is reported.
    """
    group = splitting.group
    sampler = HaltonSampler(seed)
    triples = zip(group.sample(n_samples, sampler.child(1), box),
                  group.sample(n_samples, sampler.child(2), box),
                  group.sample(n_samples, sampler.child(3), box))

    max_diagonal = max_asymmetry = max_invariance = worst_excess = 0.0
    violations = 0
    for g, q, p in triples:
        d_gq = group.distance(g, q)
        max_diagonal = max(max_diagonal, group.distance(g, g))
        max_asymmetry = max(max_asymmetry, abs(d_gq - group.distance(q, g)))
        max_invariance = max(max_invariance, abs(group.distance(group.multiply(p, g), group.multiply(p, q)) - d_gq))
        excess = d_gq - group.distance(g, p) - group.distance(p, q)
        worst_excess = max(worst_excess, excess)
        if excess > tolerances.metric:
            violations += 1

    label = 'metric' if violations == 0 else 'quasi-metric'
    if violations:
        logger.warning(f"{splitting.name}: {violations}/{n_samples} triangle violations, labelled {label}")
    return MetricAxiomReport(
        group=splitting.name,
        samples=n_samples,
        max_diagonal=max_diagonal,
        max_asymmetry=max_asymmetry,
        triangle_violations=violations,
        worst_triangle_excess=worst_excess,
        max_left_invariance_residual=max_invariance,
        label=label
    )
