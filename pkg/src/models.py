import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple


def json_number(value: Optional[float]) -> Any:
    """JSON has no infinities; spell them out."""
    if value is None:
        return None
    if isinstance(value, float) and math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    if isinstance(value, float) and math.isnan(value):
        return 'nan'
    return value


@dataclass
class Supremum:
    """Running supremum of a ratio over a sample, with the witness that attains it."""

    value: float = 0.0
    witness: Any = None
    count: int = 0
    skipped: int = 0

    def add(self, numerator: float, denominator: float, witness: Any = None, tol: float = 1e-9) -> None:
        """
        Fold one ratio into the supremum.

        Args:
            numerator: Ratio numerator
            denominator: Ratio denominator; samples below tol are skipped
            witness: Anything identifying the sample
            tol: Degenerate-denominator threshold
        """
        if denominator < tol:
            self.skipped += 1
            return
        self.count += 1
        ratio = numerator / denominator
        if self.witness is None or ratio > self.value:
            self.value = ratio
            self.witness = witness

    def merge(self, other: 'Supremum') -> 'Supremum':
        best = self if (other.witness is None or (self.witness is not None and self.value >= other.value)) else other
        return Supremum(best.value, best.witness, self.count + other.count, self.skipped + other.skipped)

    @property
    def empty(self) -> bool:
        return self.count == 0


@dataclass
class SplittingConstants:
    """Sampled suprema of the five splitting-Lipschitz ratios."""

    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    sample_box: str
    sample_count: int
    skipped: Dict[str, int] = field(default_factory=dict)

    def as_tuple(self) -> Tuple[float, float, float, float, float]:
        return (self.c1, self.c2, self.c3, self.c4, self.c5)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'C1': json_number(self.c1),
            'C2': json_number(self.c2),
            'C3': json_number(self.c3),
            'C4': json_number(self.c4),
            'C5': json_number(self.c5),
            'sample_box': self.sample_box,
            'sample_count': self.sample_count,
            'skipped': dict(self.skipped)
        }


@dataclass
class MetricAxiomReport:
    """Metric-axiom checks on sampled points of one group instance."""

    group: str
    samples: int
    max_diagonal: float
    max_asymmetry: float
    triangle_violations: int
    worst_triangle_excess: float
    max_left_invariance_residual: float
    label: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            'group': self.group,
            'samples': self.samples,
            'max_diagonal': self.max_diagonal,
            'max_asymmetry': self.max_asymmetry,
            'triangle_violations': self.triangle_violations,
            'worst_triangle_excess': self.worst_triangle_excess,
            'max_left_invariance_residual': self.max_left_invariance_residual,
            'label': self.label
        }


@dataclass
class LipschitzEstimate:
    """A sampled intrinsic Lipschitz constant for one of the equivalent conditions."""

    condition: str
    estimate: float
    samples: int
    skipped: int
    description: str = ''
    witness: Any = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'condition': self.condition,
            'estimate': json_number(self.estimate),
            'samples': self.samples,
            'skipped': self.skipped,
            'description': self.description
        }


@dataclass
class QuasiDistanceReport:
    """Quasi-triangle and graph-equivalence constants of d_phi on a sample."""

    map_name: str
    sample_box: str
    quasi_triangle: float
    c_low: float
    c_high: float
    splitting_constant: float
    lipschitz_constant: float
    printed_constants_hold: bool = False

    @property
    def triangle_bound(self) -> float:
        return self.splitting_constant * (1.0 + self.lipschitz_constant)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'map': self.map_name,
            'sample_box': self.sample_box,
            'quasi_triangle': json_number(self.quasi_triangle),
            'triangle_bound': json_number(self.triangle_bound),
            'c_low': json_number(self.c_low),
            'c_high': json_number(self.c_high),
            'C': json_number(self.splitting_constant),
            'L': json_number(self.lipschitz_constant),
            'printed_constants_hold': self.printed_constants_hold
        }


@dataclass
class IdentityResidualReport:
    """Largest residual per subgroup-graph identity over a sample of pairs."""

    residuals: Dict[str, float]
    closure_residual: float
    pairs: int

    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'residuals': {k: json_number(v) for k, v in sorted(self.residuals.items())},
            'closure_residual': json_number(self.closure_residual),
            'pairs': self.pairs
        }


@dataclass
class CheckRecord:
    """Outcome of one check inside a suite."""

    check_id: str
    anchor: str
    samples: int = 0
    skipped: int = 0
    violations: int = 0
    worst_margin: float = 0.0
    constants: Dict[str, Any] = field(default_factory=dict)

    def observe(self, margin: float, tol: float) -> None:
        """Record a sampled margin; positive margins beyond tol are violations."""
        self.samples += 1
        if margin > self.worst_margin or self.samples == 1:
            self.worst_margin = margin
        if margin > tol:
            self.violations += 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            'check_id': self.check_id,
            'anchor': self.anchor,
            'samples': self.samples,
            'skipped': self.skipped,
            'violations': self.violations,
            'worst_margin': json_number(self.worst_margin),
            'constants': {k: json_number(v) if isinstance(v, float) else v
                          for k, v in sorted(self.constants.items())}
        }


@dataclass
class CheckReport:
    """Everything one CLI run produced; re-runnable from its own header."""

    suite: str
    group: str
    map_spec: Optional[str]
    seed: int
    tolerances: Dict[str, float]
    command: List[str]
    checks: List[CheckRecord] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def violations(self) -> int:
        return sum(c.violations for c in self.checks)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'group': self.group,
            'map': self.map_spec,
            'seed': self.seed,
            'tolerances': dict(self.tolerances),
            'command': list(self.command),
            'checks': [c.to_dict() for c in self.checks],
            'violations': self.violations,
            'passed': self.passed,
            'wall_time': self.wall_time
        }
