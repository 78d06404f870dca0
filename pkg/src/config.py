import os
from dataclasses import dataclass, replace
from typing import Optional

from dotenv import load_dotenv

# Load environment variables
load_dotenv()


@dataclass(frozen=True)
class Tolerances:
    """Numerical slack used when comparing against analytic identities."""

    exact: float = 1e-9
    metric: float = 1e-7
    inf: float = 1e-6
    sample_rel: float = 1e-6

    def sample(self, estimate: float) -> float:
        """Slack allowed on a sampled supremum of the given size."""
        return self.sample_rel * (1.0 + abs(estimate))

    def with_exact(self, exact: Optional[float]) -> 'Tolerances':
        if exact is None:
            return self
        return replace(self, exact=exact)

    def to_dict(self):
        return {
            'exact': self.exact,
            'metric': self.metric,
            'inf': self.inf,
            'sample_rel': self.sample_rel
        }


@dataclass(frozen=True)
class SearchSettings:
    """Grid scan plus bounded Brent refinement for infima over subgroups."""

    grid_points: int = 512
    margin: float = 1.0
    max_iter: int = 500
    xtol: float = 1e-10


DEFAULT_TOLERANCES = Tolerances()


def default_search() -> SearchSettings:
    grid = os.getenv('INTRINLIP_GRID_POINTS')
    if grid:
        return SearchSettings(grid_points=int(grid))
    return SearchSettings()


def default_seed() -> int:
    """Seed fallback when --seed is not given."""
    return int(os.getenv('INTRINLIP_SEED', '0'))


def log_level() -> str:
    return os.getenv('INTRINLIP_LOG_LEVEL', 'INFO').upper()


def log_dir() -> Optional[str]:
    return os.getenv('INTRINLIP_LOG_DIR') or None
