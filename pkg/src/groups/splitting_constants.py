import itertools
import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from src.config import DEFAULT_TOLERANCES, SearchSettings, Tolerances
from src.error.errors import DegenerateSample, InvalidArgument
from src.error.logger import get_logger
from src.groups.core import Element, Splitting, dist_to_subgroup
from src.models import SplittingConstants, Supremum
from src.sampling.halton import Box, HaltonSampler

logger = get_logger(__name__)

RATIOS = ('C2', 'C3', 'C4', 'C5')


def _single_ratios(s: Splitting, g: Element, search: Optional[SearchSettings],
                   subgroup_distance: bool = True) -> Dict[str, Tuple[float, float]]:
    """(numerator, denominator) of the one-point ratios at g; C5 only with subgroup_distance."""
    group = s.group
    d_g = group.norm(g)
    d_n = group.norm(s.project_n(g))
    d_h = group.norm(s.project_h(g))
    ratios = {
        'C2': (d_n + d_h, d_g),
        'C3': (d_n, d_g),
        'C4': (d_h, d_g),
    }
    if not subgroup_distance:
        return ratios
    # Distance from the point g^-1 to H is inf d(1, g·q); it vanishes exactly where d_n does
    ratios['C5'] = (d_n, dist_to_subgroup(group, s.h_subgroup(), g, search) if d_n > 0 else 0.0)
    return ratios


def _pair_ratio(s: Splitting, g: Element, p: Element) -> Tuple[float, float]:
    group = s.group
    return group.distance(s.project_h(g), s.project_h(p)), group.distance(g, p)


def _polish(objective: Callable[[np.ndarray], float], start: Sequence[float], box: Box) -> Optional[np.ndarray]:
    """Bounded Nelder-Mead ascent of a ratio from a sampled starting point."""
    x0 = np.clip(np.asarray(start, dtype=float), box.low, box.high)
    try:
        result = minimize(lambda u: -objective(u), x0, method='Nelder-Mead', bounds=list(box.bounds),
                          options={'xatol': 1e-12, 'fatol': 1e-15, 'maxiter': 400 * len(x0)})
    except (ValueError, ZeroDivisionError, OverflowError):
        return None
    return result.x


def estimate_splitting_constants(s: Splitting, box: Optional[Box] = None, n_samples: int = 1000, seed: int = 0,
                                 tolerances: Tolerances = DEFAULT_TOLERANCES,
                                 search: Optional[SearchSettings] = None,
                                 exhaustive: bool = False, polish: bool = True,
                                 extra: Sequence[Element] = (), subgroup_distance: bool = True) -> SplittingConstants:
    """
    Sampled suprema of the five splitting-Lipschitz ratios.

    C1 is sup d(pi_H g, pi_H p) / d(g, p) over pairs; C2..C5 are one-point
    ratios against d(1, g) or dist(g^-1, H). All one-point ratios are taken over
    one common pool, so C3 <= C2 and C4 <= C2 hold on it exactly.

    Args:
        s: The splitting
        box: Chart box the sample is drawn from
        n_samples: Pool size (ignored when exhaustive)
        seed: Halton seed
        tolerances: Degenerate-denominator threshold
        search: Subgroup-distance search settings
        exhaustive: Use every element of a finite group
        polish: Refine the best sample of each ratio with Nelder-Mead
        extra: Elements added to the pool, e.g. the points a bound is checked on
        subgroup_distance: Compute C5, which needs a subgroup search per point; NaN otherwise

    Returns:
        SplittingConstants for the sample
    """
    if n_samples < 2 and not exhaustive:
        raise InvalidArgument("splitting constants need at least 2 samples")
    group = s.group
    box = (box or group.default_box()).resize(group.chart_dim)
    sampler = HaltonSampler(seed)

    all_elements = group.elements()
    if exhaustive and all_elements is not None:
        pool = list(all_elements)
        pairs = list(itertools.combinations(pool, 2))
        description = f"all {len(pool)} elements"
    else:
        pool = group.sample(n_samples, sampler.child(1), box)
        partners = group.sample(n_samples, sampler.child(2), box)
        pairs = list(zip(pool, partners))
        description = box.describe() if all_elements is None else f"{n_samples} sampled elements"

    tol = tolerances.exact
    keys = RATIOS if subgroup_distance else RATIOS[:3]
    singles: Dict[str, Supremum] = {key: Supremum() for key in RATIOS}
    c1 = Supremum()

    def fold(g: Element) -> None:
        for key, (num, den) in _single_ratios(s, g, search, subgroup_distance).items():
            singles[key].add(num, den, g, tol)

    pool.extend(extra)
    for g in pool:
        fold(g)
    for g, p in pairs:
        num, den = _pair_ratio(s, g, p)
        c1.add(num, den, (g, p), tol)

    if polish and all_elements is None:
        for key in RATIOS:
            if key not in keys:
                continue
            witness = singles[key].witness
            if witness is None:
                continue

            def objective(u, key=key):
                num, den = _single_ratios(s, group.from_chart(u), search, subgroup_distance)[key]
                return num / den if den >= tol else 0.0

            point = _polish(objective, group.to_chart(witness), box)
            if point is not None:
                fold(group.from_chart(point))
        if c1.witness is not None:
            dim = group.chart_dim
            pair_box = Box(box.bounds + box.bounds)

            def pair_objective(u):
                num, den = _pair_ratio(s, group.from_chart(u[:dim]), group.from_chart(u[dim:]))
                return num / den if den >= tol else 0.0

            g, p = c1.witness
            point = _polish(pair_objective, group.to_chart(g) + group.to_chart(p), pair_box)
            if point is not None:
                g, p = group.from_chart(point[:dim]), group.from_chart(point[dim:])
                num, den = _pair_ratio(s, g, p)
                c1.add(num, den, (g, p), tol)

    if singles['C2'].empty or c1.empty:
        raise DegenerateSample(f"every sampled denominator on {s.name} is below {tol:g}")

    skipped = {'C1': c1.skipped}
    skipped.update({key: sup.skipped for key, sup in singles.items()})
    logger.debug(f"{s.name}: splitting constants skipped {skipped}")
    return SplittingConstants(
        c1=c1.value,
        c2=singles['C2'].value,
        c3=singles['C3'].value,
        c4=singles['C4'].value,
        c5=singles['C5'].value if subgroup_distance else math.nan,
        sample_box=description,
        sample_count=singles['C2'].count,
        skipped=skipped
    )


def projection_constant(constants: SplittingConstants) -> float:
    """C = max(C1, C3), the constant of the quasi-distance bounds."""
    return max(constants.c1, constants.c3)


def comparison_constant(constants: SplittingConstants) -> float:
    """C with pi_H C-Lipschitz, C4 <= C and C5 <= C + 1, as the cone comparison needs."""
    return max(constants.c1, constants.c4, constants.c5 - 1.0)
