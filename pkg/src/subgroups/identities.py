import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.error.errors import NotASubgroup, OutsideDomain, PremiseFailed
from src.error.logger import get_logger
from src.graphs.graphing import graphing_map
from src.graphs.maps import FunctionMap, IntrinsicMap, build_map
from src.groups.core import Element, Splitting, conjugate
from src.lipschitz.estimators import fssc_constant
from src.models import IdentityResidualReport, Supremum, json_number

logger = get_logger(__name__)


@dataclass
class ClosureResult:
    closed: bool
    residual: float
    checked: int
    witness: Optional[Tuple[Element, Element]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'closed': self.closed,
            'residual': json_number(self.residual),
            'checked': self.checked,
            'witness': [list(w) for w in self.witness] if self.witness else None
        }


def _graph_residual(phi: IntrinsicMap, g: Element) -> float:
    s = phi.splitting
    n = s.project_n(g)
    if not phi.contains(n):
        return math.inf
    return phi.group.residual(s.project_h(g), phi.evaluate(n))


def subgroup_closure_check(phi: IntrinsicMap, pairs: Sequence[Tuple[Element, Element]],
                           tolerances: Tolerances = DEFAULT_TOLERANCES) -> ClosureResult:
    """
    Test that Phi(n)·Phi(m) and Phi(n)^-1 lie on the graph for every sampled pair.

    Returns:
        ClosureResult with the largest residual and the first failing pair
    """
    group = phi.group
    result = ClosureResult(True, 0.0, 0)
    for n, m in pairs:
        a, b = graphing_map(phi, n).point, graphing_map(phi, m).point
        residual = max(_graph_residual(phi, group.multiply(a, b)), _graph_residual(phi, group.inverse(a)))
        result.checked += 1
        result.residual = max(result.residual, residual)
        if residual > tolerances.exact and result.closed:
            result.closed, result.witness = False, (n, m)
    return result


def _n_normal_identities(phi: IntrinsicMap, n: Element, m: Element) -> Dict[str, Tuple[Any, Any]]:
    """Both sides of every identity for subgroup graphs with N normal, as (lhs, rhs) thunks."""
    G = phi.group
    inv, mul, prod = G.inverse, G.multiply, G.product
    f = phi
    fn, fm = f(n), f(m)
    Phi = lambda x: mul(x, f(x))
    fn_fm = mul(fn, fm)
    fn_fm_inv = mul(fn, inv(fm))
    return {
        'N1': (lambda: mul(inv(Phi(n)), Phi(m)),
               lambda: mul(conjugate(G, inv(fn), mul(inv(n), m)), mul(inv(fn), fm))),
        'N2': (lambda: mul(Phi(n), inv(Phi(m))),
               lambda: prod(n, conjugate(G, fn_fm_inv, inv(m)), fn_fm_inv)),
        'N3': (lambda: mul(Phi(n), Phi(m)),
               lambda: prod(n, conjugate(G, fn, m), fn, fm)),
        'N4': (lambda: inv(mul(Phi(n), Phi(m))),
               lambda: prod(conjugate(G, inv(fm), inv(m)), conjugate(G, inv(fn_fm), inv(n)), inv(fn_fm))),
        'N5': (lambda: f(mul(n, m)),
               lambda: mul(fn, f(conjugate(G, inv(fn), m)))),
        'Na': (lambda: f(conjugate(G, inv(fn), mul(inv(n), m))),
               lambda: mul(inv(fn), fm)),
        'Nb': (lambda: f(mul(n, conjugate(G, fn_fm_inv, inv(m)))),
               lambda: fn_fm_inv),
        'Nc': (lambda: f(mul(n, conjugate(G, fn, m))),
               lambda: fn_fm),
        'Nd': (lambda: f(mul(conjugate(G, inv(fm), inv(m)), conjugate(G, inv(fn_fm), inv(n)))),
               lambda: inv(fn_fm)),
    }


def _h_normal_identities(phi: IntrinsicMap, n: Element, m: Element) -> Dict[str, Tuple[Any, Any]]:
    """Both sides of every identity for subgroup graphs with H normal."""
    G = phi.group
    inv, mul, prod = G.inverse, G.multiply, G.product
    f = phi
    fn, fm = f(n), f(m)
    Phi = lambda x: mul(x, f(x))
    nm = mul(n, m)
    return {
        'H1': (lambda: mul(inv(Phi(n)), Phi(m)),
               lambda: prod(inv(n), m, conjugate(G, mul(inv(m), n), inv(fn)), fm)),
        'H2': (lambda: mul(Phi(n), inv(Phi(m))),
               lambda: prod(n, inv(m), conjugate(G, m, mul(fn, inv(fm))))),
        'H3': (lambda: mul(Phi(n), Phi(m)),
               lambda: prod(nm, conjugate(G, inv(m), fn), fm)),
        'H4': (lambda: inv(mul(Phi(n), Phi(m))),
               lambda: prod(inv(nm), conjugate(G, nm, inv(fm)), conjugate(G, n, inv(fn)))),
        'Ha': (lambda: f(mul(inv(n), m)),
               lambda: mul(conjugate(G, mul(inv(m), n), inv(fn)), fm)),
        'Hb': (lambda: f(mul(n, inv(m))),
               lambda: conjugate(G, m, mul(fn, inv(fm)))),
        'Hc': (lambda: f(nm),
               lambda: mul(conjugate(G, inv(m), fn), fm)),
        'Hd': (lambda: f(inv(nm)),
               lambda: mul(conjugate(G, nm, inv(fm)), conjugate(G, n, inv(fn)))),
    }


def identity_residuals(phi: IntrinsicMap, pairs: Sequence[Tuple[Element, Element]],
                       tolerances: Tolerances = DEFAULT_TOLERANCES) -> IdentityResidualReport:
    """
    Largest residual of every identity that holds when the graph of phi is a subgroup.

    Identities whose phi-arguments leave the domain are skipped for that pair.

    Raises:
        NotASubgroup: The closure check fails on the sample
    """
    closure = subgroup_closure_check(phi, pairs, tolerances)
    if not closure.closed:
        raise NotASubgroup(f"graph of {phi.name} is not closed: pair {closure.witness}, "
                           f"residual {closure.residual:.3e}")
    s = phi.splitting
    families: List[Callable] = []
    if s.n_normal:
        families.append(_n_normal_identities)
    if s.h_normal:
        families.append(_h_normal_identities)

    residuals: Dict[str, float] = {}
    for n, m in pairs:
        for family in families:
            for key, (lhs, rhs) in family(phi, n, m).items():
                try:
                    value = phi.group.residual(lhs(), rhs())
                except OutsideDomain:
                    continue
                residuals[key] = max(residuals.get(key, 0.0), value)
    return IdentityResidualReport(residuals, closure.residual, len(pairs))


def _premise_points(phi: IntrinsicMap, pairs: Sequence[Tuple[Element, Element]]) -> List[Element]:
    """Sampled points together with pi_N(Phi(n)^-1 Phi(m)), the points the conclusion is derived from."""
    group = phi.group
    s = phi.splitting
    points = {x for pair in pairs for x in pair}
    for n, m in pairs:
        points.add(s.project_n(group.multiply(group.inverse(graphing_map(phi, n).point), graphing_map(phi, m).point)))
    return sorted(x for x in points if phi.contains(x))


def power_premise_constant(phi: IntrinsicMap, k: int, pairs: Sequence[Tuple[Element, Element]],
                           tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Smallest C with d(1, phi(n)) <= C d(1, n^k) at the premise points of the pairs."""
    group = phi.group
    sup = Supremum()
    for x in _premise_points(phi, pairs):
        sup.add(group.norm(phi.evaluate(x)), group.norm(group.power(x, k)), x, tolerances.exact)
    return sup.value


def power_bound_check(phi: IntrinsicMap, constant: float, k: int, pairs: Sequence[Tuple[Element, Element]],
                      tolerances: Tolerances = DEFAULT_TOLERANCES) -> Tuple[bool, float]:
    """
    From d(1, phi(n)) <= C d(1, n^k), conclude phi is intrinsically Ck-Lipschitz on the sample.

    The premise is tested at every sampled point and at pi_N(Phi(n)^-1 Phi(m)).

    Returns:
        (whether the FSSC estimate is at most Ck + tau_sample, the estimate)

    Raises:
        PremiseFailed: The premise fails at some point, carried as the witness
    """
    group = phi.group
    for x in _premise_points(phi, pairs):
        lhs = group.norm(phi.evaluate(x))
        rhs = constant * group.norm(group.power(x, k))
        if lhs > rhs + tolerances.exact:
            raise PremiseFailed(f"d(1, phi(n)) = {lhs:.6g} > C d(1, n^{k}) = {rhs:.6g}", witness=x)
    estimate = fssc_constant(phi, pairs, tolerances).estimate
    bound = constant * k
    return estimate <= bound + tolerances.sample(bound), estimate


def uniqueness_residual(splitting: Splitting, samples: Sequence[Tuple[Element, Element]]) -> float:
    """max residual of pi_N(h·pi_N(h^-1 n)) = n over sampled (n, h)."""
    group = splitting.group
    worst = 0.0
    for n, h in samples:
        m = splitting.project_n(group.multiply(group.inverse(h), n))
        worst = max(worst, group.residual(splitting.project_n(group.multiply(h, m)), n))
    return worst


def subgroup_examples(splitting: Splitting) -> List[IntrinsicMap]:
    """Maps shipped with each instance whose graphs are subgroups."""
    examples: List[IntrinsicMap] = [build_map(splitting, 'const')]
    name = splitting.name
    if name.startswith('abelian'):
        m, k = splitting.m, splitting.k
        examples.append(build_map(splitting, 'hom:' + ','.join(['0.5'] * (m * k))))
    elif name == 'heisenberg':
        examples.append(build_map(splitting, 'hom:0.5,0'))
    elif name == 'affine:swap':
        c = 0.5
        examples.append(FunctionMap(splitting, lambda n: (c * (1.0 - 1.0 / n[1]), 1.0), f"cocycle:{c:g}"))
    elif name.startswith('dihedral'):
        for d in range(1, splitting.n):
            if (splitting.n // math.gcd(splitting.n, d)) % 2 == 0:
                examples.append(build_map(splitting, f"hom:{d}"))
    return examples
