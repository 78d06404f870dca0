import argparse
import json
import sys
from typing import Any, Dict, List, Optional

from src.cones.cones import export_cone_sweep
from src.config import DEFAULT_TOLERANCES, Tolerances, default_search, default_seed
from src.error.error_handler import EXIT_OK, EXIT_VIOLATIONS, ErrorHandler
from src.error.errors import InvalidArgument
from src.error.logger import get_logger
from src.graphs.maps import IntrinsicMap, build_map
from src.groups.core import Splitting
from src.groups.splitting_constants import estimate_splitting_constants, projection_constant
from src.groups.zoo import load_splitting
from src.lipschitz.estimators import (CONDITIONS, condition_constant, condition_constants, domain_pairs,
                                      domain_triples, fssc_constant)
from src.models import json_number
from src.monitoring.metrics import CheckCollector
from src.quasi.distance import quasi_distance_report, relative_elements
from src.sampling.halton import Box, HaltonSampler
from src.suites.runner import SUITE_NAMES, SuiteContext, run_suite, shipped_maps

logger = get_logger(__name__)

error_handler = ErrorHandler()

DEFAULT_SAMPLES = 1000
SPLITTING_CAP = 2000
# Relative inflation of the sampled FSSC constant for the condition-6 opening
SEPARATION_SLACK = 1e-3


def _add_instance_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--group', required=True, help="abelian:m,k | heisenberg | affine | affine:swap | dihedral:n")
    parser.add_argument('--samples', type=int, default=DEFAULT_SAMPLES, help="sample count per check")
    parser.add_argument('--seed', type=int, default=None, help="Halton seed (defaults to INTRINLIP_SEED)")
    parser.add_argument('--tol', type=float, default=None, help="override of the exact-identity tolerance")
    parser.add_argument('--box', default=None, help="lo,hi for every axis or one lo,hi pair per axis")
    parser.add_argument('--exhaustive', action='store_true', help="enumerate finite groups instead of sampling")
    parser.add_argument('--out', default=None, help="output file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='intrinlip',
                                     description="Intrinsically Lipschitz maps on split metric groups")
    commands = parser.add_subparsers(dest='command', required=True)

    verify = commands.add_parser('verify', help="run a verification suite and write a JSON report")
    _add_instance_arguments(verify)
    verify.add_argument('--suite', default='all', help=f"one of {', '.join(SUITE_NAMES)}")
    verify.add_argument('--map', default=None, help="map under test; the instance's shipped maps otherwise")

    estimate = commands.add_parser('estimate', help="estimate the constants of one map")
    _add_instance_arguments(estimate)
    estimate.add_argument('--map', required=True, help="const:... | linear:l | hom:... | table:path")

    sweep = commands.add_parser('sweep', help="write minimal cone openings of sampled points as CSV")
    _add_instance_arguments(sweep)
    return parser


def _tolerances(args: argparse.Namespace) -> Tolerances:
    return DEFAULT_TOLERANCES.with_exact(args.tol)


def _box(args: argparse.Namespace, splitting: Splitting) -> Optional[Box]:
    if args.box is None:
        return None
    return Box.parse(args.box, splitting.group.chart_dim)


def _require_samples(args: argparse.Namespace) -> None:
    if args.samples < 1:
        raise InvalidArgument(f"--samples must be positive (got {args.samples})")


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        print(text)
        return
    with open(path, 'w') as f:
        f.write(text)
        f.write('\n')
    logger.info(f"Report written to {path}")


def verify_command(args: argparse.Namespace, argv: List[str]) -> int:
    """Run a suite; exit 0 iff no check recorded a violation."""
    splitting = load_splitting(args.group)
    tolerances = _tolerances(args)
    maps = [build_map(splitting, args.map)] if args.map else shipped_maps(splitting)
    collector = CheckCollector(args.suite, splitting.name, args.map, args.seed, tolerances.to_dict(), argv)
    context = SuiteContext(splitting, maps, args.samples, args.seed, collector, tolerances,
                           _box(args, splitting), args.exhaustive, default_search())
    run_suite(args.suite, context)
    report = collector.close()
    if args.out:
        collector.save(args.out)
    else:
        print(collector.to_json())
    logger.info(f"Suite '{args.suite}' on {splitting.name}: {report.violations} violations "
                f"in {len(report.checks)} checks ({report.wall_time:.1f} s)")
    return EXIT_OK if report.passed else EXIT_VIOLATIONS


def _base_point(phi: IntrinsicMap, samples: List) -> Any:
    identity = phi.splitting.group.identity
    return identity if phi.contains(identity) else samples[0]


def estimate_report(splitting: Splitting, phi: IntrinsicMap, samples: int, seed: int,
                    box: Optional[Box] = None, exhaustive: bool = False,
                    tolerances: Tolerances = DEFAULT_TOLERANCES) -> Dict[str, Any]:
    """
    Every constant attached to one map on one instance.

    Returns:
        A JSON-ready dict with the FSSC constant, the six conditions at a base
        point, the splitting constants and the quasi-distance report

    Raises:
        DegenerateSample: The domain sample is empty or degenerate
    """
    search = default_search()
    sampler = HaltonSampler(seed)
    pairs = domain_pairs(phi, samples, sampler, box, exhaustive)
    points = phi.domain_elements() if exhaustive else None
    if points is None:
        points = phi.sample_domain(samples, sampler.child(31), box)
    if not points:
        raise InvalidArgument(f"{phi.name} has no domain points in the sampling box")
    fssc = fssc_constant(phi, pairs, tolerances)
    m = _base_point(phi, points)

    conditions = {f"C{c}": e.to_dict()
                  for c, e in sorted(condition_constants(phi, m, points, (1, 2, 3, 4, 5), tolerances).items())}
    opening = 1.0 / (fssc.estimate * (1.0 + SEPARATION_SLACK) + tolerances.sample(fssc.estimate))
    sixth = condition_constant(phi, 6, m, points, opening=opening, tolerances=tolerances)
    conditions['C6'] = dict(sixth.to_dict(), opening=opening)

    count = min(samples, SPLITTING_CAP)
    constants = estimate_splitting_constants(splitting, box, count, seed, tolerances, search, exhaustive,
                                             extra=relative_elements(phi, pairs))
    triples = domain_triples(phi, samples, sampler, box, exhaustive)
    triple_pairs = [pair for a, b, c in triples for pair in ((a, b), (b, a), (a, c), (c, a), (b, c), (c, b))]
    quasi_constants = estimate_splitting_constants(splitting, box, count, seed, tolerances, search, exhaustive,
                                                   extra=relative_elements(phi, triple_pairs),
                                                   subgroup_distance=False)
    quasi = quasi_distance_report(phi, triples, pairs, projection_constant(quasi_constants),
                                  fssc_constant(phi, triple_pairs, tolerances).estimate,
                                  box.describe() if box else '', tolerances)
    return {
        'group': splitting.name,
        'map': phi.name,
        'seed': seed,
        'samples': samples,
        'base_point': list(m),
        'fssc': fssc.to_dict(),
        'conditions': conditions,
        'condition_statements': {f"C{k}": v for k, v in CONDITIONS.items()},
        'splitting_constants': constants.to_dict(),
        'quasi_distance': quasi.to_dict(),
        'tolerances': tolerances.to_dict()
    }


def estimate_command(args: argparse.Namespace, argv: List[str]) -> int:
    _require_samples(args)
    splitting = load_splitting(args.group)
    phi = build_map(splitting, args.map)
    report = estimate_report(splitting, phi, args.samples, args.seed, _box(args, splitting), args.exhaustive,
                             _tolerances(args))
    report['command'] = argv
    logger.info(f"{phi.name} on {splitting.name}: FSSC constant {json_number(report['fssc']['estimate'])}")
    _emit(json.dumps(report, sort_keys=True, indent=2), args.out)
    return EXIT_OK


def sweep_command(args: argparse.Namespace, argv: List[str]) -> int:
    _require_samples(args)
    if not args.out:
        raise InvalidArgument("sweep needs --out <file.csv>")
    splitting = load_splitting(args.group)
    group = splitting.group
    elements = group.elements()
    if args.exhaustive and elements is not None:
        points = elements
    else:
        points = group.sample(args.samples, HaltonSampler(args.seed), _box(args, splitting))
    export_cone_sweep(splitting, points, args.out, search=default_search())
    return EXIT_OK


COMMANDS = {
    'verify': verify_command,
    'estimate': estimate_command,
    'sweep': sweep_command,
}


def _join_box_values(argv: List[str]) -> List[str]:
    """Attach the value of ``--box`` to its flag so that negative bounds like -1,1 parse."""
    joined: List[str] = []
    i = 0
    while i < len(argv):
        if argv[i] == '--box' and i + 1 < len(argv):
            joined.append(f"--box={argv[i + 1]}")
            i += 2
            continue
        joined.append(argv[i])
        i += 1
    return joined


def main(argv: Optional[List[str]] = None) -> int:
    """Parse the command line, run one command and return its exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_join_box_values(argv))
    except SystemExit as e:
        return int(e.code or 0)
    if args.seed is None:
        args.seed = default_seed()
    try:
        return COMMANDS[args.command](args, argv)
    except Exception as e:
        message = error_handler.handle_error(e, context={'command': args.command})
        print(message, file=sys.stderr)
        return error_handler.exit_code(e)


if __name__ == '__main__':
    sys.exit(main())
