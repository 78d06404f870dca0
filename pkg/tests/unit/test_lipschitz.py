import math

import pytest

from src.cones.cones import ConeFamily
from src.error.errors import AxisMissing, DegenerateSample, InvalidArgument, NotConverged, PremiseFailed, WrongNormalSide
from src.graphs.maps import FunctionMap, build_map
from src.groups.abelian import AbelianSplitting
from src.groups.splitting_constants import estimate_splitting_constants
from src.lipschitz.estimators import (condition_constant, condition_constants, domain_pairs, domain_triples,
                                      fssc_constant, fssc_ratio)
from src.lipschitz.separation import cone_separation_test, halfcone_graph_test, split_separation
from src.lipschitz.stability import (graph_projection_constant, limit_stability_check, metric_vs_intrinsic,
                                     projection_bound)
from src.sampling.halton import HaltonSampler

ORIGIN = (0.0, 0.0)


@pytest.fixture
def slope_two(plane):
    return build_map(plane, 'linear:2')


@pytest.fixture
def line_points(slope_two):
    return slope_two.sample_domain(100, HaltonSampler(3))


class TestFSSC:
    """Sampled intrinsic Lipschitz constants."""

    def test_linear_slope(self, slope_two):
        """Test that a line of slope 2 has constant 2."""
        pairs = domain_pairs(slope_two, 100, HaltonSampler(0))
        estimate = fssc_constant(slope_two, pairs)
        assert estimate.estimate == pytest.approx(2.0)
        assert estimate.condition == 'FSSC'
        assert estimate.samples == len(pairs) - estimate.skipped

    def test_dihedral_exact(self, d4):
        """Test 1/2 for the graph {1, r^2 s} in D4."""
        phi = build_map(d4, 'hom:2')
        pairs = domain_pairs(phi, 0, HaltonSampler(0), exhaustive=True)
        assert len(pairs) == 2
        assert len(domain_triples(phi, 0, HaltonSampler(0), exhaustive=True)) == 8
        assert fssc_constant(phi, pairs).estimate == 0.5

    def test_ratio(self, plane):
        assert fssc_ratio(build_map(plane, 'const'), (1.0, 2.0), (4.0, 6.0)) == (4.0, 3.0)

    def test_degenerate(self, slope_two):
        """Test that pairs of equal points leave nothing to estimate."""
        with pytest.raises(DegenerateSample):
            fssc_constant(slope_two, [((0.5, 0.0), (0.5, 0.0))])


class TestConditions:
    """The six equivalent conditions at a base point."""

    def test_plane_values(self, slope_two, line_points):
        estimates = condition_constants(slope_two, ORIGIN, line_points)
        assert estimates[1].estimate == pytest.approx(2.0)
        assert estimates[2].estimate == pytest.approx(2.0)
        assert estimates[3].estimate == pytest.approx(2.0)
        assert estimates[4].estimate == pytest.approx(math.sqrt(5.0))
        assert estimates[5].estimate == pytest.approx(math.sqrt(5.0))

    def test_coherence_heisenberg(self, heisenberg):
        """Test C1 = C2 = C3 with N normal and C5 <= 1 + C1."""
        phi = build_map(heisenberg, 'linear:0.8')
        points = phi.sample_domain(200, HaltonSampler(4))
        m = heisenberg.group.identity
        estimates = condition_constants(phi, m, points)
        assert estimates[2].estimate == pytest.approx(estimates[1].estimate, rel=1e-9)
        assert estimates[3].estimate == pytest.approx(estimates[1].estimate, rel=1e-9)
        assert estimates[5].estimate <= 1.0 + estimates[1].estimate + 1e-9

    def test_sixth_condition(self, slope_two, line_points):
        """Test the cone of opening 1/L against one of a wider opening."""
        assert condition_constant(slope_two, 6, ORIGIN, line_points, opening=1.0 / 2.002).estimate == 0.0
        assert condition_constant(slope_two, 6, ORIGIN, line_points, opening=1.0).estimate == math.inf
        assert condition_constant(slope_two, 6, ORIGIN, line_points, opening=0.4,
                                  include_vertex=True).estimate == math.inf

    def test_invalid_conditions(self, slope_two, line_points):
        with pytest.raises(InvalidArgument):
            condition_constant(slope_two, 6, ORIGIN, line_points)
        with pytest.raises(InvalidArgument):
            condition_constant(slope_two, 7, ORIGIN, line_points)


class TestSeparation:
    """Cones at graph points against the rest of the graph."""

    def test_split_family(self, slope_two, line_points):
        assert cone_separation_test(slope_two, ORIGIN, 2.0, line_points).separated
        result = cone_separation_test(slope_two, ORIGIN, 1.0, line_points)
        assert not result.separated
        assert result.depth > 0.0
        assert result.witness is not None

    def test_vertex_excluded(self, slope_two):
        """Test that the vertex is not its own witness."""
        result = split_separation(slope_two, ORIGIN, 10.0, [ORIGIN])
        assert result.separated
        assert result.skipped == 1

    def test_axis_family(self, slope_two, line_points):
        """Test the opening 1/((k+1)L) with k = 1 on the plane."""
        assert cone_separation_test(slope_two, ORIGIN, 2.0, line_points, ConeFamily.AXIS_STRICT,
                                    splitting_constant=1.0).separated
        assert not cone_separation_test(slope_two, ORIGIN, 0.2, line_points, ConeFamily.AXIS_STRICT,
                                        splitting_constant=1.0).separated

    def test_axis_family_with_projection_constant(self, plane, slope_two, line_points):
        """Test the opening 1/((k+1)L) with k the sampled constant of pi_N at 1."""
        k = estimate_splitting_constants(plane, n_samples=200, seed=0, subgroup_distance=False).c3
        assert k == pytest.approx(1.0, abs=1e-3)
        assert cone_separation_test(slope_two, ORIGIN, 2.0 * (1.0 + 1e-3), line_points, ConeFamily.AXIS_STRICT,
                                    splitting_constant=k).separated

    def test_arguments(self, slope_two, line_points):
        with pytest.raises(InvalidArgument):
            cone_separation_test(slope_two, ORIGIN, 0.0, line_points)
        with pytest.raises(InvalidArgument):
            cone_separation_test(slope_two, ORIGIN, 2.0, line_points, ConeFamily.AXIS_STRICT)
        with pytest.raises(InvalidArgument):
            cone_separation_test(slope_two, ORIGIN, 2.0, line_points, ConeFamily.SPLIT_RIGHT)


class TestHalfCones:
    """Half cones at graph points against the super- and subgraph."""

    @pytest.mark.parametrize('slope', [1.0, 2.0])
    def test_contained_at_constant(self, plane, slope):
        phi = build_map(plane, f"linear:{slope}")
        result = halfcone_graph_test(phi, slope, [ORIGIN, (0.5, 0.0)], 50, HaltonSampler(1))
        assert result.contained
        assert result.checked > 0

    @pytest.mark.parametrize('slope', [1.0, 2.0])
    def test_witness_below_constant(self, plane, slope):
        phi = build_map(plane, f"linear:{slope}")
        result = halfcone_graph_test(phi, slope / 2.0, [ORIGIN, (0.5, 0.0)], 50, HaltonSampler(1))
        assert not result.contained
        assert result.base is not None

    def test_needs_axis(self):
        s = AbelianSplitting(1, 2)
        phi = FunctionMap(s, lambda n: s.group.identity, 'zero')
        with pytest.raises(AxisMissing):
            halfcone_graph_test(phi, 1.0, [(0.0, 0.0, 0.0)], 10, HaltonSampler(0))


class TestStability:
    """Projection bounds, pointwise limits and the metric comparison."""

    def test_projection_constant(self, plane):
        """Test that pi_H on a line of slope 1/2 is within alpha/(1 - alpha) = 1."""
        phi = build_map(plane, 'linear:0.5')
        estimate, alpha = graph_projection_constant(phi, ORIGIN, 2.0, phi.sample_domain(100, HaltonSampler(2)))
        assert alpha == pytest.approx(0.5)
        assert estimate.estimate == pytest.approx(0.5 / math.sqrt(1.25))
        assert estimate.estimate <= projection_bound(alpha)

    def test_projection_bound(self):
        assert projection_bound(0.5) == 1.0
        with pytest.raises(InvalidArgument):
            projection_bound(1.0)

    def test_limit(self, plane):
        """Test slopes 1 + 10^-j converging to slope 1."""
        maps = [build_map(plane, f"linear:{1.0 + 10.0 ** -j}") for j in range(8)]
        pairs = domain_pairs(maps[0], 100, HaltonSampler(6))
        report = limit_stability_check(maps, build_map(plane, 'linear:1'), pairs)
        assert report.holds
        assert report.lipschitz == pytest.approx(2.0)
        assert report.epsilon <= 1.1e-7

    def test_limit_failures(self, plane):
        pairs = domain_pairs(build_map(plane, 'const'), 50, HaltonSampler(6))
        with pytest.raises(PremiseFailed):
            limit_stability_check([build_map(plane, 'linear:2')], build_map(plane, 'linear:2'), pairs, lipschitz=1.0)
        with pytest.raises(NotConverged):
            limit_stability_check([build_map(plane, 'linear:2')], build_map(plane, 'linear:1'), pairs)
        with pytest.raises(InvalidArgument):
            limit_stability_check([], build_map(plane, 'linear:1'), pairs)

    def test_metric_vs_intrinsic(self, slope_two):
        pairs = domain_pairs(slope_two, 100, HaltonSampler(0))
        intrinsic, metric = metric_vs_intrinsic(slope_two, pairs)
        assert intrinsic.estimate == pytest.approx(2.0)
        assert metric.estimate == pytest.approx(math.sqrt(5.0))
        assert metric.estimate <= 1.0 + intrinsic.estimate

    def test_wrong_normal_side(self, heisenberg):
        phi = build_map(heisenberg, 'linear:1')
        with pytest.raises(WrongNormalSide):
            metric_vs_intrinsic(phi, domain_pairs(phi, 10, HaltonSampler(0)))
