import math

import pytest

from src.error.errors import WrongNormalSide
from src.graphs.maps import build_map
from src.lipschitz.estimators import domain_pairs, domain_triples, fssc_constant
from src.quasi.distance import (graph_equivalence_constants, graph_map_constant, map_metric_constant,
                                normal_case_identity, quasi_distance, quasi_distance_report,
                                quasi_triangle_constant, relative_elements)
from src.sampling.halton import HaltonSampler


class TestQuasiDistance:
    """d_phi on the domain of an intrinsic map."""

    def test_plane_line(self, plane):
        """Test that d_phi is |x1 - x2| on the plane."""
        phi = build_map(plane, 'linear:3')
        assert quasi_distance(phi, (1.0, 0.0), (-1.5, 0.0)) == pytest.approx(2.5)

    def test_symmetry(self, heisenberg):
        phi = build_map(heisenberg, 'linear:1')
        for a, b in domain_pairs(phi, 40, HaltonSampler(8)):
            assert quasi_distance(phi, a, b) == quasi_distance(phi, b, a)
            assert quasi_distance(phi, a, a) == 0.0

    def test_relative_elements(self, plane):
        phi = build_map(plane, 'linear:1')
        assert relative_elements(phi, [((0.0, 0.0), (1.0, 0.0))]) == [(1.0, 1.0), (-1.0, -1.0)]


class TestEquivalence:
    """d_phi against the distance of G along the graph."""

    @pytest.mark.parametrize('slope', [0.5, 1.0, 2.0])
    def test_line_constants(self, plane, slope):
        """Test c_low = c_high = sqrt(1 + slope^2)."""
        phi = build_map(plane, f"linear:{slope}")
        pairs = domain_pairs(phi, 100, HaltonSampler(1))
        low, high = graph_equivalence_constants(phi, pairs)
        assert low == pytest.approx(math.sqrt(1.0 + slope ** 2))
        assert high == pytest.approx(math.sqrt(1.0 + slope ** 2))
        assert graph_map_constant(phi, pairs).estimate == pytest.approx(high)
        assert map_metric_constant(phi, pairs).estimate == pytest.approx(slope)

    @pytest.mark.parametrize('spec', ['affine', 'affine_swap'])
    def test_graph_map_bound(self, request, spec):
        """Test that Phi is (1 + L)-Lipschitz on pairs not used for the equivalence constants."""
        s = request.getfixturevalue(spec)
        phi = build_map(s, 'hom:0.5')
        pairs = domain_pairs(phi, 80, HaltonSampler(11))
        both = [pair for a, b in pairs for pair in ((a, b), (b, a))]
        lipschitz = fssc_constant(phi, both).estimate
        assert graph_map_constant(phi, pairs).estimate <= 1.0 + lipschitz + 1e-9

    def test_triangle_on_plane(self, plane):
        """Test that d_phi is a true distance when both factors are normal."""
        phi = build_map(plane, 'linear:2')
        triples = domain_triples(phi, 60, HaltonSampler(2))
        assert quasi_triangle_constant(phi, triples).estimate <= 1.0 + 1e-12

    def test_report(self, plane):
        phi = build_map(plane, 'linear:2')
        pairs = domain_pairs(phi, 60, HaltonSampler(3))
        triples = domain_triples(phi, 60, HaltonSampler(3))
        report = quasi_distance_report(phi, triples, pairs, 1.0, 2.0, '[-1,1]')
        assert report.triangle_bound == 3.0
        assert report.quasi_triangle <= report.triangle_bound
        assert report.to_dict()['C'] == 1.0
        assert report.to_dict()['sample_box'] == '[-1,1]'


class TestNormalCodomain:
    """With H normal, d_phi is the distance of N."""

    def test_affine_swap(self, affine_swap):
        phi = build_map(affine_swap, 'hom:0.5')
        pairs = domain_pairs(phi, 80, HaltonSampler(4))
        assert normal_case_identity(phi, pairs) <= 1e-9

    def test_wrong_side(self, heisenberg):
        phi = build_map(heisenberg, 'linear:1')
        with pytest.raises(WrongNormalSide):
            normal_case_identity(phi, domain_pairs(phi, 10, HaltonSampler(0)))
