import pytest

from src.error.errors import NotASubgroup, PremiseFailed
from src.graphs.maps import FunctionMap, build_map
from src.lipschitz.estimators import domain_pairs
from src.sampling.halton import HaltonSampler
from src.subgroups.identities import (identity_residuals, power_bound_check, power_premise_constant,
                                      subgroup_closure_check, subgroup_examples, uniqueness_residual)


class TestExamples:
    """Shipped maps whose graphs are subgroups."""

    def test_dihedral_examples(self, d4):
        """Test const and hom:d for every d with r^d of even order."""
        names = [phi.name for phi in subgroup_examples(d4)]
        assert names == ['const', 'hom:1', 'hom:2', 'hom:3']

    @pytest.mark.parametrize('fixture', ['plane', 'heisenberg', 'affine', 'affine_swap', 'd4', 'd8'])
    def test_closed(self, request, fixture):
        """Test closure and the identities for every shipped example."""
        splitting = request.getfixturevalue(fixture)
        exhaustive = splitting.n_elements() is not None
        for phi in subgroup_examples(splitting):
            pairs = domain_pairs(phi, 60, HaltonSampler(5), exhaustive=exhaustive)
            closure = subgroup_closure_check(phi, pairs)
            assert closure.closed, phi.name
            assert identity_residuals(phi, pairs).max_residual() <= 1e-9


class TestNotASubgroup:
    """Graphs that fail closure."""

    def test_shifted_constant(self, plane):
        """Test that a nonzero constant does not give a subgroup."""
        phi = build_map(plane, 'const:0,1')
        pairs = domain_pairs(phi, 20, HaltonSampler(0))
        closure = subgroup_closure_check(phi, pairs)
        assert not closure.closed
        assert closure.witness is not None
        with pytest.raises(NotASubgroup):
            identity_residuals(phi, pairs)

    def test_square(self, plane):
        """Test that the graph of x -> x^2 is not closed under products."""
        phi = FunctionMap(plane, lambda n: (0.0, n[0] ** 2), 'square')
        closure = subgroup_closure_check(phi, domain_pairs(phi, 20, HaltonSampler(0)))
        assert not closure.closed
        assert closure.witness is not None
        assert closure.residual > 1e-9

    def test_heisenberg_vertical_dependence(self, heisenberg):
        """Test that a map reading the central coordinate is not a crossed homomorphism."""
        phi = build_map(heisenberg, 'hom:0.3,0.2')
        with pytest.raises(NotASubgroup):
            identity_residuals(phi, domain_pairs(phi, 50, HaltonSampler(1)))


class TestPowerBound:
    """d(1, phi(n)) <= C d(1, n^k) implies an intrinsic constant Ck."""

    @pytest.mark.parametrize('k', [1, 2])
    def test_plane(self, plane, k):
        phi = build_map(plane, 'hom:0.5')
        pairs = domain_pairs(phi, 60, HaltonSampler(2))
        constant = power_premise_constant(phi, k, pairs)
        assert constant == pytest.approx(0.5 / k)
        ok, estimate = power_bound_check(phi, constant, k, pairs)
        assert ok
        assert estimate == pytest.approx(0.5)

    def test_premise_failure(self, plane):
        phi = build_map(plane, 'hom:0.5')
        pairs = domain_pairs(phi, 20, HaltonSampler(2))
        with pytest.raises(PremiseFailed) as info:
            power_bound_check(phi, 0.1, 1, pairs)
        assert info.value.witness is not None

    def test_heisenberg_square(self, heisenberg):
        phi = build_map(heisenberg, 'hom:0.5,0')
        pairs = domain_pairs(phi, 80, HaltonSampler(3))
        constant = power_premise_constant(phi, 2, pairs)
        ok, _ = power_bound_check(phi, constant, 2, pairs)
        assert ok


class TestUniqueness:
    def test_projection_is_unique(self, heisenberg, affine_swap):
        """Test pi_N(h·pi_N(h^-1 n)) = n."""
        for s in (heisenberg, affine_swap):
            ns = s.sample_n(50, HaltonSampler(11))
            hs = s.sample_h(50, HaltonSampler(12))
            assert uniqueness_residual(s, list(zip(ns, hs))) <= 1e-9
