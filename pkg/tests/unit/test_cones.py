import csv
import math
import os

import pytest

from src.cones.cones import (ConeFamily, ConeHalf, ConeSpec, cone_contains, export_cone_sweep, half_shift_margin,
                             minimal_opening, power_cone_bound, power_margin, sample_cone)
from src.error.errors import AxisMissing, InvalidArgument
from src.groups.abelian import AbelianSplitting
from src.sampling.halton import HaltonSampler


class TestMembership:
    """Cone membership on the Euclidean plane, where every side has a closed form."""

    def test_split_cone(self, plane):
        cone = ConeSpec(ConeFamily.SPLIT_LEFT, 1.0)
        assert cone_contains(plane, cone, (1.0, 2.0))
        assert not cone_contains(plane, cone, (3.0, 1.0))
        assert cone_contains(plane, cone, (0.0, 0.0))

    def test_vertex(self, plane):
        """Test that membership is decided for p^-1 g."""
        cone = ConeSpec(ConeFamily.SPLIT_LEFT, 1.0, vertex=(1.0, 1.0))
        assert cone_contains(plane, cone, (2.0, 3.0))
        assert not cone_contains(plane, cone, (3.0, 1.0))

    def test_axis_families(self, plane):
        """Test the closed and strict axis cones at the boundary opening."""
        assert cone_contains(plane, ConeSpec(ConeFamily.AXIS, 0.6), (3.0, 4.0))
        assert not cone_contains(plane, ConeSpec(ConeFamily.AXIS, 0.5), (3.0, 4.0))
        assert cone_contains(plane, ConeSpec(ConeFamily.AXIS_STRICT, 0.7), (3.0, 4.0))
        assert not cone_contains(plane, ConeSpec(ConeFamily.AXIS_STRICT, 0.5), (3.0, 4.0))

    def test_half_cones(self, plane):
        plus = ConeSpec(ConeFamily.SPLIT_LEFT, 1.0, half=ConeHalf.PLUS)
        minus = ConeSpec(ConeFamily.SPLIT_LEFT, 1.0, half=ConeHalf.MINUS)
        assert not cone_contains(plane, plus, (1.0, -2.0))
        assert cone_contains(plane, minus, (1.0, -2.0))

    def test_half_cone_needs_axis(self):
        s = AbelianSplitting(1, 2)
        with pytest.raises(AxisMissing):
            cone_contains(s, ConeSpec(ConeFamily.SPLIT_LEFT, 1.0, half=ConeHalf.PLUS), (1.0, 1.0, 1.0))

    def test_negative_opening(self):
        with pytest.raises(InvalidArgument):
            ConeSpec(ConeFamily.AXIS, -0.1)

    def test_dihedral_split_cone(self, d4):
        """Test r^2 s, whose N part has length 2 and H part length 1."""
        assert minimal_opening(d4, ConeFamily.SPLIT_LEFT, (2, 1)) == 2.0
        assert cone_contains(d4, ConeSpec(ConeFamily.SPLIT_LEFT, 2.0), (2, 1))
        assert not cone_contains(d4, ConeSpec(ConeFamily.SPLIT_LEFT, 1.5), (2, 1))


class TestMinimalOpening:
    """The smallest opening whose cone contains a point."""

    def test_plane_values(self, plane):
        assert minimal_opening(plane, ConeFamily.SPLIT_LEFT, (3.0, 1.0)) == pytest.approx(3.0)
        assert minimal_opening(plane, ConeFamily.SPLIT_LEFT, (0.0, 1.0)) == 0.0
        assert minimal_opening(plane, ConeFamily.SPLIT_LEFT, (1.0, 0.0)) == math.inf
        assert minimal_opening(plane, ConeFamily.AXIS, (3.0, 4.0)) == pytest.approx(0.6)

    def test_outside_half(self, plane):
        assert minimal_opening(plane, ConeFamily.SPLIT_LEFT, (1.0, -2.0), half=ConeHalf.PLUS) == math.inf

    def test_consistent_with_membership(self, heisenberg):
        """Test that every point is in the cone of its own minimal opening."""
        for g in heisenberg.group.sample(30, HaltonSampler(5)):
            for family in (ConeFamily.SPLIT_LEFT, ConeFamily.SPLIT_RIGHT, ConeFamily.AXIS):
                alpha = minimal_opening(heisenberg, family, g)
                if math.isfinite(alpha):
                    assert cone_contains(heisenberg, ConeSpec(family, alpha * (1.0 + 1e-9)), g)


class TestConeChains:
    """Powers and half shifts of cone points."""

    def test_power_cone_bound(self):
        assert power_cone_bound(1.0, 2) == 4.0
        assert power_cone_bound(0.5, 3) == 7.5
        with pytest.raises(InvalidArgument):
            power_cone_bound(-1.0, 2)
        with pytest.raises(InvalidArgument):
            power_cone_bound(1.0, 1)

    def test_power_margin_plane(self, plane):
        assert power_margin(plane, 1.0, (1.0, 2.0), 2) == pytest.approx(-14.0)
        assert power_margin(plane, 1.0, (3.0, 1.0), 2) is None

    def test_power_margin_affine(self, affine):
        """Test that powers of split-cone points stay in the enlarged cone."""
        points = sample_cone(affine, ConeSpec(ConeFamily.SPLIT_LEFT, 1.0), 50, HaltonSampler(2))
        assert points
        for g in points:
            for k in (2, 3):
                assert power_margin(affine, 1.0, g, k) <= 1e-6

    def test_half_shift(self, plane):
        """Test h(t)·x against the half cone of opening alpha + 2."""
        assert half_shift_margin(plane, 1.0, 1.0, (1.0, 1.0)) <= 0.0
        assert half_shift_margin(plane, 1.0, 1.0, (1.0, -1.0)) is None
        assert half_shift_margin(plane, 1.0, -1.0, (0.5, -1.0), ConeHalf.MINUS) <= 0.0


class TestSampling:
    """Rejection sampling and the CSV sweep."""

    def test_sample_cone_with_vertex(self, plane):
        cone = ConeSpec(ConeFamily.SPLIT_LEFT, 0.5, vertex=(1.0, 1.0))
        points = sample_cone(plane, cone, 40, HaltonSampler(9))
        assert 0 < len(points) <= 40
        assert all(cone_contains(plane, cone, g) for g in points)

    def test_export_sweep(self, plane, temp_data_dir):
        path = os.path.join(temp_data_dir, 'sweep.csv')
        assert export_cone_sweep(plane, [(1.0, 2.0), (3.0, 4.0)], path) == 2
        with open(path, newline='') as f:
            rows = list(csv.reader(f))
        assert rows[0] == ['g0', 'g1', 'Axis', 'AxisStrict', 'SplitLeft', 'SplitRight',
                           'SplitLeftPlus', 'SplitLeftMinus']
        assert len(rows) == 3
        assert float(rows[1][4]) == pytest.approx(0.5)
        assert float(rows[1][7]) == math.inf

    def test_export_sweep_without_axis(self, temp_data_dir):
        """Test that the half columns are left out when H has no axis."""
        s = AbelianSplitting(1, 2)
        path = os.path.join(temp_data_dir, 'sweep.csv')
        export_cone_sweep(s, [(1.0, 1.0, 1.0)], path)
        with open(path, newline='') as f:
            header = next(csv.reader(f))
        assert 'SplitLeftPlus' not in header
