import json
import logging
import math
import os

import numpy as np
import pytest

from src.config import DEFAULT_TOLERANCES, Tolerances, default_search, default_seed
from src.error.error_handler import EXIT_INTERNAL, EXIT_INVALID, EXIT_VIOLATIONS, ErrorHandler
from src.error.errors import DegenerateSample, InvalidArgument, InvalidSpec, NotASubgroup, OutsideDomain
from src.error.logger import get_logger
from src.models import Supremum, json_number
from src.monitoring.metrics import CheckCollector
from src.sampling.halton import Box, HaltonSampler


class TestTolerances:
    """Tolerance settings and environment configuration."""

    def test_defaults(self):
        tol = Tolerances()
        assert (tol.exact, tol.metric, tol.inf, tol.sample_rel) == (1e-9, 1e-7, 1e-6, 1e-6)
        assert tol.sample(1.0) == pytest.approx(2e-6)
        assert set(tol.to_dict()) == {'exact', 'metric', 'inf', 'sample_rel'}

    def test_with_exact(self):
        assert DEFAULT_TOLERANCES.with_exact(None) is DEFAULT_TOLERANCES
        assert DEFAULT_TOLERANCES.with_exact(1e-5).exact == 1e-5
        assert DEFAULT_TOLERANCES.with_exact(1e-5).metric == DEFAULT_TOLERANCES.metric

    def test_environment(self, monkeypatch):
        monkeypatch.setenv('INTRINLIP_SEED', '7')
        monkeypatch.setenv('INTRINLIP_GRID_POINTS', '64')
        assert default_seed() == 7
        assert default_search().grid_points == 64
        monkeypatch.delenv('INTRINLIP_SEED')
        monkeypatch.delenv('INTRINLIP_GRID_POINTS')
        assert default_seed() == 0
        assert default_search().grid_points == 512


class TestErrorHandler:
    """Messages and exit codes of the CLI contract."""

    def setup_method(self):
        self.handler = ErrorHandler()

    @pytest.mark.parametrize('error, code', [
        (InvalidSpec('bad group'), EXIT_INVALID),
        (InvalidArgument('bad box'), EXIT_INVALID),
        (DegenerateSample('empty'), EXIT_INVALID),
        (OutsideDomain((1, 0)), EXIT_INVALID),
        (NotASubgroup('open'), EXIT_VIOLATIONS),
        (ValueError('boom'), EXIT_INTERNAL),
    ])
    def test_exit_codes(self, error, code):
        assert self.handler.exit_code(error) == code

    def test_messages(self):
        assert self.handler.handle_error(InvalidSpec('torus')).startswith('Invalid specification')
        message = self.handler.handle_error(ValueError('boom'), context={'command': 'verify'})
        assert 'verify' in message

    def test_custom_response(self):
        self.handler.add_error_response('invalid_spec', lambda e, c: 'custom', exit_code=EXIT_INTERNAL)
        assert self.handler.handle_error(InvalidSpec('x')) == 'custom'
        assert self.handler.exit_code(InvalidSpec('x')) == EXIT_INTERNAL


class TestCollector:
    """Check records and the JSON report."""

    def _collector(self):
        return CheckCollector('cones', 'heisenberg', None, 3, DEFAULT_TOLERANCES.to_dict(), ['verify'])

    def test_violations(self):
        collector = self._collector()
        collector.check('cones.chain', 'anchor')
        collector.observe('cones.chain', -1.0, 1e-9)
        collector.observe('cones.chain', 0.5, 1e-9)
        collector.skip('cones.chain', 2)
        record = collector.finish('cones.chain')
        assert (record.samples, record.skipped, record.violations) == (2, 2, 1)
        assert record.worst_margin == 0.5
        report = collector.close()
        assert not report.passed

    def test_same_record(self):
        collector = self._collector()
        assert collector.check('a', 'x') is collector.check('a', 'y')
        assert len(collector.close().checks) == 1

    def test_json_and_save(self, temp_data_dir):
        collector = self._collector()
        collector.check('cones.power', 'anchor')
        collector.constant('cones.power', 'alpha', math.inf)
        collector.close()
        data = json.loads(collector.to_json())
        assert data['passed'] is True
        assert data['checks'][0]['constants']['alpha'] == 'inf'
        path = os.path.join(temp_data_dir, 'nested', 'report.json')
        collector.save(path)
        with open(path) as f:
            assert json.load(f)['group'] == 'heisenberg'


class TestModels:
    def test_json_number(self):
        assert json_number(math.inf) == 'inf'
        assert json_number(-math.inf) == '-inf'
        assert json_number(math.nan) == 'nan'
        assert json_number(1.5) == 1.5
        assert json_number(None) is None

    def test_supremum(self):
        sup = Supremum()
        sup.add(1.0, 2.0, 'a')
        sup.add(3.0, 0.0, 'b')
        sup.add(3.0, 2.0, 'c')
        assert (sup.value, sup.witness, sup.count, sup.skipped) == (1.5, 'c', 2, 1)
        other = Supremum()
        other.add(4.0, 1.0, 'd')
        merged = sup.merge(other)
        assert (merged.value, merged.witness, merged.count) == (4.0, 'd', 3)


class TestSampling:
    """Reproducible Halton draws and sampling boxes."""

    def test_deterministic(self):
        assert np.array_equal(HaltonSampler(3).unit(16, 2), HaltonSampler(3).unit(16, 2))
        assert not np.array_equal(HaltonSampler(3).unit(16, 2), HaltonSampler(3).child(1).unit(16, 2))

    def test_ranges(self):
        points = HaltonSampler(1).box(50, Box(((2.0, 3.0), (-1.0, 0.0))))
        assert points.shape == (50, 2)
        assert np.all((points[:, 0] >= 2.0) & (points[:, 0] <= 3.0))
        indices = HaltonSampler(1).indices(50, 4)
        assert set(indices[:, 0]) <= {0, 1, 2, 3}

    def test_empty_count(self):
        with pytest.raises(InvalidArgument):
            HaltonSampler(0).unit(0, 2)

    def test_box_parse(self):
        assert Box.parse('-1,1', 2).bounds == ((-1.0, 1.0), (-1.0, 1.0))
        assert Box.parse('0,1,2,3', 2).bounds == ((0.0, 1.0), (2.0, 3.0))
        assert Box.parse('-2,2', 3).describe() == '[-2,2];[-2,2];[-2,2]'

    def test_box_resize(self):
        """Test that only a box with one interval everywhere changes dimension."""
        assert Box.parse('-1,1', 3).resize(2).bounds == ((-1.0, 1.0), (-1.0, 1.0))
        assert Box.parse('0,1,2,3', 2).project((1,)).bounds == ((2.0, 3.0),)
        with pytest.raises(InvalidArgument):
            Box.parse('0,1,2,3', 2).resize(1)

    @pytest.mark.parametrize('text', ['1,0', 'a,b', '1,2,3'])
    def test_box_invalid(self, text):
        with pytest.raises(InvalidArgument):
            Box.parse(text, 2)


def test_logger_name():
    logger = get_logger('intrinlip.test')
    assert isinstance(logger, logging.Logger)
    assert logger.name == 'intrinlip.test'
    assert len(logger.handlers) >= 1
