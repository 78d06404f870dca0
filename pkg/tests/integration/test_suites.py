import pytest

from src.config import DEFAULT_TOLERANCES
from src.groups.zoo import load_splitting
from src.monitoring.metrics import CheckCollector
from src.suites import SUITE_NAMES, SuiteContext, run_suite, shipped_maps

SUITES = [name for name in SUITE_NAMES if name != 'all']


def _run(spec, suite, samples, exhaustive=False, seed=0):
    splitting = load_splitting(spec)
    collector = CheckCollector(suite, spec, None, seed, DEFAULT_TOLERANCES.to_dict(), [])
    context = SuiteContext(splitting, shipped_maps(splitting), samples, seed, collector, exhaustive=exhaustive)
    run_suite(suite, context)
    return collector.close()


def _failures(report):
    return [(c.check_id, c.violations, c.worst_margin) for c in report.checks if c.violations]


@pytest.mark.integration
class TestSuites:
    """Every suite on the shipped instances with small samples."""

    @pytest.mark.parametrize('suite', SUITES)
    def test_plane(self, suite):
        report = _run('abelian:1,1', suite, 30)
        assert report.passed, _failures(report)
        assert report.checks

    @pytest.mark.parametrize('suite', SUITES)
    @pytest.mark.parametrize('spec', ['dihedral:4', 'dihedral:8'])
    def test_dihedral_exhaustive(self, spec, suite):
        report = _run(spec, suite, 20, exhaustive=True)
        assert report.passed, _failures(report)

    @pytest.mark.slow
    @pytest.mark.parametrize('suite', SUITES)
    @pytest.mark.parametrize('spec', ['heisenberg', 'affine', 'affine:swap', 'abelian:2,1'])
    def test_continuous(self, spec, suite):
        report = _run(spec, suite, 25, seed=3)
        assert report.passed, _failures(report)

    def test_shipped_maps(self):
        """Test that every continuous instance ships a map whose graph is not a subgroup."""
        names = [phi.name for phi in shipped_maps(load_splitting('abelian:1,1'))]
        assert names == ['const', 'hom:0.5', 'linear:2', 'sin']
        assert [phi.name for phi in shipped_maps(load_splitting('heisenberg'))][-1] == 'hom:0.3,0.2'

    def test_all_runs_every_suite(self):
        report = _run('dihedral:4', 'all', 10, exhaustive=True)
        prefixes = {c.check_id.split('.')[0] for c in report.checks}
        assert {'group', 'translation', 'cones', 'lipschitz', 'quasi', 'subgroups'} <= prefixes

    def test_axis_separation_reports_projection_constant(self):
        """Test that the axis cones are also evaluated with k = C3 and reported."""
        report = _run('abelian:1,1', 'lipschitz', 30)
        record = next(c for c in report.checks if c.check_id == 'lipschitz.axis_separation')
        line = record.constants['linear:2']
        assert line['C3'] == pytest.approx(1.0, abs=1e-3)
        assert line['printed_constant_holds'] is True
        assert line['separated_with_C3'] == 5
