import csv
import json
import os

import pytest

from src.main import estimate_report, main
from src.graphs.maps import build_map
from src.groups.zoo import load_splitting
from src.sampling.halton import Box


def _load(path):
    with open(path) as f:
        return json.load(f)


@pytest.mark.integration
class TestVerify:
    """intrinlip verify end to end."""

    def test_dihedral_exhaustive(self, temp_data_dir):
        """Test a passing suite with the report written to --out."""
        out = os.path.join(temp_data_dir, 'report.json')
        code = main(['verify', '--group', 'dihedral:4', '--suite', 'translation', '--exhaustive',
                     '--samples', '20', '--seed', '1', '--out', out])
        assert code == 0
        report = _load(out)
        assert report['passed'] is True
        assert report['group'] == 'dihedral:4'
        assert report['seed'] == 1
        assert report['command'][0] == 'verify'

    def test_stdout(self, capsys):
        assert main(['verify', '--group', 'abelian:1,1', '--suite', 'group', '--samples', '20']) == 0
        assert json.loads(capsys.readouterr().out)['suite'] == 'group'

    @pytest.mark.parametrize('argv', [
        ['verify', '--group', 'dihedral:4', '--samples', '0'],
        ['verify', '--group', 'torus', '--samples', '5'],
        ['verify', '--group', 'abelian:1,1', '--suite', 'nope', '--samples', '5'],
        ['verify', '--group', 'abelian:1,1', '--box', '1,0', '--samples', '5'],
        ['verify', '--samples', '5'],
        ['estimate', '--group', 'abelian:1,1'],
    ])
    def test_invalid_input(self, argv):
        """Test exit code 2 for malformed arguments."""
        assert main(argv) == 2

    def test_deterministic(self, temp_data_dir):
        """Test that two runs with one seed agree on everything but the wall time."""
        reports = []
        for name in ('a.json', 'b.json'):
            out = os.path.join(temp_data_dir, name)
            argv = ['verify', '--group', 'affine', '--suite', 'group', '--samples', '30', '--seed', '4',
                    '--out', out]
            assert main(argv) == 0
            report = _load(out)
            report.pop('wall_time')
            report.pop('command')
            reports.append(report)
        assert reports[0] == reports[1]


@pytest.mark.integration
class TestEstimate:
    """intrinlip estimate end to end."""

    def test_linear_line(self, temp_data_dir):
        out = os.path.join(temp_data_dir, 'estimate.json')
        code = main(['estimate', '--group', 'abelian:1,1', '--map', 'linear:2', '--box', '-1,1',
                     '--samples', '60', '--out', out])
        assert code == 0
        report = _load(out)
        assert report['fssc']['estimate'] == pytest.approx(2.0)
        assert report['conditions']['C6']['estimate'] == 0.0
        assert set(report['conditions']) == {'C1', 'C2', 'C3', 'C4', 'C5', 'C6'}
        assert report['quasi_distance']['c_high'] == pytest.approx(5 ** 0.5)

    def test_per_axis_box(self, temp_data_dir):
        """Test a space-separated per-axis box, with the N interval taken from the first axis."""
        out = os.path.join(temp_data_dir, 'estimate.json')
        code = main(['estimate', '--group', 'abelian:1,1', '--map', 'linear:2', '--box', '-2,2,-1,1',
                     '--samples', '60', '--out', out])
        assert code == 0
        report = _load(out)
        assert report['fssc']['estimate'] == pytest.approx(2.0)
        assert report['command'][report['command'].index('--box') + 1] == '-2,2,-1,1'

    def test_h_normal_conditions(self, capsys):
        """Test that all six conditions are reported when only H is normal."""
        assert main(['estimate', '--group', 'affine:swap', '--map', 'hom:0.5', '--samples', '40']) == 0
        conditions = json.loads(capsys.readouterr().out)['conditions']
        assert set(conditions) == {'C1', 'C2', 'C3', 'C4', 'C5', 'C6'}
        assert conditions['C3']['estimate'] >= 0.0

    def test_constant_map(self, capsys):
        assert main(['estimate', '--group', 'heisenberg', '--map', 'const:0,0,0', '--samples', '30']) == 0
        report = json.loads(capsys.readouterr().out)
        assert report['fssc']['estimate'] == 0.0
        assert 'C3' in report['conditions']

    def test_table_map(self, temp_data_dir):
        table = os.path.join(temp_data_dir, 'map.tsv')
        with open(table, 'w') as f:
            f.write('# x\tf(x)\n')
            for i in range(11):
                x = -1.0 + 0.2 * i
                f.write(f"{x}\t{0.5 * x}\n")
        out = os.path.join(temp_data_dir, 'estimate.json')
        assert main(['estimate', '--group', 'abelian:1,1', '--map', f"table:{table}", '--samples', '40',
                     '--out', out]) == 0
        assert _load(out)['map'] == f"table:{table}"

    def test_report_function(self):
        """Test the report dict without the CLI."""
        s = load_splitting('dihedral:4')
        report = estimate_report(s, build_map(s, 'hom:2'), 10, 0, exhaustive=True)
        assert report['fssc']['estimate'] == 0.5
        assert report['splitting_constants']['C2'] == 1.0

    def test_unknown_map(self):
        assert main(['estimate', '--group', 'dihedral:4', '--map', 'linear:1', '--samples', '5']) == 2


@pytest.mark.integration
class TestSweep:
    """intrinlip sweep end to end."""

    def test_csv(self, temp_data_dir):
        out = os.path.join(temp_data_dir, 'sweep.csv')
        assert main(['sweep', '--group', 'heisenberg', '--samples', '10', '--out', out]) == 0
        with open(out, newline='') as f:
            rows = list(csv.reader(f))
        assert rows[0][:3] == ['g0', 'g1', 'g2']
        assert len(rows) == 11

    def test_exhaustive(self, temp_data_dir):
        out = os.path.join(temp_data_dir, 'sweep.csv')
        assert main(['sweep', '--group', 'dihedral:4', '--exhaustive', '--out', out]) == 0
        with open(out, newline='') as f:
            assert len(list(csv.reader(f))) == 9

    def test_needs_out(self):
        assert main(['sweep', '--group', 'heisenberg', '--samples', '10']) == 2
