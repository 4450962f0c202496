"""
Tests for the command-line dispatcher, exit codes and run reports.
"""

import io
import json
from pathlib import Path

from src.cli.main import dispatch
from src.cli.reports import RunReport

from config.settings import workbench_config

SCHEMA_PATH = Path(__file__).parent.parent / 'schemas' / 'run_report.schema.json'


def run(*argv):
    stream = io.StringIO()
    code, report = dispatch(list(argv), stream)
    return code, report, stream.getvalue()


class TestExitCodes:
    """One exit code per outcome class."""

    def test_success(self):
        code, report, out = run('ack', 'alpha', '--n', '64')
        assert code == 0
        assert out == '2\n'
        assert report.command == 'ack alpha'
        assert report.params['n'] == 64
        assert report.seed == workbench_config.seed
        assert report.result == {'n': 64, 'alpha': 2}

    def test_unknown_flag_is_usage_error(self):
        code, report, out = run('ack', 'alpha', '--n', '64', '--bogus')
        assert code == 1
        assert report.command == 'usage'
        assert report.error
        assert out == ''

    def test_negative_seed(self):
        code, _, _ = run('ack', 'alpha', '--n', '64', '--seed', '-1')
        assert code == 1

    def test_counterexample(self, tmp_json):
        path = tmp_json('zero.json', {'field': {'prime': 5}, 'rows': [[0]]})
        code, report, _ = run('check', 'scind', '--matrix', path)
        assert code == 2
        assert report.verdicts[0]['counterexample'] == {'X': [0], 'Y': [0]}
        assert report.counters['enumerated'] == 1

    def test_budget_exhausted(self, tmp_json):
        path = tmp_json('ones.json', {'field': {'prime': 5}, 'rows': [[1, 1], [1, 1]]})
        code, report, _ = run('check', 'scind', '--matrix', path, '--budget', '1')
        assert code == 3
        assert report.result == {'required': 5, 'budget': 1}

    def test_chain_needs_a_closed_depth(self):
        argv = ('bounds', 'chain', '--n', '1024', '--rho', '1/2', '--delta', '1/4', '--c', '2')
        code, report, _ = run(*argv)
        assert code == 0
        assert report.verdicts[0]['detail']['closed_depths'][0] == 4
        code, report, _ = run(*argv, '--d-max', '3')
        assert code == 2
        assert report.result['unlinked_depths'] == [1, 2, 3]
        assert report.verdicts[0]['detail']['closed_depths'] == []

    def test_domain_error(self):
        code, report, _ = run('ack', 'lambda', '--d', '0', '--n', '4')
        assert code == 1
        assert 'lambda index' in report.error


class TestOutputs:
    """Tables, report files and replay."""

    def test_ledger_as_csv(self):
        code, _, out = run('bounds', 'upper', '--n', '1024', '--d', '4', '--format', 'csv')
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == 'node,lemma,params,wires'
        assert len(lines) == 3

    def test_report_file(self, tmp_path):
        report_path = tmp_path / 'report.json'
        code, _, _ = run('bounds', 'depthlb', '--n', '65', '--report', str(report_path))
        assert code == 0
        written = json.loads(report_path.read_text(encoding='utf-8'))
        assert written['exit_code'] == 0
        assert written['result']['depth_lb'] == 2
        assert RunReport.model_validate(written).command == 'bounds depthlb'

    def test_schema_matches_model(self):
        schema = json.loads(SCHEMA_PATH.read_text(encoding='utf-8'))
        generated = RunReport.model_json_schema()
        assert set(schema['properties']) == set(generated['properties'])
        assert set(schema['required']) == set(generated['required'])

    def test_seeded_runs_replay(self):
        argv = ('disperser', 'sample', '--n', '16', '--m', '8', '--k', '8', '--eps', '0.25',
                '--seed', '7', '--max-trials', '20', '--jobs', '1')
        first = run(*argv)
        second = run(*argv)
        assert first[0] == second[0] == 0
        assert first[1].replay_key() == second[1].replay_key()
        assert first[1].counters['trials'] >= 1
