"""
Tests for the acceptance pipeline: individual experiments, orchestration and export.
"""

import json

import pandas as pd
import pytest

from src.common.errors import WorkbenchError
from src.common.trials import trial_rng
from src.gf import GF2
from src.pipeline.acceptance_pipeline import AcceptancePipeline, AcceptanceSizes, random_circuit

QUICK = AcceptanceSizes(ack_n_max=2000, sc_seeds=10, circuit_samples=6, fstar_max_n=1000,
                        ledger_exponents=(10, 12), chain_ns=(2, 8, 64, 65, 1024), equivalence_limit=200)


@pytest.fixture
def pipeline():
    return AcceptancePipeline(QUICK, seed=0)


class TestExperiments:
    """Experiments that stay cheap at reduced sizes."""

    def test_entropy_constants(self, pipeline):
        result = pipeline.run_experiment('entropy_constants')
        assert result.passed
        assert result.details['composition_exponent'].startswith('1.825')

    def test_ledger_grid(self, pipeline):
        result = pipeline.run_experiment('ledger_grid')
        assert result.passed
        assert result.details['base_total'] == '12288'
        assert not result.details['failures']

    def test_lower_bound_lemmas(self, pipeline):
        result = pipeline.run_experiment('lower_bound_lemmas')
        assert result.passed
        assert result.details['lb_depth1'] == '25'
        chains = {c['n']: c for c in result.details['chains']}
        assert list(chains) == [2, 8, 64, 65, 1024]
        assert all(c['sound'] for c in chains.values())
        assert chains[64]['agrees']
        assert not chains[1024]['agrees']
        assert chains[1024]['least_not_excluded'] < chains[1024]['depth_lower_bound']
        assert chains[1024]['closed_depths'][0] == 4

    def test_sc_code_equivalence(self, pipeline):
        result = pipeline.run_experiment('sc_code_equivalence')
        assert result.passed
        assert result.details['checked'] == 200

    def test_sc_probability_numerator(self, pipeline):
        result = pipeline.run_experiment('sc_probability')
        assert result.details['numerator'] == '504'

    def test_circuit_semantics(self, pipeline):
        result = pipeline.run_experiment('circuit_semantics')
        assert result.passed
        assert result.details['samples'] == 6

    def test_random_circuit_is_seeded(self):
        assert random_circuit(trial_rng(3, 1), GF2) == random_circuit(trial_rng(3, 1), GF2)


class TestOrchestration:
    """Running, summarising and exporting."""

    def test_unknown_experiment(self, pipeline):
        with pytest.raises(WorkbenchError):
            pipeline.run_experiment('no_such_experiment')

    def test_all_passed_needs_results(self, pipeline):
        assert not pipeline.all_passed
        pipeline.run_all(['entropy_constants', 'ledger_grid'])
        assert pipeline.all_passed
        frame = pipeline.summary_frame()
        assert list(frame['experiment']) == ['entropy_constants', 'ledger_grid']

    def test_export_without_results(self, pipeline, tmp_path):
        assert pipeline.export_results(str(tmp_path)) == {}

    def test_export_results(self, pipeline, tmp_path):
        pipeline.run_all(['entropy_constants'])
        exported = pipeline.export_results(str(tmp_path))
        assert set(exported) == {'entropy_constants', 'summary', 'table'}
        summary = json.loads((tmp_path / 'acceptance_summary.json').read_text(encoding='utf-8'))
        assert summary['all_passed']
        assert summary['experiments'] == {'entropy_constants': True}
        assert summary['sizes']['fstar_max_n'] == 1000
        table = pd.read_csv(tmp_path / 'acceptance_summary.csv')
        assert len(table) == 1
        assert (tmp_path / 'entropy_constants.json').exists()

    def test_full_sizes(self):
        full = AcceptanceSizes.full()
        assert full.ack_n_max == 10 ** 6
        assert full.equivalence_limit is None
        assert full.ledger_exponents == tuple(range(10, 21))
