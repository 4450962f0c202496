"""
Acceptance pipeline for the workbench.
Runs the acceptance experiments end to end, logs a summary and exports the results.
"""

import itertools
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.ack.inverse_ackermann import alpha
from src.ack.properties import run_property_suite
from src.bipartite.disperser import DisperserParams, rt00_degree, sample_verified_disperser
from src.bounds.depth_chain import depth_chain_certificate
from src.bounds.lower_bounds import check_fstar_lemma, depth_lower_bound, lb_depth1
from src.builders.base_pgc import sample_skeleton
from src.builders.good_code import build_good_code
from src.builders.ledger import upper_bound_ledger
from src.circuit.linear_circuit import LinearCircuit, path_sum_entry
from src.circuit.transforms import assign_random_coefficients, collapse_last_layer, stack
from src.codeprops.entropy import amplifier_exponent, composition_exponent
from src.codeprops.sc_codes import dist_definition_check, is_sc_induced_code
from src.common.errors import WorkbenchError
from src.common.logger import setup_logger
from src.common.trials import derive_seed, trial_rng
from src.common.utils import ensure_directory_exists, stopwatch, write_json, write_table
from src.gf.field import GF2, PrimeField
from src.gf.matrix import Matrix
from src.superconc.conversion import sc_success_rate, success_lower_bound
from src.superconc.fixtures import make_complete_bipartite_sc

from config.settings import workbench_config

logger = setup_logger(__name__)

CHAIN_NS = (2, 4, 8, 12, 16, 24, 32, 40, 48, 64,
            65, 100, 128, 256, 512, 1024, 4096, 2 ** 14, 2 ** 16, 2 ** 20)


@dataclass
class AcceptanceSizes:
    """Experiment sizes; ``full()`` gives the published acceptance sizes."""
    ack_n_max: int = 10 ** 4
    disperser_seeds: int = 10
    disperser_max_trials: int = 50
    equivalence_limit: Optional[int] = 2000
    sc_q: int = 1000003
    sc_seeds: int = 50
    circuit_samples: int = 40
    good_code_seeds: int = 5
    ledger_exponents: Tuple[int, ...] = (10, 12, 16, 20)
    fstar_max_n: int = 10 ** 4
    chain_ns: Tuple[int, ...] = CHAIN_NS

    @classmethod
    def full(cls) -> 'AcceptanceSizes':
        return cls(ack_n_max=10 ** 6, disperser_seeds=100, equivalence_limit=None, sc_seeds=500,
                   circuit_samples=200, good_code_seeds=50, ledger_exponents=tuple(range(10, 21)),
                   fstar_max_n=10 ** 6)


@dataclass
class ExperimentResult:
    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: float = 0.0
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def random_circuit(rng: np.random.Generator, field_: PrimeField, max_inputs: int = 12,
                   max_depth: int = 3) -> LinearCircuit:
    """Small random layered circuit for the semantics cross-checks."""
    n = int(rng.integers(1, max_inputs + 1))
    n_out = int(rng.integers(1, max_inputs + 1))
    depth = int(rng.integers(1, max_depth + 1))
    fanin = int(rng.integers(1, n + 1))
    return assign_random_coefficients(sample_skeleton(n, n_out, depth, fanin, rng), field_, rng)


class AcceptancePipeline:
    """
    Batch runner for the acceptance experiments.

    Each experiment is a method returning its details with a 'passed' flag; run_all keeps going
    past failures and records workbench errors on the failing experiment.
    """

    def __init__(self, sizes: Optional[AcceptanceSizes] = None, seed: Optional[int] = None):
        """Initialize the pipeline."""
        self.sizes = sizes or AcceptanceSizes()
        self.seed = workbench_config.seed if seed is None else seed
        self.results: Dict[str, ExperimentResult] = {}
        self.experiments: Dict[str, Callable[[], Dict[str, Any]]] = {
            'ackermann_suite': self.ackermann_suite,
            'entropy_constants': self.entropy_constants,
            'disperser_trials': self.disperser_trials,
            'sc_code_equivalence': self.sc_code_equivalence,
            'sc_probability': self.sc_probability,
            'circuit_semantics': self.circuit_semantics,
            'good_code': self.good_code,
            'ledger_grid': self.ledger_grid,
            'lower_bound_lemmas': self.lower_bound_lemmas,
        }

        logger.info(f"Acceptance pipeline initialized (seed={self.seed})")

    # experiments

    def ackermann_suite(self) -> Dict[str, Any]:
        results = run_property_suite(self.sizes.ack_n_max)
        return {'passed': all(r.ok for r in results), 'properties': [r.to_dict() for r in results]}

    def entropy_constants(self) -> Dict[str, Any]:
        composition, amplifier = composition_exponent(), amplifier_exponent()
        return {'passed': composition >= 1.8 and amplifier >= 0.37,
                'composition_exponent': f'{composition:.12f}', 'amplifier_exponent': f'{amplifier:.12f}'}

    def disperser_trials(self) -> Dict[str, Any]:
        params = DisperserParams(16, 12, 8, 0.25)
        successes, trials_used = 0, []
        for index in range(self.sizes.disperser_seeds):
            try:
                _, run = sample_verified_disperser(params, derive_seed(self.seed, index),
                                                   max_trials=self.sizes.disperser_max_trials, jobs=1)
            except WorkbenchError as e:
                logger.warning(f"Disperser seed {index} failed: {e}")
                continue
            successes += 1
            trials_used.append(run.trials_used)
        rate = successes / self.sizes.disperser_seeds
        return {'passed': rate >= 0.95, 'degree': rt00_degree(params),
                'success_rate': rate, 'mean_trials': float(np.mean(trials_used)) if trials_used else None}

    def sc_code_equivalence(self) -> Dict[str, Any]:
        field_ = PrimeField(5)
        disagreements, checked = [], 0
        for entries in itertools.islice(itertools.product(range(5), repeat=6), self.sizes.equivalence_limit):
            matrix = Matrix(field_, (entries[:3], entries[3:]))
            checked += 1
            if is_sc_induced_code(matrix).ok != dist_definition_check(matrix).ok:
                disagreements.append([list(entries[:3]), list(entries[3:])])
        return {'passed': not disagreements, 'checked': checked, 'disagreements': disagreements[:10]}

    def sc_probability(self) -> Dict[str, Any]:
        q = self.sizes.sc_q
        graph = make_complete_bipartite_sc(4, 6)
        bound = success_lower_bound(4, 6, 1, q)
        numerator = (1 - bound) * q
        summary = sc_success_rate(graph, q, self.sizes.sc_seeds, self.seed)
        return {'passed': numerator == 504 and summary['consistent'], 'numerator': str(numerator),
                **{k: v for k, v in summary.items() if k != 'elapsed_ms'}}

    def circuit_semantics(self) -> Dict[str, Any]:
        mismatches: List[Dict[str, Any]] = []
        for index in range(self.sizes.circuit_samples):
            rng = trial_rng(self.seed, index)
            field_ = GF2 if index % 2 == 0 else PrimeField(7)
            circuit = random_circuit(rng, field_)
            matrix = circuit.generator_matrix()
            for i in range(circuit.num_inputs):
                for j in range(circuit.num_outputs):
                    if path_sum_entry(circuit, i, j) != matrix[i, j]:
                        mismatches.append({'sample': index, 'check': 'path_sum', 'entry': [i, j]})
            if circuit.depth >= 2 and collapse_last_layer(circuit).generator_rows != circuit.generator_rows:
                mismatches.append({'sample': index, 'check': 'collapse'})
            tail = assign_random_coefficients(
                sample_skeleton(circuit.num_outputs, circuit.num_outputs, 1, 2, rng), field_, rng)
            if stack(circuit, tail).generator_matrix() != matrix @ tail.generator_matrix():
                mismatches.append({'sample': index, 'check': 'stack'})
        return {'passed': not mismatches, 'samples': self.sizes.circuit_samples, 'mismatches': mismatches[:10]}

    def good_code(self) -> Dict[str, Any]:
        distances: List[Optional[int]] = []
        for index in range(self.sizes.good_code_seeds):
            try:
                result = build_good_code(10, 0.25, 0.15, 4, derive_seed(self.seed, index))
                distances.append(result.report['min_distance'])
            except WorkbenchError as e:
                logger.warning(f"Good code seed {index} failed: {e}")
                distances.append(None)
        successes = sum(1 for d in distances if d is not None and d >= 6)
        rate = successes / self.sizes.good_code_seeds
        return {'passed': rate >= 0.9, 'success_rate': rate, 'distances': distances}

    def ledger_grid(self) -> Dict[str, Any]:
        base = upper_bound_ledger(1024, 4).total
        rows, failures = [], []
        for exponent in self.sizes.ledger_exponents:
            n = 2 ** exponent
            for d in sorted({4, 6, 8, max(4, alpha(n))}):
                ledger = upper_bound_ledger(n, d)
                rows.append({'n': n, 'd': d, 'total': str(ledger.total), 'bound': str(ledger.bound)})
                if not ledger.within_bound:
                    failures.append({'n': n, 'd': d, 'check': 'bound'})
                if ledger.member_within_bound is False:
                    failures.append({'n': n, 'd': d, 'check': 'member'})
                if d == max(4, alpha(n)) and ledger.total > 18 * ledger.c * n:
                    failures.append({'n': n, 'd': d, 'check': 'linear at alpha(n)'})
        return {'passed': base == 12288 and not failures, 'base_total': str(base), 'rows': rows,
                'failures': failures}

    def lower_bound_lemmas(self) -> Dict[str, Any]:
        fstar = check_fstar_lemma(self.sizes.fstar_max_n)
        depth1 = lb_depth1(100, 4, Fraction(1, 4), Fraction(1, 2))
        chains = []
        for n in self.sizes.chain_ns:
            certificate = depth_chain_certificate(n, Fraction(1, 2), Fraction(1, 4), 2)
            chains.append({'n': n, 'alpha': alpha(n), 'sound': certificate['sound'],
                           'agrees': certificate['agrees'],
                           'closed_depths': certificate['closed_depths'],
                           'least_not_excluded': certificate['least_not_excluded'],
                           'depth_lower_bound': certificate['depth_lower_bound'],
                           'depth_lb_at_most_alpha': depth_lower_bound(n) <= alpha(n)})
        passed = (fstar.ok and depth1 == 25
                  and all(c['sound'] and c['closed_depths'] and c['depth_lb_at_most_alpha'] for c in chains))
        return {'passed': passed, 'fstar': fstar.to_dict(), 'lb_depth1': str(depth1), 'chains': chains}

    # orchestration

    def run_experiment(self, name: str) -> ExperimentResult:
        """Run one experiment; workbench errors mark it failed instead of propagating."""
        if name not in self.experiments:
            raise WorkbenchError(f"unknown experiment {name!r}; choose from {sorted(self.experiments)}")
        logger.info(f"Running experiment: {name}")
        with stopwatch() as timing:
            try:
                details = self.experiments[name]()
                result = ExperimentResult(name, bool(details.pop('passed')), details)
            except WorkbenchError as e:
                logger.error(f"Experiment {name} failed: {str(e)}")
                result = ExperimentResult(name, False, error=str(e))
        result.elapsed_ms = round(timing['elapsed_ms'], 3)
        self.results[name] = result
        logger.info(f"  {name}: {'PASS' if result.passed else 'FAIL'} ({result.elapsed_ms:.0f} ms)")
        return result

    def run_all(self, names: Optional[List[str]] = None) -> Dict[str, ExperimentResult]:
        logger.info("=== Acceptance experiments ===")
        for name in names or list(self.experiments):
            self.run_experiment(name)
        self._log_summary()
        return self.results

    @property
    def all_passed(self) -> bool:
        return bool(self.results) and all(r.passed for r in self.results.values())

    def summary_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{'experiment': r.name, 'passed': r.passed, 'elapsed_ms': r.elapsed_ms,
                              'error': r.error or ''} for r in self.results.values()],
                            columns=['experiment', 'passed', 'elapsed_ms', 'error'])

    def _log_summary(self) -> None:
        logger.info("=== ACCEPTANCE SUMMARY ===")
        for result in self.results.values():
            logger.info(f"  {result.name}: {'PASS' if result.passed else 'FAIL'}")
        passed = sum(1 for r in self.results.values() if r.passed)
        logger.info(f"  {passed}/{len(self.results)} experiments passed")
        logger.info("=== END SUMMARY ===")

    def export_results(self, output_dir: Optional[str] = None) -> Dict[str, str]:
        """
        Export per-experiment JSON, a summary JSON and a CSV summary table.

        Returns:
            Dictionary with file paths of exported results
        """
        if not self.results:
            logger.warning("No results to export. Run run_all() first.")
            return {}
        output_path = Path(output_dir or Path(workbench_config.output_dir) / 'acceptance')
        ensure_directory_exists(output_path)

        exported = {}
        for name, result in self.results.items():
            exported[name] = write_json(result.to_dict(), output_path / f'{name}.json')
        exported['summary'] = write_json({
            'seed': self.seed,
            'sizes': asdict(self.sizes),
            'all_passed': self.all_passed,
            'experiments': {name: r.passed for name, r in self.results.items()},
        }, output_path / 'acceptance_summary.json')
        exported['table'] = write_table(self.summary_frame(), output_path / 'acceptance_summary.csv')
        logger.info(f"Results exported to {len(exported)} files in {output_path}")
        return exported
