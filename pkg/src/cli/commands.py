"""
Command handlers for the workbench CLI.

Each handler takes the parsed argument namespace and returns a CommandOutcome;
exit codes and report assembly live in the dispatcher.
"""

import argparse
import json
from typing import Any, Callable, Dict, List, Optional

import pandas as pd

from src.ack.inverse_ackermann import ackermann, alpha, lambda_d
from src.ack.properties import run_property_suite
from src.bipartite.disperser import DisperserParams, is_disperser, rt00_degree, sample_verified_disperser
from src.bipartite.graph import load_graph, save_graph
from src.bounds.depth_chain import depth_chain_certificate
from src.bounds.lower_bounds import (
    LowerBoundParams,
    check_fstar_lemma,
    depth_lower_bound,
    frontier_frame,
    lb_depth1,
    lb_refined,
    lb_theorem_form,
)
from src.builders.booster import BoosterParams, build_rate_booster
from src.builders.amplifier import build_amplifier
from src.builders.base_pgc import search_base_pgc
from src.builders.composition import compose_pgcs
from src.builders.condenser import search_condenser
from src.builders.constants import ConstantTable, load_constants, profile_for
from src.builders.good_code import build_good_code
from src.builders.ledger import upper_bound_ledger
from src.builders.reduction import build_handy, reduce_pgc
from src.circuit.linear_circuit import LinearCircuit
from src.circuit.serialization import load_circuit, save_circuit, to_dot
from src.circuit.transforms import collapse_last_layer, merge_outputs, stack
from src.codeprops.checkers import check_min_distance, check_pgc, check_range_detector, min_distance_with_witness
from src.codeprops.models import PgcParams, RangeDetectorParams, Verdict
from src.codeprops.sc_codes import check_mds, is_sc_induced_code
from src.common.errors import UsageError
from src.common.logger import setup_logger
from src.common.utils import fraction_text, parse_int_list, read_json, write_table
from src.gf.field import field_from_spec
from src.gf.matrix import Matrix, matrix_from_document
from src.superconc.conversion import non_sc_implies_not_code, sc_code_attempt, sc_success_rate
from src.superconc.dag import load_dag
from src.superconc.flow import is_superconcentrator

from .reports import CommandOutcome

logger = setup_logger(__name__)

Handler = Callable[[argparse.Namespace], CommandOutcome]


def builder_kwargs(args: argparse.Namespace) -> Dict[str, Any]:
    """Options every builder accepts, taken from the global flags."""
    kwargs: Dict[str, Any] = {'profile': profile_for(args.scaled_constants)}
    if args.max_trials is not None:
        kwargs['max_trials'] = args.max_trials
    if args.jobs is not None:
        kwargs['jobs'] = args.jobs
    if args.budget is not None:
        kwargs['budget'] = args.budget
    if getattr(args, 'q', None) not in (None, 2):
        kwargs['field_'] = field_from_spec(args.q)
    return kwargs


def _constants(args: argparse.Namespace) -> ConstantTable:
    path = getattr(args, 'constants', None)
    return load_constants(path) if path else ConstantTable()


def _emit_table(args: argparse.Namespace, frame: pd.DataFrame, outcome: CommandOutcome, name: str) -> None:
    outcome.result = frame.to_dict(orient='records')
    if args.format == 'csv':
        if args.out:
            outcome.artifacts[name] = write_table(frame, args.out)
        else:
            outcome.text = frame.to_csv(index=False)


def _emit_circuit(args: argparse.Namespace, circuit: LinearCircuit, outcome: CommandOutcome,
                  extra: Optional[Dict[str, Any]] = None) -> None:
    outcome.count(wires=circuit.size(), depth=circuit.depth)
    summary = {'num_inputs': circuit.num_inputs, 'num_outputs': circuit.num_outputs,
               'depth': circuit.depth, 'size': circuit.size(), **(extra or {})}
    if args.out:
        save_circuit(circuit, args.out)
        outcome.artifacts['circuit'] = args.out
    else:
        summary['circuit'] = circuit.to_json()
    if args.format == 'dot':
        outcome.text = to_dot(circuit)
    outcome.result = summary


def _emit_build(args: argparse.Namespace, result: Any, outcome: CommandOutcome) -> CommandOutcome:
    outcome.count_build(result.report)
    _emit_circuit(args, result.circuit, outcome, {'report': result.report})
    return outcome


def _verdict_outcome(verdict: Verdict, **extra: Any) -> CommandOutcome:
    outcome = CommandOutcome()
    outcome.add_verdict(verdict)
    outcome.result = {**verdict.to_dict(), **extra}
    return outcome


def _parse_vector(text: str) -> List[int]:
    try:
        return [int(v) for v in text.replace(' ', '').split(',') if v]
    except ValueError as e:
        raise UsageError(f"not an input vector: {text!r}") from e


def _load_matrix(args: argparse.Namespace) -> Matrix:
    if args.matrix:
        return matrix_from_document(read_json(args.matrix))
    if args.circuit:
        return load_circuit(args.circuit).generator_matrix()
    raise UsageError("give --matrix or --circuit")


# ack

def ack_lambda(args: argparse.Namespace) -> CommandOutcome:
    value = lambda_d(args.d, args.n)
    return CommandOutcome(result={'d': args.d, 'n': args.n, 'lambda': value}, text=str(value))


def ack_alpha(args: argparse.Namespace) -> CommandOutcome:
    value = alpha(args.n)
    return CommandOutcome(result={'n': args.n, 'alpha': value}, text=str(value))


def ack_ackermann(args: argparse.Namespace) -> CommandOutcome:
    value = ackermann(args.i, args.j)
    return CommandOutcome(result={'i': args.i, 'j': args.j, 'A': value.to_json()}, text=repr(value))


def ack_table(args: argparse.Namespace) -> CommandOutcome:
    ds, ns = parse_int_list(args.ds), parse_int_list(args.ns)
    frame = pd.DataFrame({'n': ns, **{f'lambda_{d}': [lambda_d(d, n) for n in ns] for d in ds}})
    outcome = CommandOutcome()
    _emit_table(args, frame, outcome, 'table')
    return outcome


def ack_suite(args: argparse.Namespace) -> CommandOutcome:
    results = run_property_suite(args.n_max)
    outcome = CommandOutcome(result=[r.to_dict() for r in results])
    for r in results:
        outcome.add_verdict(Verdict(ok=r.ok, counterexample=r.failure, enumerated=r.checked,
                                    elapsed_ms=r.elapsed_ms, detail={'property': r.name}))
    return outcome


# circuit

def circuit_eval(args: argparse.Namespace) -> CommandOutcome:
    circuit = load_circuit(args.input[0])
    y = circuit.eval(_parse_vector(args.x))
    return CommandOutcome(result={'x': args.x, 'y': list(y)}, text=','.join(str(v) for v in y))


def circuit_matrix(args: argparse.Namespace) -> CommandOutcome:
    matrix = load_circuit(args.input[0]).generator_matrix()
    return CommandOutcome(result=matrix.to_json())


def circuit_compose(args: argparse.Namespace) -> CommandOutcome:
    circuits = [load_circuit(path) for path in args.input]
    if args.coeffs:
        try:
            coeffs = json.loads(args.coeffs)
        except json.JSONDecodeError as e:
            raise UsageError(f"--coeffs is not JSON: {e}") from e
    else:
        coeffs = [[1] * circuits[0].num_outputs for _ in circuits]
    outcome = CommandOutcome()
    _emit_circuit(args, merge_outputs(circuits, coeffs), outcome)
    return outcome


def circuit_stack(args: argparse.Namespace) -> CommandOutcome:
    if len(args.input) != 2:
        raise UsageError("stack needs --in bottom.json --in top.json")
    bottom, top = (load_circuit(path) for path in args.input)
    outcome = CommandOutcome()
    _emit_circuit(args, stack(top, bottom), outcome)
    return outcome


def circuit_collapse(args: argparse.Namespace) -> CommandOutcome:
    outcome = CommandOutcome()
    _emit_circuit(args, collapse_last_layer(load_circuit(args.input[0])), outcome)
    return outcome


def circuit_canonicalize(args: argparse.Namespace) -> CommandOutcome:
    outcome = CommandOutcome()
    _emit_circuit(args, load_circuit(args.input[0]).canonicalize(), outcome)
    return outcome


def circuit_export_dot(args: argparse.Namespace) -> CommandOutcome:
    circuit = load_circuit(args.input[0])
    text = to_dot(circuit)
    outcome = CommandOutcome(result={'depth': circuit.depth, 'size': circuit.size()}, text=text)
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as handle:
            handle.write(text)
        outcome.artifacts['dot'] = args.out
        outcome.text = None
    return outcome


# disperser

def disperser_sample(args: argparse.Namespace) -> CommandOutcome:
    params = DisperserParams(args.n, args.m, args.k, float(args.eps))
    graph, run = sample_verified_disperser(params, args.seed, args.max_trials, args.jobs, args.budget)
    outcome = CommandOutcome(result={'degree': rt00_degree(params), 'trial': run.index,
                                     'failures': run.failures, 'edges': graph.edge_count()})
    outcome.count(trials=run.trials_used, wires=graph.edge_count())
    outcome.counters['enumerated'] = int(run.outcome.stats.get('enumerated', 0))
    if args.out:
        outcome.artifacts['graph'] = save_graph(graph, args.out)
    else:
        outcome.result['graph'] = graph.to_json()
    return outcome


def disperser_verify(args: argparse.Namespace) -> CommandOutcome:
    graph = load_graph(args.graph)
    return _verdict_outcome(is_disperser(graph, args.k, float(args.eps), args.budget))


# build

def build_booster(args: argparse.Namespace) -> CommandOutcome:
    params = BoosterParams(delta=float(args.delta), c=float(args.c), gamma=float(args.gamma))
    result = build_rate_booster(params, args.n, args.seed, n_in=args.n_in, **builder_kwargs(args))
    return _emit_build(args, result, CommandOutcome())


def build_amplifier_cmd(args: argparse.Namespace) -> CommandOutcome:
    return _emit_build(args, build_amplifier(args.n, args.m, args.seed, **builder_kwargs(args)), CommandOutcome())


def build_condenser(args: argparse.Namespace) -> CommandOutcome:
    kwargs = builder_kwargs(args)
    result = search_condenser(args.n, args.r, args.s, args.seed, size_budget=args.size_budget, t=args.t, **kwargs)
    return _emit_build(args, result, CommandOutcome())


def build_pgc(args: argparse.Namespace) -> CommandOutcome:
    result = search_base_pgc(args.n, args.r, args.s, args.depth, args.seed, fanin=args.fanin,
                             wire_budget=args.wire_budget, **builder_kwargs(args))
    return _emit_build(args, result, CommandOutcome())


def build_compose(args: argparse.Namespace) -> CommandOutcome:
    circuits = [load_circuit(path) for path in args.input]
    bands = [[float(v) for v in band.split(',')] for band in args.bands.split(';')]
    if len(bands) != len(circuits) or any(len(band) != 2 for band in bands):
        raise UsageError("--bands needs one 'r,s' pair per --in circuit, separated by ';'")
    kwargs = builder_kwargs(args)
    profile = kwargs['profile']
    params = [profile.pgc_params(c.num_inputs, r, s) for c, (r, s) in zip(circuits, bands)]
    fanin_bounds = parse_int_list(args.fanin_bounds) if args.fanin_bounds else None
    result = compose_pgcs(circuits, params, args.mode, args.seed, fanin_bounds=fanin_bounds, **kwargs)
    return _emit_build(args, result, CommandOutcome())


def build_reduce(args: argparse.Namespace) -> CommandOutcome:
    inner = load_circuit(args.inner)
    result = reduce_pgc(args.n, args.r, args.s, args.t, inner, args.seed, **builder_kwargs(args))
    return _emit_build(args, result, CommandOutcome())


def build_handy_cmd(args: argparse.Namespace) -> CommandOutcome:
    result = build_handy(args.n, args.r, args.seed, constants=_constants(args), **builder_kwargs(args))
    return _emit_build(args, result, CommandOutcome())


def build_goodcode(args: argparse.Namespace) -> CommandOutcome:
    result = build_good_code(args.n, float(args.rate), float(args.delta), args.depth_budget, args.seed,
                             constants=_constants(args), **builder_kwargs(args))
    return _emit_build(args, result, CommandOutcome())


# check

def check_pgc_cmd(args: argparse.Namespace) -> CommandOutcome:
    circuit = load_circuit(args.circuit)
    params = PgcParams(n_in=circuit.num_inputs, n_out=circuit.num_outputs, r=float(args.r), s=float(args.s),
                       w_min=float(args.w_min))
    return _verdict_outcome(check_pgc(circuit, params, args.budget))


def check_rd(args: argparse.Namespace) -> CommandOutcome:
    circuit = load_circuit(args.circuit)
    params = RangeDetectorParams(m_in=circuit.num_inputs, n_out=circuit.num_outputs,
                                 ell=float(args.ell), k=float(args.k), r=float(args.r),
                                 s=None if args.s is None else float(args.s))
    return _verdict_outcome(check_range_detector(circuit, params, args.budget))


def check_dist(args: argparse.Namespace) -> CommandOutcome:
    circuit = load_circuit(args.circuit)
    if args.target is not None:
        return _verdict_outcome(check_min_distance(circuit, args.target, args.budget))
    distance, witness = min_distance_with_witness(circuit, args.budget)
    outcome = CommandOutcome(result={'min_distance': distance, 'witness': list(witness)}, text=str(distance))
    outcome.count(wires=circuit.size(), depth=circuit.depth)
    return outcome


def check_mds_cmd(args: argparse.Namespace) -> CommandOutcome:
    return _verdict_outcome(check_mds(_load_matrix(args), args.budget))


def check_scind(args: argparse.Namespace) -> CommandOutcome:
    return _verdict_outcome(is_sc_induced_code(_load_matrix(args), args.budget))


# sc

def sc_verify(args: argparse.Namespace) -> CommandOutcome:
    dag = load_dag(args.graph)
    outcome = _verdict_outcome(is_superconcentrator(dag, args.budget), layers=list(dag.layers),
                               edges=len(dag.edges))
    outcome.count(wires=len(dag.edges), depth=dag.depth())
    return outcome


def sc_tocode(args: argparse.Namespace) -> CommandOutcome:
    dag = load_dag(args.graph)
    outcome = CommandOutcome()
    if args.trials > 1:
        summary = sc_success_rate(dag, args.q, args.trials, args.seed, args.budget)
        outcome.result = summary
        outcome.count(trials=args.trials, wires=len(dag.edges), depth=dag.depth())
        outcome.refuted = not summary['consistent']
        return outcome
    attempt = sc_code_attempt(dag, args.q, args.seed, args.budget)
    outcome.result = attempt.to_dict()
    if attempt.verdict is not None:
        outcome.add_verdict(attempt.verdict)
    outcome.count(trials=1, wires=attempt.wires, depth=attempt.depth)
    return outcome


def sc_necessity(args: argparse.Namespace) -> CommandOutcome:
    dag = load_dag(args.graph)
    outcome = _verdict_outcome(non_sc_implies_not_code(dag, args.q, args.trials, args.seed, args.budget))
    outcome.count(trials=args.trials)
    return outcome


# bounds

def bounds_lower(args: argparse.Namespace) -> CommandOutcome:
    params = LowerBoundParams(n=args.n, d=args.d, r=args.r, eps=float(args.eps), delta=float(args.delta))
    result: Dict[str, Any] = {
        'params': params.model_dump(),
        'refined': fraction_text(lb_refined(params)),
        'theorem_form': lb_theorem_form(params),
    }
    if args.d == 1:
        result['depth1'] = fraction_text(lb_depth1(args.n, args.r, args.eps, args.delta))
    return CommandOutcome(result=result)


def bounds_depthlb(args: argparse.Namespace) -> CommandOutcome:
    value = depth_lower_bound(args.n)
    return CommandOutcome(result={'n': args.n, 'depth_lb': value, 'alpha': alpha(args.n)}, text=str(value))


def bounds_fstar(args: argparse.Namespace) -> CommandOutcome:
    return _verdict_outcome(check_fstar_lemma(args.max_n))


def bounds_frontier(args: argparse.Namespace) -> CommandOutcome:
    outcome = CommandOutcome()
    _emit_table(args, frontier_frame(parse_int_list(args.ns)), outcome, 'frontier')
    return outcome


def bounds_upper(args: argparse.Namespace) -> CommandOutcome:
    ledger = upper_bound_ledger(args.n, args.d, _constants(args))
    outcome = CommandOutcome()
    if args.format == 'csv':
        _emit_table(args, ledger.to_frame(), outcome, 'ledger')
    outcome.result = ledger.to_dict()
    outcome.add_verdict(Verdict(ok=ledger.within_bound, detail={'total': str(ledger.total),
                                                                'bound': str(ledger.bound)}))
    return outcome


def bounds_chain(args: argparse.Namespace) -> CommandOutcome:
    certificate = depth_chain_certificate(args.n, args.rho, args.delta, args.c, d_max=args.d_max)
    outcome = CommandOutcome(result=certificate)
    ok = certificate['sound'] and bool(certificate['closed_depths'])
    outcome.add_verdict(Verdict(ok=ok, detail={'least_not_excluded': certificate['least_not_excluded'],
                                               'depth_lower_bound': certificate['depth_lower_bound'],
                                               'closed_depths': certificate['closed_depths']}))
    return outcome
