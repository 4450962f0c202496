"""
Workbench command-line entry point.

Exit codes: 0 verified, 1 usage or input error, 2 counterexample found,
3 enumeration budget or trial cap exhausted.
"""

import argparse
import sys
from typing import Any, Dict, List, NoReturn, Optional, Sequence, Tuple

from pydantic import ValidationError

from src.builders.composition import MODES
from src.builders.constants import profile_for
from src.common.errors import BudgetExceeded, TrialsExhausted, UsageError, WorkbenchError
from src.common.logger import setup_logger
from src.common.utils import dumps_json, parse_number, stopwatch, write_json

from config.settings import workbench_config

from . import commands
from .reports import EXIT_COUNTEREXAMPLE, EXIT_EXHAUSTED, EXIT_OK, EXIT_USAGE, CommandOutcome, RunReport

logger = setup_logger(__name__)


class WorkbenchArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def _global_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None, help='Master seed (default WORKBENCH_SEED)')
    common.add_argument('--jobs', type=int, default=None, help='Worker processes for trial batches')
    common.add_argument('--budget', type=int, default=None, help='Enumeration budget for exhaustive checks')
    common.add_argument('--max-trials', type=int, default=None, help='Trial cap for sample-and-verify loops')
    common.add_argument('--out', default=None, help='Artifact path (circuit, graph or table)')
    common.add_argument('--report', default=None, help='Write the run report JSON here')
    common.add_argument('--format', choices=('json', 'csv', 'dot'), default='json')
    common.add_argument('--scaled-constants', action=argparse.BooleanOptionalAction, default=None,
                        help='Desk-scale (default) or literal construction constants')
    return common


def _leaf(group: Any, name: str, handler: commands.Handler, common: argparse.ArgumentParser,
          help_text: str) -> argparse.ArgumentParser:
    parser = group.add_parser(name, parents=[common], help=help_text)
    parser.set_defaults(handler=handler)
    return parser


def _group(subparsers: Any, name: str, help_text: str) -> Any:
    parser = subparsers.add_parser(name, help=help_text)
    return parser.add_subparsers(dest='action', metavar='ACTION', required=True)


def build_parser() -> WorkbenchArgumentParser:
    """The full command tree."""
    common = _global_flags()
    parser = WorkbenchArgumentParser(prog='workbench', description='Bounded-depth linear circuits for good codes')
    sub = parser.add_subparsers(dest='group', metavar='COMMAND', required=True)

    ack = _group(sub, 'ack', 'inverse-Ackermann values and tables')
    p = _leaf(ack, 'lambda', commands.ack_lambda, common, 'lambda_d(n)')
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p = _leaf(ack, 'alpha', commands.ack_alpha, common, 'alpha(n)')
    p.add_argument('--n', type=int, required=True)
    p = _leaf(ack, 'A', commands.ack_ackermann, common, 'Ackermann A(i, j)')
    p.add_argument('--i', type=int, required=True)
    p.add_argument('--j', type=int, required=True)
    p = _leaf(ack, 'table', commands.ack_table, common, 'lambda_d table (CSV: n, lambda_d...)')
    p.add_argument('--ds', required=True)
    p.add_argument('--ns', required=True)
    p = _leaf(ack, 'suite', commands.ack_suite, common, 'inverse-Ackermann property suite')
    p.add_argument('--n-max', type=int, default=10 ** 6)

    circuit = _group(sub, 'circuit', 'evaluate and transform circuit files')
    for name, handler in (('eval', commands.circuit_eval), ('matrix', commands.circuit_matrix),
                          ('compose', commands.circuit_compose), ('stack', commands.circuit_stack),
                          ('collapse', commands.circuit_collapse), ('canonicalize', commands.circuit_canonicalize),
                          ('export-dot', commands.circuit_export_dot)):
        p = _leaf(circuit, name, handler, common, f'circuit {name}')
        p.add_argument('--in', dest='input', action='append', required=True, help='Circuit JSON (repeatable)')
        if name == 'eval':
            p.add_argument('--x', required=True, help='Input vector, comma separated')
        if name == 'compose':
            p.add_argument('--coeffs', default=None, help='JSON list of per-circuit output coefficients')

    disperser = _group(sub, 'disperser', 'random dispersers')
    p = _leaf(disperser, 'sample', commands.disperser_sample, common, 'sample a verified disperser')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--eps', type=parse_number, required=True)
    p = _leaf(disperser, 'verify', commands.disperser_verify, common, 'exhaustive disperser check')
    p.add_argument('--graph', required=True)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--eps', type=parse_number, required=True)

    build = _group(sub, 'build', 'sample-and-verify constructions')
    p = _leaf(build, 'booster', commands.build_booster, common, 'rate booster')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--n-in', type=int, default=None)
    p.add_argument('--delta', type=parse_number, required=True)
    p.add_argument('--c', type=parse_number, required=True)
    p.add_argument('--gamma', type=parse_number, required=True)
    p = _leaf(build, 'amplifier', commands.build_amplifier_cmd, common, 'amplifier n -> m')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--m', type=int, required=True)
    p = _leaf(build, 'condenser', commands.build_condenser, common, 'condenser n -> n/r')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--r', type=parse_number, required=True)
    p.add_argument('--s', type=parse_number, required=True)
    p.add_argument('--t', type=parse_number, default=None)
    p.add_argument('--size-budget', type=int, default=None)
    p = _leaf(build, 'pgc', commands.build_pgc, common, 'base partial good code of depth 1 or 2')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--r', type=parse_number, required=True)
    p.add_argument('--s', type=parse_number, required=True)
    p.add_argument('--depth', type=int, choices=(1, 2), default=1)
    p.add_argument('--fanin', type=int, default=None)
    p.add_argument('--wire-budget', type=int, default=None)
    p = _leaf(build, 'compose', commands.build_compose, common, 'compose PGCs on adjacent bands')
    p.add_argument('--in', dest='input', action='append', required=True)
    p.add_argument('--bands', required=True, help="'r1,s1;r2,s2;...' one band per circuit")
    p.add_argument('--mode', choices=MODES, default=MODES[0])
    p.add_argument('--fanin-bounds', default=None)
    p = _leaf(build, 'reduce', commands.build_reduce, common, 'condenser + inner PGC + amplifier')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--r', type=parse_number, required=True)
    p.add_argument('--s', type=parse_number, required=True)
    p.add_argument('--t', type=parse_number, default=None)
    p.add_argument('--inner', required=True)
    p = _leaf(build, 'handy', commands.build_handy_cmd, common, 'depth-4 PGC from one reduction')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--r', type=parse_number, required=True)
    p.add_argument('--constants', default=None)
    p = _leaf(build, 'goodcode', commands.build_goodcode, common, 'end-to-end good code')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--rate', type=parse_number, required=True)
    p.add_argument('--delta', type=parse_number, required=True)
    p.add_argument('--depth-budget', type=int, required=True)
    p.add_argument('--constants', default=None)
    for name in ('booster', 'amplifier', 'condenser', 'pgc', 'compose', 'reduce', 'handy', 'goodcode'):
        build.choices[name].add_argument('--q', type=int, default=2, help='Coefficient field GF(q)')

    check = _group(sub, 'check', 'exhaustive property checks')
    p = _leaf(check, 'pgc', commands.check_pgc_cmd, common, 'partial good code band')
    p.add_argument('--circuit', required=True)
    p.add_argument('--r', type=parse_number, required=True)
    p.add_argument('--s', type=parse_number, required=True)
    p.add_argument('--w-min', type=parse_number, required=True)
    p = _leaf(check, 'rd', commands.check_rd, common, 'range detector')
    p.add_argument('--circuit', required=True)
    p.add_argument('--ell', type=parse_number, required=True)
    p.add_argument('--k', type=parse_number, required=True)
    p.add_argument('--r', type=parse_number, required=True)
    p.add_argument('--s', type=parse_number, default=None)
    p = _leaf(check, 'dist', commands.check_dist, common, 'minimum distance')
    p.add_argument('--circuit', required=True)
    p.add_argument('--target', type=int, default=None)
    for name, handler in (('mds', commands.check_mds_cmd), ('scind', commands.check_scind)):
        p = _leaf(check, name, handler, common, f'{name} check on a matrix or circuit')
        p.add_argument('--matrix', default=None)
        p.add_argument('--circuit', default=None)

    sc = _group(sub, 'sc', 'superconcentrators and their codes')
    p = _leaf(sc, 'verify', commands.sc_verify, common, 'superconcentrator check by max flow')
    p.add_argument('--graph', required=True)
    for name, handler in (('tocode', commands.sc_tocode), ('necessity', commands.sc_necessity)):
        p = _leaf(sc, name, handler, common, f'sc {name}')
        p.add_argument('--graph', required=True)
        p.add_argument('--q', type=int, default=1000003)
        p.add_argument('--trials', type=int, default=1)

    bounds = _group(sub, 'bounds', 'lower and upper bound arithmetic')
    p = _leaf(bounds, 'lower', commands.bounds_lower, common, 'densely regular lower bounds')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--r', type=int, required=True)
    p.add_argument('--eps', type=parse_number, required=True)
    p.add_argument('--delta', type=parse_number, required=True)
    p = _leaf(bounds, 'depthlb', commands.bounds_depthlb, common, 'depth lower bound')
    p.add_argument('--n', type=int, required=True)
    p = _leaf(bounds, 'fstar', commands.bounds_fstar, common, 'f* iteration lemma')
    p.add_argument('--max-n', type=int, required=True)
    p = _leaf(bounds, 'frontier', commands.bounds_frontier, common, 'depth frontier (CSV: n, depth_lb, alpha)')
    p.add_argument('--ns', required=True)
    p = _leaf(bounds, 'upper', commands.bounds_upper, common, 'size ledger of the upper bound')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--constants', default=None)
    p = _leaf(bounds, 'chain', commands.bounds_chain, common, 'depth chain certificate')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--rho', type=parse_number, required=True)
    p.add_argument('--delta', type=parse_number, required=True)
    p.add_argument('--c', type=parse_number, required=True)
    p.add_argument('--d-max', type=int, default=16)
    return parser


def _params(args: argparse.Namespace) -> Dict[str, Any]:
    skip = {'handler', 'group', 'action', 'report'}
    return {k: (str(v) if not isinstance(v, (int, float, str, bool, list, type(None))) else v)
            for k, v in sorted(vars(args).items()) if k not in skip}


def _exit_code(outcome: CommandOutcome) -> int:
    return EXIT_COUNTEREXAMPLE if outcome.refuted else EXIT_OK


def _print(outcome: CommandOutcome, stream: Any) -> None:
    text = outcome.text if outcome.text is not None else dumps_json(outcome.result)
    stream.write(text.rstrip('\n') + '\n')


def dispatch(argv: Sequence[str], stream: Any = None) -> Tuple[int, RunReport]:
    """
    Parse argv, run the command and return (exit code, report).

    Results go to ``stream`` (stdout by default); logs go to stderr.
    """
    stream = stream if stream is not None else sys.stdout
    argv = list(argv)
    args: Optional[argparse.Namespace] = None
    outcome = CommandOutcome()
    error: Optional[str] = None
    with stopwatch() as timing:
        try:
            args = build_parser().parse_args(argv)
            if args.seed is None:
                args.seed = workbench_config.seed
            if args.seed < 0:
                raise UsageError(f"--seed must be nonnegative, got {args.seed}")
            outcome = args.handler(args)
            code = _exit_code(outcome)
            _print(outcome, stream)
        except SystemExit as e:
            # --help
            code = int(e.code or 0)
        except (BudgetExceeded, TrialsExhausted) as e:
            code, error = EXIT_EXHAUSTED, str(e)
            if isinstance(e, TrialsExhausted):
                outcome.result = {'trials': e.trials, 'statistics': e.statistics}
            else:
                outcome.result = {'required': e.required, 'budget': e.budget}
            logger.error(error)
        except (WorkbenchError, ValidationError, ValueError) as e:
            code, error = EXIT_USAGE, str(e)
            logger.error(error)

    report = RunReport(
        command=' '.join(filter(None, [getattr(args, 'group', None), getattr(args, 'action', None)])) or 'usage',
        params=_params(args) if args is not None else {'argv': argv},
        seed=args.seed if args is not None and args.seed is not None else workbench_config.seed,
        profile=profile_for(getattr(args, 'scaled_constants', None)).name,
        exit_code=code,
        verdicts=[v.to_dict() for v in outcome.verdicts],
        counters=outcome.counters,
        elapsed_ms=round(timing['elapsed_ms'], 3),
        artifacts=outcome.artifacts,
        result=outcome.result,
        error=error,
    )
    if args is not None and getattr(args, 'report', None):
        write_json(report.to_json(), args.report)
    return code, report


def main(argv: Optional[List[str]] = None) -> int:
    code, _ = dispatch(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == '__main__':
    sys.exit(main())
