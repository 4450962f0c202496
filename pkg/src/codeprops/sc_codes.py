"""
Superconcentrator-induced codes and MDS predicates on generator matrices.

A linear code is superconcentrator-induced iff every square submatrix of its
generator matrix is nonsingular; dist_definition_check tests the distance
definition directly and serves as an independent oracle.
"""

import logging
import math
from itertools import combinations
from typing import Optional

import numpy as np

from src.common.errors import BudgetExceeded
from src.common.logger import log_verification_failure, setup_logger
from src.common.utils import stopwatch
from src.gf.matrix import Matrix, det

from config.settings import workbench_config

from .checkers import iter_field_vectors
from .models import Verdict

logger = setup_logger(__name__)


def minor_count(n: int, m: int) -> int:
    """Number of square submatrices of an n x m matrix."""
    return sum(math.comb(n, i) * math.comb(m, i) for i in range(1, min(n, m) + 1))


def is_sc_induced_code(M: Matrix, budget: Optional[int] = None) -> Verdict:
    """
    Check det(M_{X,Y}) != 0 for every pair of equal-size row and column sets.

    Pairs are visited by size, then lexicographically; the first singular pair is the witness.

    Raises:
        BudgetExceeded: more minors than the budget allows
    """
    cap = workbench_config.minor_budget if budget is None else budget
    required = minor_count(M.rows, M.cols)
    if required > cap:
        raise BudgetExceeded('minor enumeration', required, cap)

    enumerated = 0
    with stopwatch() as timing:
        for size in range(1, min(M.rows, M.cols) + 1):
            for X in combinations(range(M.rows), size):
                for Y in combinations(range(M.cols), size):
                    enumerated += 1
                    if det(M.submatrix(X, Y)) == 0:
                        witness = {'X': list(X), 'Y': list(Y)}
                        log_verification_failure(logger, 'sc-induced code', witness, level=logging.DEBUG)
                        return Verdict(ok=False, counterexample=witness, enumerated=enumerated,
                                       elapsed_ms=timing['elapsed_ms'], detail={'size': size})
    return Verdict(ok=True, enumerated=enumerated, elapsed_ms=timing['elapsed_ms'])


def dist_definition_check(M: Matrix, budget: Optional[int] = None) -> Verdict:
    """
    For every nonzero x: wt(xM) >= m - wt(x) + 1.

    Linearity reduces the pairwise distance condition to single vectors.

    Raises:
        BudgetExceeded: q^n exceeds the budget
    """
    cap = workbench_config.dist_budget if budget is None else budget
    q, n, m = M.field.q, M.rows, M.cols
    required = q ** n
    if required > cap:
        raise BudgetExceeded('distance enumeration', required, cap)

    G = M.to_numpy()
    enumerated = 0
    with stopwatch() as timing:
        for vectors in iter_field_vectors(q, n):
            input_weight = np.count_nonzero(vectors, axis=1)
            output_weight = np.count_nonzero((vectors @ G) % q, axis=1)
            bad = (input_weight > 0) & (output_weight < m - input_weight + 1)
            if bad.any():
                position = int(np.argmax(bad))
                enumerated += position + 1
                x = [int(v) for v in vectors[position]]
                log_verification_failure(logger, 'distance definition', {'x': x}, level=logging.DEBUG)
                return Verdict(ok=False, counterexample=x, enumerated=enumerated, elapsed_ms=timing['elapsed_ms'],
                               detail={'input_weight': int(input_weight[position]),
                                       'output_weight': int(output_weight[position])})
            enumerated += len(vectors)
    return Verdict(ok=True, enumerated=enumerated, elapsed_ms=timing['elapsed_ms'])


def check_mds(M: Matrix, budget: Optional[int] = None) -> Verdict:
    """
    Every choice of n columns of the n x m generator matrix is linearly independent.

    Raises:
        BudgetExceeded: C(m, n) exceeds the budget
    """
    cap = workbench_config.minor_budget if budget is None else budget
    if M.rows > M.cols:
        return Verdict(ok=False, detail={'reason': 'more rows than columns'})
    required = math.comb(M.cols, M.rows)
    if required > cap:
        raise BudgetExceeded('mds column subsets', required, cap)

    rows = list(range(M.rows))
    enumerated = 0
    with stopwatch() as timing:
        for Y in combinations(range(M.cols), M.rows):
            enumerated += 1
            if det(M.submatrix(rows, Y)) == 0:
                return Verdict(ok=False, counterexample={'Y': list(Y)}, enumerated=enumerated,
                               elapsed_ms=timing['elapsed_ms'])
    return Verdict(ok=True, enumerated=enumerated, elapsed_ms=timing['elapsed_ms'])


def is_mds(M: Matrix, budget: Optional[int] = None) -> bool:
    return check_mds(M, budget).ok
