"""
Exact replay of the upper-bound induction as a wire ledger.

The replay instantiates the induction for S_d(n, n/r, n) with r = n and
records every lemma application with its wire contribution as an exact
rational. The constants c and D are derived from the configured
ConstantTable.

For d >= 6 the tree is

    total (ub_main)
      member_1 (ub_d2)                      band n/c0 .. n
      member_i (ub_main_member), i = 2..h   band n/A^(i) .. n/A^(i-1)
        low (reduction): condenser, inner (ub_main at d - 2), amplifier
        high (handy)
        booster (composition of the two halves)
      composition                           c1 D h n for the h members

Every inner node carries the sum of its children. With c0 >= 6 and
d >= 6 the chain already covers every finite n after one step, so the
member subtree is also replayed on its own at r = ceil(c0) and checked
against 2cn.
"""

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional

import pandas as pd

from src.ack.inverse_ackermann import ackermann, ackermann_iterate, lambda_d
from src.common.errors import DomainError
from src.common.logger import setup_logger

from .constants import ConstantTable

logger = setup_logger(__name__)

LEDGER_COLUMNS = ['node', 'lemma', 'params', 'wires']


@dataclass
class LedgerNode:
    node: str
    lemma: str
    params: Dict[str, Any]
    wires: Fraction
    children: List['LedgerNode'] = field(default_factory=list)

    def leaves(self) -> Iterator['LedgerNode']:
        if not self.children:
            yield self
            return
        for child in self.children:
            yield from child.leaves()

    def walk(self) -> Iterator['LedgerNode']:
        yield self
        for child in self.children:
            yield from child.walk()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'node': self.node,
            'lemma': self.lemma,
            'params': self.params,
            'wires': str(self.wires),
            'children': [child.to_dict() for child in self.children],
        }


@dataclass
class BoundLedger:
    """Ledger tree plus the derived constants and the bound it is compared against."""
    n: int
    d: int
    constants: ConstantTable
    c: Fraction
    D: Fraction
    h: int
    root: LedgerNode
    bound: Fraction
    member: Optional[LedgerNode] = None

    @property
    def total(self) -> Fraction:
        return sum((leaf.wires for leaf in self.root.leaves()), Fraction(0))

    @property
    def within_bound(self) -> bool:
        return self.total <= self.bound

    @property
    def member_within_bound(self) -> Optional[bool]:
        """Member subtree against 2cn; None at d = 4."""
        if self.member is None:
            return None
        return self.member.wires <= 2 * self.c * self.n

    def to_frame(self) -> pd.DataFrame:
        """One row per node, root first, then the member replay."""
        nodes = list(self.root.walk())
        if self.member is not None:
            nodes.extend(self.member.walk())
        rows = [
            {'node': node.node, 'lemma': node.lemma,
             'params': json.dumps(node.params, sort_keys=True, default=str), 'wires': str(node.wires)}
            for node in nodes
        ]
        return pd.DataFrame(rows, columns=LEDGER_COLUMNS)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n, 'd': self.d, 'c': str(self.c), 'D': str(self.D), 'h': self.h,
            'total': str(self.total), 'bound': str(self.bound), 'within_bound': self.within_bound,
            'constants': self.constants.model_dump(), 'tree': self.root.to_dict(),
            'member': self.member.to_dict() if self.member is not None else None,
            'member_within_bound': self.member_within_bound,
        }

    def to_json(self) -> Dict[str, Any]:
        return self.to_dict()


def log_c0_squared(ct: ConstantTable) -> int:
    """ceil(log2 ceil(c0))^2, an exact upper bound on (log c0)^2."""
    return ((math.ceil(ct.c0) - 1).bit_length()) ** 2


def derive_constants(ct: ConstantTable, d: int) -> Dict[str, Fraction]:
    """
    D = 2 c2 max(D1, D2); at d = 4 only c >= c6 is invoked, above that
    c = max(c1 D + (log c0)^2 c3, 2(2 c1 D1 + c4 + c5), c6).
    """
    D = 2 * ct.c2 * max(ct.D1, ct.D2)
    if d == 4:
        return {'c': ct.c6, 'D': D}
    c = max(ct.c1 * D + log_c0_squared(ct) * ct.c3, 2 * (2 * ct.c1 * ct.D1 + ct.c4 + ct.c5), ct.c6)
    return {'c': c, 'D': D}


def chain_length(k: int, r: int, c0: Fraction) -> int:
    """Least h with A_{k-1}^{(h)}(ceil(c0)) >= r."""
    seed = math.ceil(c0)
    h = 0
    while ackermann_iterate(k - 1, h, seed) < r:
        h += 1
    return h


def _sum_node(node: LedgerNode) -> LedgerNode:
    for child in node.children:
        if child.children:
            _sum_node(child)
    node.wires = sum((child.wires for child in node.children), Fraction(0))
    return node


def member_ledger(name: str, n: int, k: int, r: int, c: Fraction, ct: ConstantTable) -> LedgerNode:
    """
    Member PGC (n, n/A(k-1, r), n/r) of depth 2k as two composed halves.

    The low half (n, n/A(k-1, r), n/4r^2) is a reduction around the depth
    2(k-1) hypothesis on floor(n/2r) inputs; the high half (n, n/4r^2, n/r)
    is the handy depth-4 code. The reduction's c4 n is charged half to the
    condenser and half to the amplifier.
    """
    if k < 3 or r < 1:
        raise DomainError(f"members need k >= 3 and r >= 1, got {k}, {r}")
    outer = ct.c4 * n / 2
    inner_n = n // (2 * r)
    band = {'r': r, 'r_hi': ackermann(k - 1, r).to_json(), 'depth': 2 * k}
    low = LedgerNode(f'{name}.low', 'reduction', {**band, 'band': 'n/A(k-1,r)..n/4r^2'}, Fraction(0), [
        LedgerNode(f'{name}.low.condenser', 'condenser', {'n': n, 'm': inner_n, 'depth': 1}, outer),
        LedgerNode(f'{name}.low.inner', 'ub_main', {'n': inner_n, 'depth': 2 * (k - 1), 'lambda': r},
                   Fraction(3, 2) * c * n),
        LedgerNode(f'{name}.low.amplifier', 'amplifier', {'n': inner_n, 'm': n, 'depth': 1}, outer),
    ])
    high = LedgerNode(f'{name}.high', 'handy', {'r': r, 'depth': 4, 'band': 'n/4r^2..n/r'}, ct.c5 * n)
    booster = LedgerNode(f'{name}.booster', 'composition', {'members': 2, 'fanin': str(ct.D1)},
                         2 * ct.c1 * ct.D1 * n)
    return _sum_node(LedgerNode(name, 'ub_main_member', band, Fraction(0), [low, high, booster]))


def upper_bound_ledger(n: int, d: int, ct: Optional[ConstantTable] = None) -> BoundLedger:
    """
    Replay the induction for S_d(n, n/r, n) with r = n.

    Args:
        n: Inputs, at least 2
        d: Even depth, at least 4
        ct: Constant table (defaults: c0 = 6, everything else 1)
    """
    if d < 4 or d % 2:
        raise DomainError(f"d must be even and at least 4, got {d}")
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    ct = ct or ConstantTable()
    derived = derive_constants(ct, d)
    c, D = derived['c'], derived['D']
    r = n
    lam = lambda_d(d, r)
    bound = 3 * c * lam * n

    if d == 4:
        wires = 3 * c * lam * n
        root = LedgerNode('total', 'ub_main', {'n': n, 'd': d, 'r': r, 'lambda': lam}, Fraction(0), [
            LedgerNode('base_d4', 'ub_main_base', {'n': n, 'r': r, 'lambda_4': lam, 'c': str(c)}, wires)
        ])
        return _finish(BoundLedger(n, d, ct, c, D, 0, _sum_node(root), bound))

    k = d // 2
    seed = math.ceil(ct.c0)
    log_sq = log_c0_squared(ct)
    h = chain_length(k, r, ct.c0)
    members = [LedgerNode('member_1', 'ub_d2', {'n': n, 'c0': str(ct.c0), 'log2_c0_squared': log_sq},
                          ct.c3 * n * log_sq)]
    for i in range(2, h + 1):
        lower = ackermann_iterate(k - 1, i - 1, seed)
        members.append(member_ledger(f'member_{i}', n, k, int(lower), c, ct))
    overhead = LedgerNode('composition', 'composition', {'members': h, 'D': str(D), 'depth': d},
                          ct.c1 * D * h * n)
    root = LedgerNode('total', 'ub_main', {'n': n, 'd': d, 'r': r, 'lambda': lam, 'h': h}, Fraction(0),
                      members + [overhead])
    member = member_ledger('member_bound', n, k, seed, c, ct)

    for node in members:
        if node.wires > 2 * c * n:
            logger.warning(f"ledger node {node.node} uses {node.wires} > 2cn = {2 * c * n}")
    return _finish(BoundLedger(n, d, ct, c, D, h, _sum_node(root), bound, member))


def _finish(ledger: BoundLedger) -> BoundLedger:
    if not ledger.within_bound:
        logger.warning(f"ledger total {ledger.total} exceeds 3c lambda_d(r) n = {ledger.bound} "
                       f"(n={ledger.n}, d={ledger.d})")
    if ledger.member is not None and not ledger.member_within_bound:
        logger.warning(f"member replay {ledger.member.wires} exceeds 2cn = {2 * ledger.c * ledger.n}")
    logger.debug(f"ledger n={ledger.n}, d={ledger.d}: c={ledger.c}, h={ledger.h}, total={ledger.total}")
    return ledger


def ledger_grid(ns: List[int], ds: List[int], ct: Optional[ConstantTable] = None) -> pd.DataFrame:
    """Totals over a grid: columns n, d, c, h, total, total_per_n, bound, within_bound."""
    rows = []
    for n in ns:
        for d in ds:
            ledger = upper_bound_ledger(n, d, ct)
            rows.append({'n': n, 'd': d, 'c': str(ledger.c), 'h': ledger.h, 'total': str(ledger.total),
                         'total_per_n': float(ledger.total / n), 'bound': str(ledger.bound),
                         'within_bound': ledger.within_bound})
    return pd.DataFrame(rows)
