"""Evidence gathering for the covering question on duals.

Part 1 asks whether the duals of the nondegenerate, non-associative tables
cover exactly the associative, degenerate tables. Part 2 asks whether every
associative table is compatible with at least one nondegenerate table.
The scan reports what it finds and never extrapolates past what it scanned.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import batch
from .compat import BACKTRACK_MAX_N, dual_backtrack, iter_dual
from .errors import BudgetError, RangeError, VerificationError
from .table import code_space, decode_op, OpCode

EXHAUSTIVE_MAX_N = 3
SCAN_CHUNK = 1 << 14


@dataclass(frozen=True)
class QuestionReport:
    n: int
    complete: bool
    part1_holds: Optional[bool]
    part1_missing: tuple
    part2_holds: Optional[bool]
    part2_failures: tuple
    scanned: dict = field(default_factory=dict)
    scanned_ranges: tuple = ()

    @property
    def status(self) -> str:
        return "COMPLETE" if self.complete else "PARTIAL"


def _semigroups(n):
    return [int(c) for c in batch.codes_of(batch.semigroup_tables(n), n)]


def _is_nd(code, n):
    return len(set(decode_op(OpCode(n, code)).entries)) == n


def scan_question(n: int, budget: Optional[float] = None) -> QuestionReport:
    """Scan both parts of the question at order ``n``.

    Orders up to 3 are scanned exhaustively. Order 4 runs until ``budget``
    seconds elapse and is marked PARTIAL unless it finishes; a partial part
    reports its witnesses so far and no holds/fails verdict.
    """
    if not isinstance(n, int) or n < 1:
        raise RangeError(f"order must be a positive integer, got {n!r}")
    if n > BACKTRACK_MAX_N:
        raise RangeError(f"question scans support n <= {BACKTRACK_MAX_N}, got {n}")
    if n > EXHAUSTIVE_MAX_N and budget is None:
        raise BudgetError("order 4 scans need a time budget")
    deadline = time.monotonic() + budget if budget is not None else float("inf")

    # part 2: every semigroup against the nondegenerate tables in its dual
    sg_codes = _semigroups(n)
    sg_nd_side = [c for c in sg_codes if not _is_nd(c, n)]
    part2_failures = []
    part2_done = True
    for code in sg_codes:
        if time.monotonic() > deadline:
            part2_done = False
            break
        z = decode_op(OpCode(n, code))
        if not any(_is_nd(m, n) for m in iter_dual(z)):
            part2_failures.append(code)

    # part 1: union of duals of nondegenerate non-associative tables
    covered: set[int] = set()
    target = set(sg_nd_side)
    scanned_nd_not_sg = 0
    pos = 0
    total = code_space(n)
    while pos < total:
        if time.monotonic() > deadline:
            break
        stop = min(pos + SCAN_CHUNK, total)
        arr = batch.tables_in_range(n, pos, stop)
        mask = batch.nondegenerate_mask(arr, n) & ~batch.associative_filter(arr, n)
        for off in np.flatnonzero(mask):
            z = decode_op(OpCode(n, pos + int(off)))
            members, _ = dual_backtrack(z)
            for m in members:
                zm = decode_op(OpCode(n, m))
                if len(set(zm.entries)) == n or not batch.associative_mask(
                    np.asarray([zm.entries]), n
                )[0]:
                    raise VerificationError(
                        f"dual of nondegenerate non-associative {pos + int(off)} "
                        f"contains {m} outside the associative degenerate tables"
                    )
                covered.add(m)
            scanned_nd_not_sg += 1
        pos = stop

    part1_done = pos >= total
    missing = tuple(sorted(target - covered))
    complete = part1_done and part2_done
    scanned = {
        "nd_not_sg": scanned_nd_not_sg,
        "sg": len(sg_codes),
        "sg_not_nd": len(sg_nd_side),
        "covered": len(covered),
    }
    return QuestionReport(
        n=n,
        complete=complete,
        part1_holds=(not missing) if part1_done else None,
        part1_missing=missing,
        part2_holds=(not part2_failures) if part2_done else None,
        part2_failures=tuple(part2_failures),
        scanned=scanned,
        scanned_ranges=((0, pos),),
    )
