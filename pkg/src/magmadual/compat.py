"""Induced operations on tables, compatibility, and duals.

For tables ``z1``, ``z2`` and an element ``a`` the hat and check products
are the tables

    b (z1 ^a z2) c = (b z1 a) z2 c
    b (z1 va z2) c = b z1 (a z2 c)

Two tables are compatible when the mixed associativity laws hold in both
orders. The dual of ``z`` is the set of all tables compatible with ``z``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import batch
from .classify import classify_op
from .errors import BudgetError, MethodError, OrderMismatchError, RangeError
from .table import CayleyTable, OpCode, _check_element, decode_op, encode_op, has_codes

DEFAULT_NODE_BUDGET = 10**9
EXHAUSTIVE_MAX_N = 3
BACKTRACK_MAX_N = 4


class Method(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    BACKTRACK = "backtrack"
    SANDWICH = "sandwich"


class Equation(str, enum.Enum):
    # (a z1 b) z2 c != a z1 (b z2 c)
    HAT_NE_CHECK_1 = "HAT_NE_CHECK_1"
    # (a z2 b) z1 c != a z2 (b z1 c)
    HAT_NE_CHECK_2 = "HAT_NE_CHECK_2"


@dataclass(frozen=True)
class CompatReport:
    compatible: bool
    failing_equation: Optional[Equation] = None
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.compatible


@dataclass(frozen=True)
class DualSet:
    base: OpCode
    members: tuple
    method: Method

    @property
    def n(self) -> int:
        return self.base.n

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, item):
        if isinstance(item, CayleyTable):
            if item.n != self.n:
                return False
            item = item.code
        elif isinstance(item, OpCode):
            if item.n != self.n:
                return False
            item = item.code
        lo, hi = 0, len(self.members)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.members[mid] < item:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(self.members) and self.members[lo] == item

    def tables(self) -> list[CayleyTable]:
        return [decode_op(OpCode(self.n, c)) for c in self.members]


def _same_order(z1, z2):
    if z1.n != z2.n:
        raise OrderMismatchError(f"orders differ: {z1.n} vs {z2.n}")


def hat_op(z1: CayleyTable, a: int, z2: CayleyTable) -> CayleyTable:
    """``b (z1 ^a z2) c = (b z1 a) z2 c``."""
    _same_order(z1, z2)
    _check_element(z1.n, a)
    n, e1, e2 = z1.n, z1.entries, z2.entries
    return CayleyTable._trusted(n, tuple(e2[e1[b * n + a] * n + c] for b in range(n) for c in range(n)))


def check_op(z1: CayleyTable, a: int, z2: CayleyTable) -> CayleyTable:
    """``b (z1 va z2) c = b z1 (a z2 c)``."""
    _same_order(z1, z2)
    _check_element(z1.n, a)
    n, e1, e2 = z1.n, z1.entries, z2.entries
    return CayleyTable._trusted(n, tuple(e1[b * n + e2[a * n + c]] for b in range(n) for c in range(n)))


def are_compatible(z1: CayleyTable, z2: CayleyTable) -> CompatReport:
    _same_order(z1, z2)
    n, x, y = z1.n, z1.entries, z2.entries
    for a in range(n):
        for b in range(n):
            xab, yab = x[a * n + b], y[a * n + b]
            for c in range(n):
                if y[xab * n + c] != x[a * n + y[b * n + c]]:
                    return CompatReport(False, Equation.HAT_NE_CHECK_1, (a, b, c))
                if x[yab * n + c] != y[a * n + x[b * n + c]]:
                    return CompatReport(False, Equation.HAT_NE_CHECK_2, (a, b, c))
    return CompatReport(True)


# ---------------------------------------------------------------------------
# duals


@lru_cache(maxsize=None)
def _table_array(n):
    arr = batch.all_tables(n)
    arr.setflags(write=False)
    return arr


def _dual_exhaustive(z):
    if z.n > EXHAUSTIVE_MAX_N:
        raise MethodError(f"exhaustive duals need n <= {EXHAUSTIVE_MAX_N}, got {z.n}")
    mask = batch.compatible_mask(z.entries, _table_array(z.n), z.n)
    # row index of the all-tables array is the code
    return tuple(int(c) for c in np.flatnonzero(mask))


@lru_cache(maxsize=64)
def _schedule(z):
    """Multi-associativity constraints grouped by the last position they read.

    Position ``p`` is entry ``p`` of the unknown table in row-major order.
    Kind-1 entries ``(p, q, a)`` mean ``w[p] == z[a*n + w[q]]``; kind-2
    entries ``(p, q, c)`` mean ``z[w[p]*n + c] == w[q]``.
    """
    n, zf = z.n, z.entries
    first = [[] for _ in range(n * n)]
    second = [[] for _ in range(n * n)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                p, q = zf[a * n + b] * n + c, b * n + c
                first[max(p, q)].append((p, q, a * n))
                p, q = a * n + b, a * n + zf[b * n + c]
                second[max(p, q)].append((p, q, c))
    return tuple(map(tuple, first)), tuple(map(tuple, second))


def iter_dual(z: CayleyTable, budget: int = DEFAULT_NODE_BUDGET, stats: dict | None = None):
    """Depth-first construction of every table compatible with ``z``.

    Yields member codes in ascending order. Each constraint is tested
    exactly once on any branch, at the depth where its last referenced
    entry is assigned. ``stats["nodes"]`` counts assignments tried.
    """
    n = z.n
    size = n * n
    zf = z.entries
    first, second = _schedule(z)
    w = [0] * size
    nodes = 0

    def consistent(k):
        for p, q, off in first[k]:
            if w[p] != zf[off + w[q]]:
                return False
        for p, q, c in second[k]:
            if zf[w[p] * n + c] != w[q]:
                return False
        return True

    # nxt[k] is the next value to try at depth k
    nxt = [0] * (size + 1)
    k = 0
    try:
        while k >= 0:
            if k == size:
                code = 0
                for x in w:
                    code = code * n + x
                yield code
                k -= 1
                continue
            v = nxt[k]
            if v == n:
                nxt[k] = 0
                k -= 1
                continue
            nxt[k] = v + 1
            w[k] = v
            nodes += 1
            if nodes > budget:
                raise BudgetError(f"backtracking exceeded {budget} nodes")
            if consistent(k):
                k += 1
    finally:
        if stats is not None:
            stats["nodes"] = nodes


def dual_backtrack(z: CayleyTable, budget: int = DEFAULT_NODE_BUDGET) -> tuple[tuple, int]:
    """Sorted member codes of the dual of ``z`` and the search node count."""
    stats: dict = {}
    members = tuple(iter_dual(z, budget, stats))
    return members, stats["nodes"]


def _dual_sandwich(z):
    rec = classify_op(z)
    if not rec.mn:
        raise MethodError("sandwich duals are only defined for monoids")
    return tuple(sorted({hat_op(z, a, z).code for a in range(z.n)}))


def resolve_method(z: CayleyTable, method) -> Method:
    if method in (None, "auto"):
        if z.n <= EXHAUSTIVE_MAX_N:
            return Method.EXHAUSTIVE
        if classify_op(z).mn:
            return Method.SANDWICH
        return Method.BACKTRACK
    return Method(method)


def dual_set(z: CayleyTable, method=Method.EXHAUSTIVE, budget: int = DEFAULT_NODE_BUDGET) -> DualSet:
    """All tables compatible with ``z``, as sorted codes.

    ``SANDWICH`` returns ``{z ^a z : a in S}``, which is the full dual only
    for monoids, and is refused otherwise.
    """
    method = resolve_method(z, method)
    if not has_codes(z.n):
        raise RangeError(f"duals need OpCodes; order {z.n} has none")
    if method is Method.EXHAUSTIVE:
        members = _dual_exhaustive(z)
    elif method is Method.BACKTRACK:
        if z.n > BACKTRACK_MAX_N:
            raise MethodError(f"backtracking duals need n <= {BACKTRACK_MAX_N}, got {z.n}")
        members, _ = dual_backtrack(z, budget)
    else:
        members = _dual_sandwich(z)
    return DualSet(encode_op(z), members, method)
