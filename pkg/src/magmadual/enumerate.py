"""Streaming census of binary operations, sharded over code ranges."""

from __future__ import annotations

import enum
import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import batch
from .duality import group_ops_with_identity
from .errors import BudgetError, RangeError
from .table import code_space, has_codes

log = logging.getLogger(__name__)

CHUNK = 1 << 18
CHECKPOINT_EVERY = 10**8
FULL_SCAN_MAX_N = 3
GENERATED_MONOID_MAX_N = 4


class ClassFilter(str, enum.Enum):
    ALL = "all"
    ND = "nd"
    SG = "sg"
    MN = "mn"
    GR = "gr"
    ND_NOT_SG = "nd_not_sg"
    SG_NOT_ND = "sg_not_nd"


@dataclass(frozen=True)
class Census:
    n: int
    filter: ClassFilter
    count: int
    elapsed: float
    workers: int


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("MAGMA_WORKERS", "1")))
    except ValueError:
        return 1


def filter_mask(arr: np.ndarray, n: int, flt: ClassFilter) -> np.ndarray:
    if flt is ClassFilter.ALL:
        return np.ones(len(arr), dtype=bool)
    if flt is ClassFilter.ND:
        return batch.nondegenerate_mask(arr, n)
    sg = batch.associative_filter(arr, n)
    if flt is ClassFilter.SG:
        return sg
    if flt is ClassFilter.MN:
        return batch.monoid_mask(arr, n, sg)
    if flt is ClassFilter.GR:
        return batch.group_mask(arr, n, sg)
    nd = batch.nondegenerate_mask(arr, n)
    if flt is ClassFilter.ND_NOT_SG:
        return nd & ~sg
    return sg & ~nd


def shard_ranges(total: int, workers: int, width: Optional[int] = None) -> list[tuple[int, int]]:
    """Contiguous ``[lo, hi)`` ranges of equal width covering ``[0, total)``."""
    if width is None:
        width = -(-total // max(1, workers))
    width = max(1, width)
    return [(lo, min(lo + width, total)) for lo in range(0, total, width)]


# ---------------------------------------------------------------------------
# checkpoints


def read_checkpoint(path) -> dict:
    """Map ``(lo, hi) -> (done, count)`` from a checkpoint file."""
    state = {}
    p = Path(path)
    if not p.exists():
        return state
    for line in p.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = dict(part.split("=", 1) for part in line.split())
        lo, hi = fields["shard"].split("..")
        state[(int(lo), int(hi))] = (int(fields["done"]), int(fields["count"]))
    return state


def write_checkpoint(path, state: dict) -> None:
    lines = [f"shard={lo}..{hi} done={done} count={count}" for (lo, hi), (done, count) in sorted(state.items())]
    tmp = Path(str(path) + ".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# generators for the sparse classes


def monoid_ops_with_identity(n: int, e: int) -> np.ndarray:
    """Codes of all monoid tables with identity ``e`` (n <= 4), ascending."""
    if n > GENERATED_MONOID_MAX_N:
        raise RangeError(f"monoid generation supports n <= {GENERATED_MONOID_MAX_N}")
    free = [(i, j) for i in range(n) for j in range(n) if i != e and j != e]
    k = len(free)
    arr = np.empty((n ** k, n * n), dtype=np.int64)
    for i in range(n):
        arr[:, e * n + i] = i
        arr[:, i * n + e] = i
    codes = np.arange(n ** k, dtype=np.int64)
    for pos in range(k - 1, -1, -1):
        i, j = free[pos]
        arr[:, i * n + j] = codes % n
        codes //= n
    keep = batch.associative_mask(arr, n)
    return np.sort(batch.codes_of(arr[keep], n))


def _generated_codes(n, flt):
    if flt is ClassFilter.GR:
        codes = [t.code for e in range(n) for t in group_ops_with_identity(n, e)]
    else:
        codes = [int(c) for e in range(n) for c in monoid_ops_with_identity(n, e)]
    return sorted(codes)


# ---------------------------------------------------------------------------


def _scan_shard(n, flt, lo, hi, visitor, start, count, checkpoint, state, lock, every):
    pos = start
    since = 0
    while pos < hi:
        stop = min(pos + CHUNK, hi)
        arr = batch.tables_in_range(n, pos, stop)
        mask = filter_mask(arr, n, flt)
        hits = np.flatnonzero(mask)
        count += len(hits)
        if visitor is not None:
            for off in hits:
                visitor(pos + int(off))
        since += stop - pos
        pos = stop
        if checkpoint is not None and (since >= every or pos == hi):
            since = 0
            with lock:
                state[(lo, hi)] = (pos, count)
                write_checkpoint(checkpoint, state)
            log.info("shard %d..%d at %d, count %d", lo, hi, pos, count)
    return count


def enumerate_ops(
    n: int,
    flt=ClassFilter.ALL,
    visitor: Optional[Callable[[int], None]] = None,
    *,
    workers: Optional[int] = None,
    opt_in_large: bool = False,
    shard_width: Optional[int] = None,
    checkpoint=None,
    checkpoint_every: int = CHECKPOINT_EVERY,
) -> Census:
    """Visit the code of every table of order ``n`` passing ``flt``.

    With one worker codes arrive in ascending order; with several, in
    ascending order within each shard, and the visitor must tolerate
    concurrent calls. GR and MN at n = 4 are generated directly instead of
    scanned. ``checkpoint`` names a progress file that is rewritten every
    ``checkpoint_every`` codes per shard and resumed from when present.
    """
    flt = ClassFilter(flt)
    if not isinstance(n, int) or n < 1:
        raise RangeError(f"order must be a positive integer, got {n!r}")
    if not has_codes(n):
        raise RangeError(f"order {n} has no 64-bit codes")
    workers = workers or default_workers()
    t0 = time.perf_counter()

    generated = n > FULL_SCAN_MAX_N and (
        flt is ClassFilter.GR or (flt is ClassFilter.MN and n <= GENERATED_MONOID_MAX_N)
    )
    if generated:
        codes = _generated_codes(n, flt)
        if visitor is not None:
            for c in codes:
                visitor(c)
        return Census(n, flt, len(codes), time.perf_counter() - t0, workers)

    if n > FULL_SCAN_MAX_N:
        if n > 4:
            raise RangeError(f"full scans support n <= 4, got {n}")
        if not opt_in_large:
            raise BudgetError(f"a full scan of order {n} needs the explicit opt-in flag")

    total = code_space(n)
    shards = shard_ranges(total, workers, shard_width)
    state = read_checkpoint(checkpoint) if checkpoint is not None else {}
    lock = threading.Lock()

    def run(rng):
        lo, hi = rng
        start, count = state.get((lo, hi), (lo, 0))
        return _scan_shard(n, flt, lo, hi, visitor, start, count, checkpoint, state, lock, checkpoint_every)

    if workers == 1 or len(shards) == 1:
        counts = [run(s) for s in shards]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(run, shards))
    return Census(n, flt, sum(counts), time.perf_counter() - t0, workers)


def count_ops(n: int, flt=ClassFilter.ALL, **kwargs) -> Census:
    return enumerate_ops(n, flt, None, **kwargs)
