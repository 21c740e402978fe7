import re
import threading

import pytest

from magmadual import batch
from magmadual.classify import classify_op
from magmadual.duality import group_ops_with_identity, partition_group_ops
from magmadual.enumerate import (
    ClassFilter,
    count_ops,
    default_workers,
    enumerate_ops,
    monoid_ops_with_identity,
    read_checkpoint,
    shard_ranges,
    write_checkpoint,
)
from magmadual.errors import BudgetError, RangeError
from magmadual.table import OpCode, decode_op

F = ClassFilter

# reference census; the semigroup counts are OEIS A023814 (1, 8, 113, 3492)
CENSUS = {
    1: {F.ALL: 1, F.ND: 1, F.SG: 1, F.MN: 1, F.GR: 1, F.ND_NOT_SG: 0, F.SG_NOT_ND: 0},
    2: {F.ALL: 16, F.ND: 14, F.SG: 8, F.MN: 4, F.GR: 2, F.ND_NOT_SG: 8, F.SG_NOT_ND: 2},
    3: {F.ALL: 19683, F.ND: 18150, F.SG: 113, F.MN: 33, F.GR: 3, F.ND_NOT_SG: 18082, F.SG_NOT_ND: 45},
}


def scalar_count(n, flt):
    # per-table oracle, independent of the vectorised masks
    total = 0
    for code in range(n ** (n * n)):
        r = classify_op(decode_op(OpCode(n, code)))
        keep = {
            F.ALL: True, F.ND: r.nd, F.SG: r.sg, F.MN: r.mn, F.GR: r.gr,
            F.ND_NOT_SG: r.nd and not r.sg, F.SG_NOT_ND: r.sg and not r.nd,
        }[flt]
        total += keep
    return total


@pytest.mark.parametrize("n", [1, 2, 3])
def test_census_table(n):
    for flt, expected in CENSUS[n].items():
        assert count_ops(n, flt, workers=1).count == expected


@pytest.mark.parametrize("flt", list(F))
def test_census_matches_scalar_oracle_order2(flt):
    assert count_ops(2, flt).count == scalar_count(2, flt)


def test_sg_order3_matches_scalar_oracle():
    assert count_ops(3, F.SG).count == scalar_count(3, F.SG) == 113


def test_visits_each_code_once_in_order():
    seen = []
    census = enumerate_ops(3, F.SG, seen.append, workers=1)
    assert census.count == len(seen) == 113
    assert seen == sorted(set(seen))
    assert all(classify_op(decode_op(OpCode(3, c))).sg for c in seen)


@pytest.mark.parametrize("workers", [1, 2, 8])
def test_worker_invariance(workers):
    lock = threading.Lock()
    seen = []

    def visit(c):
        with lock:
            seen.append(c)

    census = enumerate_ops(3, F.ND_NOT_SG, visit, workers=workers, shard_width=997)
    assert census.count == CENSUS[3][F.ND_NOT_SG] == len(seen)
    assert sorted(seen) == sorted(set(seen))
    assert census.workers == workers


def test_workers_from_environment(monkeypatch):
    monkeypatch.setenv("MAGMA_WORKERS", "3")
    assert default_workers() == 3
    assert count_ops(2, F.SG).workers == 3
    monkeypatch.setenv("MAGMA_WORKERS", "junk")
    assert default_workers() == 1


def test_shard_ranges():
    assert shard_ranges(10, 3) == [(0, 4), (4, 8), (8, 10)]
    assert shard_ranges(10, 1) == [(0, 10)]
    rs = shard_ranges(19683, 8)
    assert rs[0][0] == 0 and rs[-1][1] == 19683
    assert all(a[1] == b[0] for a, b in zip(rs, rs[1:]))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_groups_count_n_times_identity_class(n):
    gr = count_ops(n, F.GR).count
    assert gr == n * len(group_ops_with_identity(n, 0))
    if n >= 3:
        assert gr == partition_group_ops(n).total


def test_order4_generated_classes():
    assert count_ops(4, F.GR).count == 16
    mn = count_ops(4, F.MN).count
    assert mn == 4 * len(monoid_ops_with_identity(4, 0)) == 624


def test_monoid_generator_matches_scan():
    for n in (2, 3):
        scanned = []
        enumerate_ops(n, F.MN, scanned.append, workers=1)
        generated = sorted(int(c) for e in range(n) for c in monoid_ops_with_identity(n, e))
        assert scanned == generated


def test_filter_monotonicity():
    for n in (1, 2, 3):
        c = {f: count_ops(n, f).count for f in (F.GR, F.MN, F.SG, F.ND)}
        assert c[F.GR] <= c[F.MN] <= c[F.SG] and c[F.MN] <= c[F.ND]


def test_order4_semigroup_generation_count():
    # staged generation, since the 4**16 scan sits behind the opt-in flag
    assert len(batch.semigroup_tables(4)) == 3492


def test_large_scans_are_guarded():
    with pytest.raises(BudgetError):
        count_ops(4, F.SG)
    with pytest.raises(RangeError):
        count_ops(5, F.ALL, opt_in_large=True)
    with pytest.raises(RangeError):
        count_ops(0, F.ALL)


CHECKPOINT_LINE = re.compile(r"^shard=(\d+)\.\.(\d+) done=(\d+) count=(\d+)$")


def test_checkpoint_written(tmp_path):
    path = tmp_path / "scan.ckpt"
    census = enumerate_ops(3, F.SG, workers=2, checkpoint=path, checkpoint_every=1)
    lines = path.read_text().splitlines()
    assert len(lines) == 2 and all(CHECKPOINT_LINE.match(l) for l in lines)
    state = read_checkpoint(path)
    assert all(done == hi for (lo, hi), (done, _) in state.items())
    assert sum(k for _, k in state.values()) == census.count


def test_checkpoint_resume(tmp_path):
    path = tmp_path / "scan.ckpt"
    done = 10_000
    before = []
    enumerate_ops(3, F.SG, before.append, workers=1)
    partial = sum(1 for c in before if c < done)
    write_checkpoint(path, {(0, 19683): (done, partial)})
    seen = []
    census = enumerate_ops(3, F.SG, seen.append, workers=1, checkpoint=path)
    assert census.count == 113
    assert seen == [c for c in before if c >= done]
    assert read_checkpoint(path) == {(0, 19683): (19683, 113)}


def test_checkpoint_round_trip(tmp_path):
    path = tmp_path / "x.ckpt"
    state = {(0, 5): (3, 1), (5, 10): (10, 4)}
    write_checkpoint(path, state)
    assert read_checkpoint(path) == state
    assert path.read_text() == "shard=0..5 done=3 count=1\nshard=5..10 done=10 count=4\n"
