"""Reproduction checklist for the worked examples of orders 3 and 4.

The tables z1..z8 (order 3) and z1..z4 (order 4) ship as text files under
``data/golden``. ``run_checklist`` evaluates items A1..A10 against a corpus
directory and returns one ``CheckResult`` per item.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import laws
from .compat import Method, are_compatible, dual_set, hat_op
from .duality import (
    Permutation,
    automorphisms,
    conjugate,
    count_group_structures,
    group_ops_with_identity,
    iso_classes,
    left_coset,
    partition_group_ops,
    right_coset,
)
from .enumerate import ClassFilter, count_ops, enumerate_ops
from .errors import MagmaError
from .explorer import scan_question
from .table import CayleyTable, LabelMap, OpCode, decode_op, read_table, write_table

ABC = LabelMap(("a", "b", "c"))

# Hat-product tables on the duals printed for order 3; row = left factor.
GROUP_HAT_TABLES = {
    "a": [["z1", "z2", "z3"], ["z2", "z3", "z1"], ["z3", "z1", "z2"]],
    "b": [["z3", "z1", "z2"], ["z1", "z2", "z3"], ["z2", "z3", "z1"]],
    "c": [["z2", "z3", "z1"], ["z3", "z1", "z2"], ["z1", "z2", "z3"]],
}
MONOID_HAT_TABLES = {
    "a": [["z4", "z5", "z6"], ["z5", "z4", "z6"], ["z6", "z6", "z6"]],
    "b": [["z5", "z4", "z6"], ["z4", "z5", "z6"], ["z6", "z6", "z6"]],
    "c": [["z6", "z6", "z6"], ["z6", "z6", "z6"], ["z6", "z6", "z6"]],
}

RUNTIME_LIMITS = {
    "A1": 1.0,
    "A2": 5.0,
    "A3": 10.0,
    "A5": 120.0,
    "A6": 30.0,
    "A9": 300.0,
    "A10": 120.0,
}

DEFAULT_SAMPLES = 10_000


def default_corpus_dir() -> Path:
    return Path(str(resources.files("magmadual") / "data" / "golden"))


def load_corpus(root=None) -> dict:
    """``{"n3": {"z1": (table, labels), ...}, "n4": {...}}``; missing files are skipped."""
    root = Path(root) if root is not None else default_corpus_dir()
    corpus: dict = {"n3": {}, "n4": {}}
    for key, count in (("n3", 8), ("n4", 4)):
        for i in range(1, count + 1):
            path = root / key / f"z{i}.tbl"
            if path.exists():
                corpus[key][f"z{i}"] = read_table(path.read_text(encoding="utf-8"))
    return corpus


@dataclass
class CheckResult:
    item: str
    title: str
    passed: bool
    details: list = field(default_factory=list)
    elapsed: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.item:<4} {status}  {self.title} ({self.elapsed:.2f}s)"


class _Checker:
    def __init__(self, corpus, samples):
        self.corpus = corpus
        self.samples = samples
        self.failures: list = []

    def t3(self, name) -> CayleyTable:
        try:
            return self.corpus["n3"][name][0]
        except KeyError:
            raise MagmaError(f"corpus lacks order-3 table {name}") from None

    def t4(self, name) -> CayleyTable:
        try:
            return self.corpus["n4"][name][0]
        except KeyError:
            raise MagmaError(f"corpus lacks order-4 table {name}") from None

    def expect(self, cond, message):
        if not cond:
            self.failures.append(message)

    # A1 ------------------------------------------------------------------
    def a1(self):
        seen = []
        census = enumerate_ops(3, ClassFilter.GR, seen.append, workers=1)
        total = count_ops(3, ClassFilter.ALL, workers=1).count
        self.expect(total == 19683, f"|S^(SxS)| = {total}, expected 19683")
        self.expect(census.count == 3, f"{census.count} group tables, expected 3")
        found = {write_table(decode_op(OpCode(3, c)), ABC) for c in seen}
        expected = {write_table(self.t3(z), ABC) for z in ("z1", "z2", "z3")}
        self.expect(found == expected, "group tables differ from z1, z2, z3")

    # A2 ------------------------------------------------------------------
    def a2(self):
        z = {k: self.t3(k) for k in ("z1", "z2", "z3")}
        target = sorted(t.code for t in z.values())
        for name, t in z.items():
            members = list(dual_set(t, Method.EXHAUSTIVE).members)
            self.expect(members == target, f"dual({name}) = {members}, expected {target}")
        self._hat_tables(z, GROUP_HAT_TABLES)

    def _hat_tables(self, z, expected):
        names = list(z)
        for label, rows in expected.items():
            a = ABC.index(label)
            for i, left in enumerate(names):
                for j, right in enumerate(names):
                    got = hat_op(z[left], a, z[right])
                    want = z[rows[i][j]]
                    self.expect(got == want, f"{left} ^{label} {right} != {rows[i][j]}")

    # A3 ------------------------------------------------------------------
    def a3(self):
        z4, z5, z6, z7, z8 = (self.t3(k) for k in ("z4", "z5", "z6", "z7", "z8"))
        want4 = sorted(t.code for t in (z4, z5, z6))
        sand = list(dual_set(z4, Method.SANDWICH).members)
        exh = list(dual_set(z4, Method.EXHAUSTIVE).members)
        self.expect(sand == want4, "sandwich dual of z4 != {z4, z5, z6}")
        self.expect(exh == want4, "exhaustive dual of z4 != {z4, z5, z6}")
        want7 = sorted(t.code for t in (z7, z8, z6))
        self.expect(list(dual_set(z7, Method.EXHAUSTIVE).members) == want7, "dual of z7 != {z7, z8, z6}")
        self.expect(list(dual_set(z7, Method.SANDWICH).members) == want7, "sandwich dual of z7 != {z7, z8, z6}")
        d6 = dual_set(z6, Method.EXHAUSTIVE).members
        self.expect(len(d6) == 81, f"|dual(z6)| = {len(d6)}, expected 81")
        c = 2
        template = set()
        for free in np.ndindex(3, 3, 3, 3):
            rows = [[free[0], free[1], c], [free[2], free[3], c], [c, c, c]]
            template.add(CayleyTable.from_rows(rows).code)
        self.expect(set(d6) == template, "dual(z6) differs from the starred template")
        self._hat_tables({"z4": z4, "z5": z5, "z6": z6}, MONOID_HAT_TABLES)

    # A4 ------------------------------------------------------------------
    def a4(self):
        z4, z6, z7 = self.t3("z4"), self.t3("z6"), self.t3("z7")
        rep = are_compatible(z4, z7)
        self.expect(not rep.compatible and rep.witness is not None, "z4 and z7 reported compatible")
        d4 = set(dual_set(z4).members)
        d6 = set(dual_set(z6).members)
        d7 = set(dual_set(z7).members)
        self.expect(z4.code in d6 and z7.code in d6, "z4 or z7 missing from dual(z6)")
        self.expect(d4 < d6, "dual(z4) is not a proper subset of dual(z6)")
        self.expect(d4 & d7 == {z6.code}, "dual(z4) and dual(z7) do not meet exactly in z6")

    # A5 ------------------------------------------------------------------
    def a5(self):
        checked = 0
        for n in (1, 2, 3):
            masks = laws.class_masks(n)
            for code in np.flatnonzero(masks["mn"]):
                z0 = decode_op(OpCode(n, int(code)))
                members = dual_set(z0, Method.EXHAUSTIVE).members
                for v in laws.sandwich_duality(z0, members):
                    self.failures.append(f"order {n} monoid {int(code)}: {v}")
                checked += 1
        self.expect(checked == 1 + 4 + 33, f"scanned {checked} monoids, expected 38")

    # A6 ------------------------------------------------------------------
    def a6(self):
        expected = sorted(self.t4(k) for k in ("z1", "z2", "z3", "z4"))
        got = group_ops_with_identity(4, 0)
        self.expect(got == expected, "group tables with identity a differ from z1..z4")
        report = partition_group_ops(4)
        self.expect(len(report.blocks) == 4, f"{len(report.blocks)} blocks, expected 4")
        self.expect(all(len(b) == 4 for b in report.blocks), "a block does not have 4 members")
        union = [m for b in report.blocks for m in b.members]
        self.expect(len(union) == len(set(union)), "blocks overlap")
        independent = {t.code for e in range(4) for t in group_ops_with_identity(4, e)}
        self.expect(set(union) == independent, "blocks do not cover all group tables")
        self.expect(report.total == 16 == len(independent), f"total {report.total}, expected 16")
        expected_blocks = {frozenset(dual_set(t, Method.SANDWICH).members) for t in expected}
        self.expect(expected_blocks == {frozenset(b.members) for b in report.blocks},
                    "blocks are not the duals of z1..z4")

    # A7 ------------------------------------------------------------------
    def a7(self):
        classes = iso_classes(4, 0)
        z1, z4 = self.t4("z1"), self.t4("z4")
        by_member = {m: c for c in classes for m in c.members}
        c1, c4 = by_member.get(z1), by_member.get(z4)
        self.expect(c1 is not None and (c1.size, c1.aut_size) == (3, 2), "class of z1 is not size 3 with |Aut| 2")
        self.expect(c4 is not None and (c4.size, c4.aut_size) == (1, 6), "class of z4 is not size 1 with |Aut| 6")
        self.expect(sorted(c.size for c in classes) == [1, 3], "class sizes are not {1, 3}")
        for c in classes:
            self.expect(c.size == math.factorial(3) // c.aut_size, "class size != 3!/|Aut|")
        self.expect(count_group_structures(3) == 1, "order 3 does not have one group structure")
        self.expect(count_group_structures(4) == 2, "order 4 does not have two group structures")

    # A8 ------------------------------------------------------------------
    def a8(self):
        z1, z2, z3 = self.t4("z1"), self.t4("z2"), self.t4("z3")
        sigma0 = Permutation.swap(4, 1, 2)
        tau0 = Permutation.swap(4, 1, 3)
        aut = automorphisms(z1)
        self.expect(tau0 in aut, "(b d) is not an automorphism of z1")
        self.expect(conjugate(z1, tau0 * sigma0) == z3, "z1 conjugated by (b d)(b c) != z3")
        for tau in aut:
            self.expect(conjugate(z1, sigma0 * tau) == z2, f"z1 conjugated by (b c) o {tau.image} != z2")
        self.expect(left_coset(sigma0, aut) != right_coset(aut, sigma0), "cosets of Aut(z1) coincide")

    # A9 ------------------------------------------------------------------
    def a9(self):
        for n in (1, 2, 3):
            for law, violations in laws.exhaustive_suite(n).items():
                for v in violations:
                    self.failures.append(f"order {n} {law}: {v}")
        if self.samples:
            for law, violations in laws.sampled_suite(4, self.samples).items():
                for v in violations:
                    self.failures.append(f"order 4 {law}: {v}")

    # A10 -----------------------------------------------------------------
    def a10(self):
        for n in (2, 3):
            rep = scan_question(n)
            self.expect(rep.complete, f"order {n} scan incomplete")
            self.expect(rep.part1_holds is not None and rep.part2_holds is not None,
                        f"order {n} scan has no verdict")
            self.expect(rep.part1_holds == (not rep.part1_missing), f"order {n} part 1 witnesses inconsistent")
            self.expect(rep.part2_holds == (not rep.part2_failures), f"order {n} part 2 witnesses inconsistent")


ITEMS = [
    ("A1", "order-3 census and the three group tables", "a1"),
    ("A2", "duals of the order-3 groups and their hat tables", "a2"),
    ("A3", "monoid duals, the 81-element dual and its template", "a3"),
    ("A4", "incompatible members of a common dual", "a4"),
    ("A5", "sandwich bijection for every monoid of order <= 3", "a5"),
    ("A6", "order-4 groups with identity a and the partition", "a6"),
    ("A7", "isomorphism classes and automorphism counts", "a7"),
    ("A8", "non-normality of Aut(z1) in Sym_a", "a8"),
    ("A9", "law suites, exhaustive and sampled", "a9"),
    ("A10", "question scan at orders 2 and 3", "a10"),
]


def run_item(item: str, corpus=None, samples: int = DEFAULT_SAMPLES) -> CheckResult:
    corpus = corpus if corpus is not None else load_corpus()
    for key, title, meth in ITEMS:
        if key == item:
            break
    else:
        raise KeyError(item)
    checker = _Checker(corpus, samples)
    t0 = time.perf_counter()
    try:
        getattr(checker, meth)()
    except MagmaError as exc:
        checker.failures.append(f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - t0
    limit = RUNTIME_LIMITS.get(item)
    if limit is not None and elapsed > limit:
        checker.failures.append(f"runtime {elapsed:.1f}s exceeds {limit:.0f}s")
    return CheckResult(item, title, not checker.failures, checker.failures[:20], elapsed)


def run_checklist(
    corpus_dir=None,
    samples: int = DEFAULT_SAMPLES,
    only: Optional[list] = None,
    progress: Optional[Callable[[CheckResult], None]] = None,
) -> list[CheckResult]:
    corpus = load_corpus(corpus_dir)
    results = []
    for key, _, _ in ITEMS:
        if only and key not in only:
            continue
        res = run_item(key, corpus, samples)
        if progress is not None:
            progress(res)
        results.append(res)
    return results
