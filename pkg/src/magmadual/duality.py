"""The sandwich bijection, conjugation, isomorphism and group-table census.

For a monoid ``z0`` with identity ``e`` the map ``a -> z0 ^a z0`` is a
bijection from the carrier onto the dual of ``z0``; its inverse reads off
the entry ``e z e``. For groups the duals partition the set of all group
tables, and the group tables with a fixed identity split into
isomorphism classes of size ``(n-1)! / |Aut|``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .classify import classify_op, find_identity, inverse_of, is_associative
from .compat import Method, are_compatible, dual_set, hat_op, DualSet
from .errors import (
    BudgetError,
    NotGroupError,
    NotInDualError,
    NotMonoidError,
    OrderMismatchError,
    RangeError,
    VerificationError,
)
from .table import CayleyTable, LabelMap, OpCode, _check_element, encode_op, has_codes

MAX_GROUP_ORDER = 6
DEFAULT_LATIN_BUDGET = 10**7


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on ``{0, ..., n-1}``; ``image[i]`` is the image of ``i``."""

    image: tuple

    def __post_init__(self):
        image = tuple(int(x) for x in self.image)
        object.__setattr__(self, "image", image)
        if sorted(image) != list(range(len(image))) or not image:
            raise RangeError(f"not a permutation: {image}")

    @property
    def n(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> "Permutation":
        image = list(range(n))
        image[i], image[j] = image[j], image[i]
        return cls(tuple(image))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        image = list(range(n))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                _check_element(n, x)
                if x in seen:
                    raise RangeError(f"element {x} repeated in cycles")
                seen.add(x)
            for k, x in enumerate(cyc):
                image[x] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(image))

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: ``(self * other)(x) == self(other(x))``."""
        if self.n != other.n:
            raise OrderMismatchError("permutations of different degree")
        return Permutation(tuple(self.image[x] for x in other.image))

    compose = __mul__

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.image):
            inv[x] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.image))

    def cycles(self) -> list[tuple]:
        seen, out = set(), []
        for start in range(self.n):
            if start in seen or self.image[start] == start:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self.image[x]
            out.append(tuple(cyc))
        return out

    def to_cycle_string(self, labels: LabelMap | None = None) -> str:
        labels = labels or LabelMap.default(self.n)
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(labels[x] for x in c) + ")" for c in cyc)


def parse_permutation(spec: str, labels: LabelMap) -> Permutation:
    """Parse ``"b<->c"`` swaps or cycle notation such as ``"(b c d)(a e)"``.

    Several factors are composed right to left, as written.
    """
    n = len(labels)
    spec = spec.strip()
    if spec in ("", "()", "id"):
        return Permutation.identity(n)
    factors = []
    for m in re.finditer(r"\(([^()]*)\)|(\S+)\s*<->\s*(\S+)", spec):
        if m.group(1) is not None:
            syms = m.group(1).replace(",", " ").split()
            cyc = [labels.index(s) for s in syms]
            factors.append(Permutation.from_cycles(n, [cyc]) if cyc else Permutation.identity(n))
        else:
            factors.append(Permutation.swap(n, labels.index(m.group(2)), labels.index(m.group(3))))
    leftover = re.sub(r"\([^()]*\)|\S+\s*<->\s*\S+", "", spec).strip()
    if leftover or not factors:
        raise RangeError(f"cannot parse permutation {spec!r}")
    out = Permutation.identity(n)
    for f in factors:
        out = out * f
    return out


# ---------------------------------------------------------------------------
# the sandwich bijection


def _require_monoid(z0):
    rec = classify_op(z0)
    if not rec.mn:
        raise NotMonoidError("operation is not a monoid")
    return rec.identity


def phi(z0: CayleyTable, a: int) -> CayleyTable:
    """``z0 ^a z0``, the product ``b . c = b z0 a z0 c``."""
    _require_monoid(z0)
    _check_element(z0.n, a)
    return hat_op(z0, a, z0)


def phi_inverse(z0: CayleyTable, z: CayleyTable) -> int:
    """The element ``e z e``, which determines ``z`` inside the dual of ``z0``."""
    e = _require_monoid(z0)
    if z.n != z0.n:
        raise OrderMismatchError(f"orders differ: {z0.n} vs {z.n}")
    if not are_compatible(z0, z).compatible:
        raise NotInDualError("table is not compatible with the monoid")
    a = z(e, e)
    if hat_op(z0, a, z0) != z:
        raise VerificationError("e z e does not reconstruct the dual member")
    return a


# ---------------------------------------------------------------------------
# conjugation and isomorphism


def conjugate(z: CayleyTable, sigma: Permutation) -> CayleyTable:
    """The table making ``sigma`` an isomorphism out of ``(S, z)``."""
    if sigma.n != z.n:
        raise OrderMismatchError(f"permutation of degree {sigma.n} for order {z.n}")
    n, s = z.n, sigma.image
    out = [0] * (n * n)
    for a in range(n):
        for b in range(n):
            out[s[a] * n + s[b]] = s[z.entries[a * n + b]]
    return CayleyTable._trusted(n, tuple(out))


def _power_profile(z, a):
    # size of {a, aa, (aa)a, ...}; preserved by isomorphisms of magmas
    seen = []
    x = a
    while x not in seen:
        seen.append(x)
        x = z(x, a)
    return len(seen), z(a, a) == a


def _isomorphisms(z1: CayleyTable, z2: CayleyTable) -> Iterator[Permutation]:
    """All isomorphisms ``(S, z1) -> (S, z2)`` in lexicographic order."""
    if z1.n != z2.n:
        raise OrderMismatchError(f"orders differ: {z1.n} vs {z2.n}")
    n = z1.n
    prof1 = [_power_profile(z1, a) for a in range(n)]
    prof2 = [_power_profile(z2, a) for a in range(n)]
    if sorted(prof1) != sorted(prof2):
        return
    e1, e2 = find_identity(z1), find_identity(z2)
    if (e1 is None) != (e2 is None):
        return
    x, y = z1.entries, z2.entries
    sigma = [-1] * n
    used = [False] * n

    def ok(k):
        # every product whose factors are both assigned must map correctly
        for i in range(k + 1):
            for j in range(k + 1):
                prod = x[i * n + j]
                if i != k and j != k and prod != k:
                    continue
                img = y[sigma[i] * n + sigma[j]]
                if sigma[prod] >= 0:
                    if sigma[prod] != img:
                        return False
                elif used[img]:
                    return False
        return True

    def extend(k):
        if k == n:
            yield Permutation(tuple(sigma))
            return
        for v in range(n):
            if used[v] or prof1[k] != prof2[v]:
                continue
            if e1 is not None and (k == e1) != (v == e2):
                continue
            sigma[k] = v
            used[v] = True
            if ok(k):
                yield from extend(k + 1)
            sigma[k] = -1
            used[v] = False

    for perm in extend(0):
        if conjugate(z1, perm) != z2:
            raise VerificationError("isomorphism search produced a non-isomorphism")
        yield perm


def are_isomorphic(z1: CayleyTable, z2: CayleyTable) -> Optional[Permutation]:
    """Lexicographically smallest isomorphism ``z1 -> z2``, or None."""
    return next(_isomorphisms(z1, z2), None)


def automorphisms(z: CayleyTable) -> list[Permutation]:
    return list(_isomorphisms(z, z))


def sym_fixing(n: int, e: int) -> list[Permutation]:
    """Permutations of ``{0..n-1}`` fixing ``e``, lexicographically."""
    _check_element(n, e)
    return [Permutation(p) for p in itertools.permutations(range(n)) if p[e] == e]


def left_coset(sigma: Permutation, group: Sequence[Permutation]) -> frozenset:
    return frozenset(sigma * g for g in group)


def right_coset(group: Sequence[Permutation], sigma: Permutation) -> frozenset:
    return frozenset(g * sigma for g in group)


# ---------------------------------------------------------------------------
# group tables


def _check_group_order(n, e):
    if not isinstance(n, int) or n < 1:
        raise RangeError(f"order must be a positive integer, got {n!r}")
    if n > MAX_GROUP_ORDER:
        raise RangeError(f"group search supports n <= {MAX_GROUP_ORDER}, got {n}")
    _check_element(n, e)


def group_ops_with_identity(n: int, e: int = 0, budget: int = DEFAULT_LATIN_BUDGET) -> list[CayleyTable]:
    """All group tables on ``{0..n-1}`` whose identity is ``e``.

    Latin squares with row and column ``e`` forced to the identity are
    generated by backtracking and then filtered by associativity. The
    result is in ascending table (equivalently code) order.
    """
    _check_group_order(n, e)
    grid = [[-1] * n for _ in range(n)]
    for i in range(n):
        grid[e][i] = i
        grid[i][e] = i
    cells = [(i, j) for i in range(n) for j in range(n) if i != e and j != e]
    row_used = [set(grid[i][j] for j in range(n) if grid[i][j] >= 0) for i in range(n)]
    col_used = [set(grid[i][j] for i in range(n) if grid[i][j] >= 0) for j in range(n)]
    found = []
    nodes = 0

    def fill(k):
        nonlocal nodes
        if k == len(cells):
            t = CayleyTable(n, tuple(x for row in grid for x in row))
            if is_associative(t)[0]:
                found.append(t)
            return
        i, j = cells[k]
        for v in range(n):
            if v in row_used[i] or v in col_used[j]:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetError(f"Latin square search exceeded {budget} nodes")
            grid[i][j] = v
            row_used[i].add(v)
            col_used[j].add(v)
            fill(k + 1)
            row_used[i].discard(v)
            col_used[j].discard(v)
            grid[i][j] = -1

    fill(0)
    found.sort()
    for t in found:
        rec = classify_op(t)
        if not rec.gr or rec.identity != e:
            raise VerificationError("Latin search produced a non-group table")
    return found


@dataclass(frozen=True)
class PartitionReport:
    n: int
    identity: int
    blocks: tuple
    total: int


def partition_group_ops(n: int) -> PartitionReport:
    """Split all group tables of order ``n`` into duals of identity-0 groups."""
    if not has_codes(n):
        raise RangeError(f"partition needs OpCodes; order {n} has none")
    _check_group_order(n, 0)
    blocks = tuple(dual_set(z, Method.SANDWICH) for z in group_ops_with_identity(n, 0))
    seen: set[int] = set()
    for block in blocks:
        if len(block) != n:
            raise VerificationError(f"block of size {len(block)}, expected {n}")
        if seen.intersection(block.members):
            raise VerificationError("partition blocks overlap")
        seen.update(block.members)
    independent = {t.code for e in range(n) for t in group_ops_with_identity(n, e)}
    if seen != independent:
        raise VerificationError("partition blocks do not cover the group tables")
    return PartitionReport(n, 0, blocks, len(seen))


@dataclass(frozen=True)
class ClassReport:
    representative: CayleyTable
    members: tuple
    aut_size: int
    predicted_size: int

    @property
    def size(self) -> int:
        return len(self.members)


def iso_classes(n: int, e: int = 0) -> list[ClassReport]:
    """Isomorphism classes of the group tables with identity ``e``."""
    _check_group_order(n, e)
    classes: list[list[CayleyTable]] = []
    for t in group_ops_with_identity(n, e):
        for cls in classes:
            if are_isomorphic(cls[0], t) is not None:
                cls.append(t)
                break
        else:
            classes.append([t])
    reports = []
    for cls in classes:
        rep = min(cls)
        aut = automorphisms(rep)
        predicted = math.factorial(n - 1) // len(aut)
        if len(cls) != predicted or len(cls) * len(aut) != math.factorial(n - 1):
            raise VerificationError(
                f"class of size {len(cls)} but (n-1)!/|Aut| = {predicted}"
            )
        reports.append(ClassReport(rep, tuple(sorted(cls)), len(aut), predicted))
    reports.sort(key=lambda r: r.representative)
    return reports


def count_group_structures(n: int) -> int:
    return len(iso_classes(n, 0))


def verify_group_dual(z0: CayleyTable) -> bool:
    """Check that every member of the dual of a group is an isomorphic group.

    Also checks the explicit isomorphism ``b -> b z0 a^-1`` where
    ``a = e z e``.
    """
    rec = classify_op(z0)
    if not rec.gr:
        raise NotGroupError("operation is not a group")
    n = z0.n
    method = Method.EXHAUSTIVE if n <= 3 else (Method.BACKTRACK if n == 4 else Method.SANDWICH)
    dual = dual_set(z0, method)
    for z in dual.tables():
        if not classify_op(z).gr:
            return False
        if dual_set(z, method).members != dual.members:
            return False
        if are_isomorphic(z0, z) is None:
            return False
        a = phi_inverse(z0, z)
        a_inv = inverse_of(z0, a)
        psi = Permutation(tuple(z0(b, a_inv) for b in range(n)))
        if conjugate(z0, psi) != z:
            return False
    return True
