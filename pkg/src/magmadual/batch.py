"""Vectorised predicates over many tables at once.

Tables are rows of an ``(N, n*n)`` integer array laid out like
``CayleyTable.entries``. These kernels back the exhaustive scans; the
per-table functions in ``classify`` and ``compat`` are written
independently and serve as their oracles in the tests.
"""

from __future__ import annotations

import numpy as np

from .table import code_space


def tables_in_range(n: int, lo: int, hi: int) -> np.ndarray:
    """Digit array of the tables with codes in ``[lo, hi)``, ascending."""
    hi = min(hi, code_space(n))
    if hi <= lo:
        return np.empty((0, n * n), dtype=np.int64)
    if code_space(n) < 2**63:
        codes = np.arange(lo, hi, dtype=np.int64)
    else:
        codes = np.arange(lo, hi, dtype=np.uint64)
    out = np.empty((hi - lo, n * n), dtype=np.int64)
    for k in range(n * n - 1, -1, -1):
        out[:, k] = codes % n
        codes = codes // n
    return out


def all_tables(n: int) -> np.ndarray:
    return tables_in_range(n, 0, code_space(n))


def codes_of(arr: np.ndarray, n: int) -> np.ndarray:
    codes = np.zeros(len(arr), dtype=np.uint64)
    for k in range(n * n):
        codes = codes * np.uint64(n) + arr[:, k].astype(np.uint64)
    return codes


def _triples(n):
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    return a.ravel(), b.ravel(), c.ravel()


def associative_mask(arr: np.ndarray, n: int) -> np.ndarray:
    a, b, c = _triples(n)
    ab = arr[:, a * n + b]
    left = np.take_along_axis(arr, ab * n + c, axis=1)
    bc = arr[:, b * n + c]
    right = np.take_along_axis(arr, a * n + bc, axis=1)
    return (left == right).all(axis=1)


def nondegenerate_mask(arr: np.ndarray, n: int) -> np.ndarray:
    mask = np.ones(len(arr), dtype=bool)
    for x in range(n):
        mask &= (arr == x).any(axis=1)
    return mask


def identity_of(arr: np.ndarray, n: int) -> np.ndarray:
    """Two-sided identity per table, -1 where there is none."""
    t = arr.reshape(-1, n, n)
    ident = np.full(len(arr), -1, dtype=np.int64)
    rng = np.arange(n)
    for e in range(n):
        ok = (t[:, e, :] == rng).all(axis=1) & (t[:, :, e] == rng).all(axis=1)
        ident[ok & (ident < 0)] = e
    return ident


def group_mask(arr: np.ndarray, n: int, assoc: np.ndarray | None = None) -> np.ndarray:
    if assoc is None:
        assoc = associative_mask(arr, n)
    ident = identity_of(arr, n)
    t = arr.reshape(-1, n, n)
    hits = t == ident[:, None, None]
    invertible = (hits & hits.transpose(0, 2, 1)).any(axis=2).all(axis=1)
    return assoc & (ident >= 0) & invertible


def monoid_mask(arr: np.ndarray, n: int, assoc: np.ndarray | None = None) -> np.ndarray:
    if assoc is None:
        assoc = associative_mask(arr, n)
    return assoc & (identity_of(arr, n) >= 0)


def compatible_mask(z: tuple, arr: np.ndarray, n: int) -> np.ndarray:
    """Which rows of ``arr`` are compatible with the single table ``z``.

    Every multi-associativity equation is applied as a successive filter on
    the surviving candidates, so the cost is dominated by the first few.
    """
    zf = np.asarray(z, dtype=np.int64)
    alive = np.arange(len(arr))
    sub = arr
    for a in range(n):
        for b in range(n):
            zab = int(zf[a * n + b])
            for c in range(n):
                zbc = int(zf[b * n + c])
                # (a z b) z' c == a z (b z' c)
                lhs = sub[:, zab * n + c]
                rhs = zf[a * n + sub[:, b * n + c]]
                # (a z' b) z c == a z' (b z c)
                lhs2 = zf[sub[:, a * n + b] * n + c]
                rhs2 = sub[:, a * n + zbc]
                keep = (lhs == rhs) & (lhs2 == rhs2)
                if not keep.all():
                    alive = alive[keep]
                    sub = sub[keep]
                    if len(alive) == 0:
                        return np.zeros(len(arr), dtype=bool)
    mask = np.zeros(len(arr), dtype=bool)
    mask[alive] = True
    return mask


def associative_filter(arr: np.ndarray, n: int) -> np.ndarray:
    """Same result as ``associative_mask``, testing one triple at a time.

    Cheaper on large unstructured batches, where most tables fail early.
    """
    alive = np.arange(len(arr))
    sub = arr
    rows = np.arange(len(arr))
    # diagonal triples first: they reject the most tables per test
    order = sorted(
        ((a, b, c) for a in range(n) for b in range(n) for c in range(n)),
        key=lambda t: len(set(t)),
    )
    for a, b, c in order:
        r = rows[: len(sub)]
        left = sub[r, sub[:, a * n + b] * n + c]
        right = sub[r, a * n + sub[:, b * n + c]]
        keep = left == right
        if not keep.all():
            alive = alive[keep]
            sub = sub[keep]
            if len(alive) == 0:
                break
    mask = np.zeros(len(arr), dtype=bool)
    mask[alive] = True
    return mask


def semigroup_tables(n: int, step: int = 1) -> np.ndarray:
    """Digit arrays of all associative tables of order ``n``, ascending.

    Entries are fixed ``step`` at a time in row-major order; after each
    stage every triple whose four referenced entries are already fixed is
    tested and failing prefixes are dropped.
    """
    size = n * n
    a, b, c = _triples(n)
    ab_pos, bc_pos = a * n + b, b * n + c
    cur = np.zeros((1, 0), dtype=np.int64)
    m = 0
    while m < size:
        k = min(step, size - m)
        suffix = tables_in_range(n, 0, n**k)[:, size - k:] if k < size else all_tables(n)
        grown = np.empty((len(cur) * len(suffix), size), dtype=np.int64)
        grown[:, :m] = np.repeat(cur, len(suffix), axis=0)
        grown[:, m:m + k] = np.tile(suffix, (len(cur), 1))
        grown[:, m + k:] = 0
        m += k
        sel = (ab_pos < m) & (bc_pos < m)
        ta, tc, tab, tbc = a[sel], c[sel], ab_pos[sel], bc_pos[sel]
        left_pos = grown[:, tab] * n + tc
        right_pos = ta * n + grown[:, tbc]
        known = (left_pos < m) & (right_pos < m)
        clash = np.take_along_axis(grown, left_pos, 1) != np.take_along_axis(grown, right_pos, 1)
        cur = grown[~(known & clash).any(axis=1), :m]
    return cur
