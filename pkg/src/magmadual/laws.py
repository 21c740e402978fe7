"""Executable versions of the structural laws about duals.

Every checker returns a list of human-readable violations; an empty list
means the law held on everything it was given. The checkers only use the
public operations, so they double as regression oracles.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from . import batch
from .classify import classify_op, is_associative, is_nondegenerate
from .compat import (
    Method,
    are_compatible,
    check_op,
    dual_backtrack,
    dual_set,
    hat_op,
)
from .duality import Permutation, automorphisms, conjugate, phi, phi_inverse
from .table import CayleyTable, OpCode, code_space, decode_op

LIMIT = 20


@lru_cache(maxsize=None)
def all_duals(n: int) -> dict:
    """Exhaustive dual of every table of order ``n <= 3``, keyed by code."""
    return {
        code: frozenset(dual_set(decode_op(OpCode(n, code)), Method.EXHAUSTIVE).members)
        for code in range(code_space(n))
    }


@lru_cache(maxsize=None)
def class_masks(n: int) -> dict:
    arr = batch.all_tables(n)
    sg = batch.associative_mask(arr, n)
    return {
        "nd": batch.nondegenerate_mask(arr, n),
        "sg": sg,
        "mn": batch.monoid_mask(arr, n, sg),
        "gr": batch.group_mask(arr, n, sg),
    }


def _t(n, code):
    return decode_op(OpCode(n, code))


def _cap(out):
    return out[:LIMIT] + ([f"... {len(out) - LIMIT} more"] if len(out) > LIMIT else [])


# ---------------------------------------------------------------------------
# laws over a precomputed family of duals


def symmetry(duals: dict) -> list[str]:
    out = []
    for z, members in duals.items():
        for m in members:
            if z not in duals[m]:
                out.append(f"{m} in dual({z}) but {z} not in dual({m})")
    return _cap(out)


def dual_inclusion(n: int, duals: dict, nd_codes) -> list[str]:
    """Nondegenerate z1 compatible with z2 gives dual(z1) <= dual(z2),
    with equality when z2 is nondegenerate as well."""
    nd_codes = set(nd_codes)
    out = []
    for z1 in nd_codes:
        d1 = duals[z1]
        for z2 in d1:
            d2 = duals[z2] if z2 in duals else frozenset(dual_backtrack(_t(n, z2))[0])
            if not d1 <= d2:
                out.append(f"dual({z1}) not inside dual({z2})")
            elif z2 in nd_codes and d1 != d2:
                out.append(f"dual({z1}) != dual({z2}) for nondegenerate pair")
    return _cap(out)


def dual_closure(z: CayleyTable, members) -> list[str]:
    """Pairwise compatibility, associativity, closure under hat products and
    multiple associativity inside the dual of a nondegenerate table."""
    n = z.n
    out = []
    mset = set(members)
    tables = {m: _t(n, m) for m in members}
    z_sg = is_associative(z)[0]
    for m, t in tables.items():
        if not is_associative(t)[0]:
            out.append(f"dual member {m} is not associative")
        if not z_sg and is_nondegenerate(t)[0]:
            out.append(f"dual member {m} of non-associative table is nondegenerate")
    products = {}
    for (m1, t1), (m2, t2) in itertools.product(tables.items(), repeat=2):
        if not are_compatible(t1, t2).compatible:
            out.append(f"dual members {m1}, {m2} are not compatible")
        for a in range(n):
            prod = hat_op(t1, a, t2)
            products[m1, a, m2] = prod.code
            if prod.code not in mset:
                out.append(f"hat({m1}, {a}, {m2}) leaves the dual")
    if out:
        return _cap(out)
    # with closure established, products of products are table lookups
    for m1, m2, m3 in itertools.product(members, repeat=3):
        for a in range(n):
            for b in range(n):
                left = products[products[m1, a, m2], b, m3]
                right = products[m1, a, products[m2, b, m3]]
                if left != right:
                    out.append(f"hat products of {m1}, {m2}, {m3} not associative at a={a}, b={b}")
    return _cap(out)


def empty_or_equal(duals: dict, group_codes) -> list[str]:
    out = []
    for g in group_codes:
        dg = duals[g]
        for z, dz in duals.items():
            if dg & dz and dg != dz:
                out.append(f"dual of group {g} meets dual({z}) without equality")
    return _cap(out)


def hat_is_associative(n: int, duals: dict, limit_pairs=None) -> list[str]:
    out = []
    seen = 0
    for z, members in duals.items():
        tz = _t(n, z)
        for m in members:
            tm = _t(n, m)
            for a in range(n):
                if not is_associative(hat_op(tz, a, tm))[0]:
                    out.append(f"hat({z}, {a}, {m}) not associative")
            seen += 1
            if limit_pairs is not None and seen >= limit_pairs:
                return _cap(out)
    return _cap(out)


# ---------------------------------------------------------------------------
# laws on individual tables


def hat_check_agreement(z1: CayleyTable, z2: CayleyTable) -> list[str]:
    agree = all(
        hat_op(z1, a, z2) == check_op(z1, a, z2) and hat_op(z2, a, z1) == check_op(z2, a, z1)
        for a in range(z1.n)
    )
    if agree != are_compatible(z1, z2).compatible:
        return [f"hat/check agreement {agree} but compatibility says otherwise for {z1} {z2}"]
    return []


def conjugation_action(z: CayleyTable, sigma: Permutation, tau: Permutation, aut=None) -> list[str]:
    out = []
    if conjugate(z, sigma * tau) != conjugate(conjugate(z, tau), sigma):
        out.append(f"conjugation is not an action at {sigma.image}, {tau.image}")
    if conjugate(z, Permutation.identity(z.n)) != z:
        out.append("identity permutation moves the table")
    if aut is None:
        aut = automorphisms(z)
    if (conjugate(z, sigma) == z) != (sigma in aut):
        out.append(f"fixed-point test disagrees with Aut for {sigma.image}")
    return out


def automorphism_group(z: CayleyTable) -> list[str]:
    aut = set(automorphisms(z))
    out = []
    if Permutation.identity(z.n) not in aut:
        out.append("Aut lacks the identity")
    for s in aut:
        if s.inverse() not in aut:
            out.append("Aut not closed under inverse")
        for t in aut:
            if s * t not in aut:
                out.append("Aut not closed under composition")
    return _cap(out)


def backtrack_matches(z: CayleyTable, reference) -> list[str]:
    got, _ = dual_backtrack(z)
    if tuple(got) != tuple(sorted(reference)):
        return [f"backtracking dual of {z} differs from reference"]
    return []


def sandwich_duality(z0: CayleyTable, members) -> list[str]:
    """For a monoid: phi is a bijection onto ``members`` with phi(e) = z0,
    and phi(b phi(a) c) = phi(b) ^a phi(c)."""
    n = z0.n
    e = classify_op(z0).identity
    images = [phi(z0, a) for a in range(n)]
    out = []
    if images[e] != z0:
        out.append("phi(e) != z0")
    if sorted(t.code for t in images) != sorted(members) or len({t.code for t in images}) != n:
        out.append("phi is not a bijection onto the dual")
    for a in range(n):
        pa = images[a]
        for b in range(n):
            for c in range(n):
                if images[pa(b, c)] != hat_op(images[b], a, images[c]):
                    out.append(f"phi fails to be a homomorphism at a={a}, b={b}, c={c}")
    for t in images:
        if images[phi_inverse(z0, t)] != t:
            out.append("e z e does not recover the dual member")
    return _cap(out)


# ---------------------------------------------------------------------------
# random sampling at order 4


def random_permutation(rng, n) -> Permutation:
    return Permutation(tuple(int(x) for x in rng.permutation(n)))


@lru_cache(maxsize=None)
def semigroup_codes(n: int) -> tuple:
    return tuple(int(c) for c in batch.codes_of(batch.semigroup_tables(n), n))


def sample_tables(n: int, count: int, seed: int = 0) -> list[CayleyTable]:
    """A reproducible mixture: uniform tables, semigroups, and conjugates and
    sandwiches of monoids, so that nonempty duals are well represented."""
    rng = np.random.default_rng(seed)
    sg = semigroup_codes(n)
    monoids = [c for c in sg if classify_op(_t(n, c)).mn]
    out = []
    for i in range(count):
        kind = i % 4
        if kind == 0:
            entries = tuple(int(x) for x in rng.integers(0, n, n * n))
            out.append(CayleyTable(n, entries))
        elif kind == 1:
            out.append(_t(n, sg[int(rng.integers(len(sg)))]))
        elif kind == 2:
            m = _t(n, monoids[int(rng.integers(len(monoids)))])
            out.append(conjugate(m, random_permutation(rng, n)))
        else:
            m = _t(n, monoids[int(rng.integers(len(monoids)))])
            out.append(hat_op(m, int(rng.integers(n)), m))
    return out


# ---------------------------------------------------------------------------
# suites


def exhaustive_suite(n: int) -> dict:
    """Every law over every table of order ``n <= 3``."""
    duals = all_duals(n)
    masks = class_masks(n)
    nd = [int(c) for c in np.flatnonzero(masks["nd"])]
    sg = [int(c) for c in np.flatnonzero(masks["sg"])]
    groups = [int(c) for c in np.flatnonzero(masks["gr"])]
    monoids = [int(c) for c in np.flatnonzero(masks["mn"])]
    out = {
        "symmetry": symmetry(duals),
        "dual_inclusion": dual_inclusion(n, duals, nd),
        "dual_closure": [],
        "empty_or_equal": empty_or_equal(duals, groups),
        "hat_is_associative": hat_is_associative(n, duals),
        "hat_check_agreement": [],
        "conjugation_action": [],
        "automorphism_group": [],
        "backtrack_matches": [],
        "sandwich_duality": [],
    }
    for z in nd:
        out["dual_closure"] += dual_closure(_t(n, z), duals[z])
    for z in sorted(set(nd) | set(sg)):
        out["backtrack_matches"] += backtrack_matches(_t(n, z), duals[z])
    for z in monoids:
        out["sandwich_duality"] += sandwich_duality(_t(n, z), duals[z])

    rng = np.random.default_rng(n)
    total = code_space(n)
    perms = [Permutation(p) for p in itertools.permutations(range(n))]
    for code in range(total):
        t = _t(n, code)
        # every dual member must agree, and so must a few random non-members
        partners = list(duals[code]) + [int(x) for x in rng.integers(0, total, 2)]
        for m in partners:
            out["hat_check_agreement"] += hat_check_agreement(t, _t(n, m))
        aut = automorphisms(t)
        for sigma in perms:
            tau = perms[int(rng.integers(len(perms)))]
            out["conjugation_action"] += conjugation_action(t, sigma, tau, aut)
        if code in duals[code]:
            out["automorphism_group"] += automorphism_group(t)
    if n <= 2:
        tables = [_t(n, c) for c in range(total)]
        for t1, t2 in itertools.product(tables, repeat=2):
            out["hat_check_agreement"] += hat_check_agreement(t1, t2)
    return {k: _cap(v) for k, v in out.items()}


def sampled_suite(n: int, count: int, seed: int = 0) -> dict:
    """The same laws over ``count`` reproducible samples (meant for n = 4)."""
    rng = np.random.default_rng(seed + 1)
    samples = sample_tables(n, count, seed)
    groups = [t for t in samples[2::4] if classify_op(t).gr]
    group_duals = {g.code: dual_backtrack(g)[0] for g in groups[:8]}
    out = {
        "dual_inclusion": [],
        "dual_closure": [],
        "empty_or_equal": [],
        "hat_is_associative": [],
        "hat_check_agreement": [],
        "conjugation_action": [],
        "sandwich_duality": [],
    }
    for z in samples:
        rec = classify_op(z)
        members = dual_backtrack(z)[0] if rec.nd else None
        if members is not None:
            tables = [_t(n, m) for m in members]
            for z2, t2 in zip(members, tables):
                if not all(are_compatible(t, t2).compatible for t in tables):
                    out["dual_inclusion"].append(f"dual({z.code}) not inside dual({z2})")
                if is_nondegenerate(t2)[0] and dual_backtrack(t2)[0] != members:
                    out["dual_inclusion"].append(f"dual({z.code}) != dual({z2})")
            out["dual_closure"] += dual_closure(z, members)
            if rec.mn:
                out["sandwich_duality"] += sandwich_duality(z, members)
        for g, gd in group_duals.items():
            gt = [_t(n, m) for m in gd]
            if any(are_compatible(t, z).compatible for t in gt):
                if dual_backtrack(z)[0] != gd:
                    out["empty_or_equal"].append(f"dual of group {g} meets dual({z.code}) unequally")
        partner = _t(n, members[int(rng.integers(len(members)))]) if members else None
        if partner is None:
            partner = samples[int(rng.integers(len(samples)))]
        out["hat_check_agreement"] += hat_check_agreement(z, partner)
        if are_compatible(z, partner).compatible:
            for a in range(n):
                if not is_associative(hat_op(z, a, partner))[0]:
                    out["hat_is_associative"].append(f"hat({z.code}, {a}, {partner.code})")
        sigma, tau = random_permutation(rng, n), random_permutation(rng, n)
        out["conjugation_action"] += conjugation_action(z, sigma, tau)
    return {k: _cap(v) for k, v in out.items()}
