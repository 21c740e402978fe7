"""Membership in the nondegenerate / semigroup / monoid / group classes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NoIdentityError, VerificationError
from .table import CayleyTable, _check_element


@dataclass(frozen=True)
class ClassificationRecord:
    nd: bool
    sg: bool
    mn: bool
    gr: bool
    identity: Optional[int] = None
    assoc_counterexample: Optional[tuple] = None
    missing_image: Optional[int] = None
    non_invertible: Optional[int] = None
    commutative: bool = False

    def flags(self) -> dict:
        return {"nd": self.nd, "sg": self.sg, "mn": self.mn, "gr": self.gr}


def is_associative(t: CayleyTable) -> tuple[bool, Optional[tuple]]:
    """Check ``(a b) c == a (b c)`` over all triples.

    Returns ``(True, None)`` or ``(False, (a, b, c))`` with the
    lexicographically smallest failing triple.
    """
    n, e = t.n, t.entries
    for a in range(n):
        for b in range(n):
            ab = e[a * n + b]
            for c in range(n):
                if e[ab * n + c] != e[a * n + e[b * n + c]]:
                    return False, (a, b, c)
    return True, None


def is_nondegenerate(t: CayleyTable) -> tuple[bool, Optional[int]]:
    """True iff the operation is onto; otherwise the smallest missing value."""
    seen = set(t.entries)
    for x in range(t.n):
        if x not in seen:
            return False, x
    return True, None


def find_identity(t: CayleyTable) -> Optional[int]:
    n, e = t.n, t.entries
    found = None
    for cand in range(n):
        if all(e[cand * n + a] == a and e[a * n + cand] == a for a in range(n)):
            if found is not None:
                raise VerificationError(f"two identities {found} and {cand}")
            found = cand
    return found


def inverse_of(t: CayleyTable, a: int) -> Optional[int]:
    """The two-sided inverse of ``a``, or None. Requires an identity."""
    _check_element(t.n, a)
    e = find_identity(t)
    if e is None:
        raise NoIdentityError("operation has no two-sided identity")
    for b in range(t.n):
        if t(a, b) == e and t(b, a) == e:
            return b
    return None


def is_commutative(t: CayleyTable) -> bool:
    n = t.n
    return all(t(a, b) == t(b, a) for a in range(n) for b in range(a + 1, n))


def _is_latin(t):
    n = t.n
    full = set(range(n))
    rows = t.rows()
    return all(set(r) == full for r in rows) and all(
        {rows[i][j] for i in range(n)} == full for j in range(n)
    )


def classify_op(t: CayleyTable) -> ClassificationRecord:
    """Classify ``t``, filling every witness the predicates produce."""
    nd, missing = is_nondegenerate(t)
    sg, triple = is_associative(t)
    ident = find_identity(t)
    non_inv = None
    if ident is not None:
        for a in range(t.n):
            if inverse_of(t, a) is None:
                non_inv = a
                break
    mn = sg and ident is not None
    gr = mn and non_inv is None
    if gr and not _is_latin(t):
        raise VerificationError("group table is not a Latin square")
    return ClassificationRecord(
        nd=nd,
        sg=sg,
        mn=mn,
        gr=gr,
        identity=ident,
        assoc_counterexample=triple,
        missing_image=missing,
        non_invertible=non_inv,
        commutative=is_commutative(t),
    )


def is_monoid(t: CayleyTable) -> bool:
    return find_identity(t) is not None and is_associative(t)[0]


def is_group(t: CayleyTable) -> bool:
    return classify_op(t).gr
