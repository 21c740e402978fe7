import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from magmadual import batch
from magmadual.classify import (
    classify_op,
    find_identity,
    inverse_of,
    is_associative,
    is_group,
    is_monoid,
    is_nondegenerate,
)
from magmadual.errors import NoIdentityError
from magmadual.table import CayleyTable, OpCode, code_space, decode_op, make_table


def brute_triple(t):
    n = t.n
    for a, b, c in itertools.product(range(n), repeat=3):
        if t(t(a, b), c) != t(a, t(b, c)):
            return (a, b, c)
    return None


def test_associativity_examples(z3):
    assert is_associative(z3[1]) == (True, None)
    assert is_associative(make_table(2, [[1, 1], [0, 1]])) == (False, (0, 0, 0))
    for n in (1, 2, 3, 4):
        assert is_associative(CayleyTable(n, (n - 1,) * (n * n)))[0]


def test_nondegenerate_examples(z3, trivial):
    assert is_nondegenerate(z3[6]) == (False, 0)
    assert is_nondegenerate(z3[4]) == (True, None)
    assert is_nondegenerate(trivial) == (True, None)


def test_identity_examples(z3):
    assert find_identity(z3[1]) == 0
    assert find_identity(z3[2]) == 1
    assert find_identity(z3[6]) is None


def test_inverse_examples(z3):
    assert inverse_of(z3[1], 1) == 2
    assert inverse_of(z3[4], 2) is None
    assert inverse_of(z3[4], 0) == 0
    with pytest.raises(NoIdentityError):
        inverse_of(z3[6], 0)


def test_classify_examples(z3):
    r = classify_op(z3[1])
    assert (r.nd, r.sg, r.mn, r.gr, r.identity) == (True, True, True, True, 0)
    r = classify_op(z3[4])
    assert (r.nd, r.sg, r.mn, r.gr, r.non_invertible) == (True, True, True, False, 2)
    r = classify_op(z3[6])
    assert (r.sg, r.nd, r.mn, r.gr) == (True, False, False, False)
    assert r.missing_image == 0


def test_classify_does_not_short_circuit():
    # degenerate and non-associative: both witnesses present
    t = make_table(2, [[1, 1], [1, 1]])
    assert classify_op(t).missing_image == 0
    t = make_table(3, [[1, 1, 1], [0, 0, 0], [0, 0, 0]])
    r = classify_op(t)
    assert r.missing_image == 2 and r.assoc_counterexample == brute_triple(t)


@given(st.integers(0, 3**9 - 1))
def test_witness_is_lexicographically_smallest(code):
    t = decode_op(OpCode(3, code))
    assert is_associative(t)[1] == brute_triple(t)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_inclusion_diagram_exhaustive(n):
    arr = batch.all_tables(n)
    sg = batch.associative_mask(arr, n)
    nd = batch.nondegenerate_mask(arr, n)
    mn = batch.monoid_mask(arr, n, sg)
    gr = batch.group_mask(arr, n, sg)
    seen = np.zeros((len(arr), 4), dtype=bool)
    for code in range(code_space(n)):
        r = classify_op(decode_op(OpCode(n, code)))
        assert not r.gr or r.mn
        assert not r.mn or (r.sg and r.nd)
        seen[code] = (r.nd, r.sg, r.mn, r.gr)
    # the scalar predicates and the vectorised masks are independent
    assert np.array_equal(seen, np.stack([nd, sg, mn, gr], axis=1))
    if n >= 2:
        # every inclusion is proper and nd, sg are incomparable
        assert (sg & ~mn).any() and (mn & ~gr).any()
        assert (nd & ~sg).any() and (sg & ~nd).any()


def test_monoid_and_group_helpers(z3):
    assert is_monoid(z3[4]) and not is_group(z3[4])
    assert is_group(z3[2]) and not is_monoid(z3[6])


def test_groups_are_latin_squares(z4):
    for t in z4.values():
        rows = t.rows()
        assert all(sorted(r) == list(range(4)) for r in rows)
        assert all(sorted(col) == list(range(4)) for col in zip(*rows))
