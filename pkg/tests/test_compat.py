import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from magmadual.classify import find_identity, is_associative, is_monoid
from magmadual.compat import (
    Equation,
    Method,
    are_compatible,
    check_op,
    dual_backtrack,
    dual_set,
    hat_op,
    iter_dual,
    resolve_method,
)
from magmadual.errors import BudgetError, MethodError, OrderMismatchError
from magmadual.table import CayleyTable, OpCode, code_space, decode_op, make_table


def brute_compat(z1, z2):
    n = z1.n
    for a, b, c in itertools.product(range(n), repeat=3):
        if z2(z1(a, b), c) != z1(a, z2(b, c)):
            return (Equation.HAT_NE_CHECK_1, (a, b, c))
        if z1(z2(a, b), c) != z2(a, z1(b, c)):
            return (Equation.HAT_NE_CHECK_2, (a, b, c))
    return None


def brute_dual(z):
    n = z.n
    out = []
    for code in range(code_space(n)):
        if brute_compat(z, decode_op(OpCode(n, code))) is None:
            out.append(code)
    return tuple(out)


codes3 = st.integers(0, 3**9 - 1)


def test_hat_examples(z3):
    assert hat_op(z3[2], 0, z3[2]) == z3[3]
    assert hat_op(z3[1], 0, z3[1]) == z3[1]
    for code in range(code_space(2)):
        z = decode_op(OpCode(2, code))
        if is_monoid(z):
            e = find_identity(z)
            assert hat_op(z, e, z) == z
            assert check_op(z, e, z) == z


def test_hat_definition():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 4)
        z1 = CayleyTable(n, tuple(rng.randrange(n) for _ in range(n * n)))
        z2 = CayleyTable(n, tuple(rng.randrange(n) for _ in range(n * n)))
        a = rng.randrange(n)
        h, v = hat_op(z1, a, z2), check_op(z1, a, z2)
        for b, c in itertools.product(range(n), repeat=2):
            assert h(b, c) == z2(z1(b, a), c)
            assert v(b, c) == z1(b, z2(a, c))


def test_check_examples(z3):
    assert check_op(z3[1], 1, z3[1]) == hat_op(z3[1], 1, z3[1])
    assert any(hat_op(z3[4], a, z3[7]) != check_op(z3[4], a, z3[7]) for a in range(3))


def test_order_mismatch(z3, trivial):
    for f in (hat_op, check_op):
        with pytest.raises(OrderMismatchError):
            f(z3[1], 0, trivial)
    with pytest.raises(OrderMismatchError):
        are_compatible(z3[1], trivial)


def test_compatible_examples(z3):
    assert are_compatible(z3[1], z3[2]).compatible
    rep = are_compatible(z3[4], z3[7])
    assert not rep and rep.witness is not None and rep.failing_equation is not None


@given(codes3, codes3)
def test_witness_is_smallest(c1, c2):
    z1, z2 = decode_op(OpCode(3, c1)), decode_op(OpCode(3, c2))
    rep = are_compatible(z1, z2)
    expected = brute_compat(z1, z2)
    if expected is None:
        assert rep.compatible and rep.witness is None and rep.failing_equation is None
    else:
        assert (rep.failing_equation, rep.witness) == expected


@given(codes3)
def test_self_compatible_iff_associative(code):
    z = decode_op(OpCode(3, code))
    assert are_compatible(z, z).compatible == is_associative(z)[0]


def test_dual_examples(z3):
    assert list(dual_set(z3[1], Method.EXHAUSTIVE).members) == sorted(z3[i].code for i in (1, 2, 3))
    assert list(dual_set(z3[4], Method.SANDWICH).members) == sorted(z3[i].code for i in (4, 5, 6))
    assert len(dual_set(z3[6], Method.EXHAUSTIVE)) == 81


def test_exhaustive_matches_brute_force_order2():
    for code in range(code_space(2)):
        z = decode_op(OpCode(2, code))
        expected = brute_dual(z)
        assert dual_set(z, Method.EXHAUSTIVE).members == expected
        assert dual_set(z, Method.BACKTRACK).members == expected


@settings(max_examples=30, deadline=None)
@given(codes3)
def test_backtrack_matches_exhaustive_order3(code):
    z = decode_op(OpCode(3, code))
    assert dual_set(z, Method.BACKTRACK).members == dual_set(z, Method.EXHAUSTIVE).members


@settings(max_examples=10, deadline=None)
@given(codes3)
def test_exhaustive_matches_brute_force_order3(code):
    z = decode_op(OpCode(3, code))
    assert dual_set(z, Method.EXHAUSTIVE).members == brute_dual(z)


def test_dual_set_invariants(z3):
    for z in z3.values():
        d = dual_set(z)
        assert list(d.members) == sorted(set(d.members))
        assert (z in d) == is_associative(z)[0]
        assert all(are_compatible(z, m) for m in d.tables())
        assert d.base == z.opcode


def test_membership_accepts_tables_codes_and_opcodes(z3):
    d = dual_set(z3[1])
    assert z3[2] in d and z3[2].code in d and z3[2].opcode in d
    assert z3[4] not in d and OpCode(2, 0) not in d


def test_method_domains(z3, z4):
    with pytest.raises(MethodError):
        dual_set(z3[6], Method.SANDWICH)
    with pytest.raises(MethodError):
        dual_set(z4[1], Method.EXHAUSTIVE)
    five = CayleyTable(5, tuple([0] * 25))
    with pytest.raises(MethodError):
        dual_set(five, Method.BACKTRACK)
    assert resolve_method(z3[6], "auto") is Method.EXHAUSTIVE
    assert resolve_method(z4[1], "auto") is Method.SANDWICH
    assert resolve_method(CayleyTable(4, (0,) * 16), "auto") is Method.BACKTRACK


def test_backtrack_order4_monoids_match_sandwich(z4):
    for z in z4.values():
        members, nodes = dual_backtrack(z)
        assert members == dual_set(z, Method.SANDWICH).members
        assert nodes > 0


def test_backtrack_budget(z3):
    with pytest.raises(BudgetError):
        dual_backtrack(z3[6], budget=10)
    stats = {}
    assert len(list(iter_dual(z3[6], stats=stats))) == 81
    assert stats["nodes"] >= 81


def test_iter_dual_is_lazy_and_ascending():
    z = CayleyTable(4, (0,) * 16)
    gen = iter_dual(z)
    first = [next(gen) for _ in range(5)]
    assert first == sorted(first)
    gen.close()


def test_dual_of_non_associative_nondegenerate_is_degenerate_semigroups(z3):
    z = make_table(3, [[1, 2, 0], [1, 2, 0], [2, 0, 1]])
    assert not is_associative(z)[0]
    for m in dual_set(z).tables():
        assert is_associative(m)[0] and len(set(m.entries)) < 3
