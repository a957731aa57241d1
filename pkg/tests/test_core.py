import itertools
import random

import pytest

from clonoids import (
    Budget,
    BudgetExceededError,
    FiniteFunction,
    FunctionSet,
    InputError,
    MinorMap,
    RelationPair,
    apply_pointwise,
    compose_minor_maps,
    is_polymorphism,
    iter_minor_maps,
    minor,
    pol_slice,
    support_count,
)
from clonoids.core import Algebra, index_point, iter_points, point_index

from util import bool_fn, MEET, XOR_01


def test_point_encoding_round_trip():
    for size in range(1, 5):
        for arity in range(1, 7):
            for i, point in enumerate(iter_points(size, arity)):
                assert point_index(point, size) == i
                assert index_point(i, size, arity) == point


def test_first_argument_is_most_significant():
    f = FiniteFunction(2, 2, 2, (0, 1, 1, 0))
    assert f(0, 1) == 1
    assert f(1, 0) == 1
    assert f(1, 1) == 0


def test_table_validation():
    with pytest.raises(InputError):
        FiniteFunction(2, 2, 2, (0, 1, 1))
    with pytest.raises(InputError):
        FiniteFunction(2, 2, 1, (0, 2))
    with pytest.raises(InputError):
        FiniteFunction(2, 2, 0, ())


def test_minor_identity_is_identity():
    f = bool_fn("0110", 2)
    assert minor(f, MinorMap.identity(2)) == f


def test_minor_expands_unary_into_second_position():
    e1 = bool_fn("01", 1)
    g = minor(e1, MinorMap(1, 2, (2,)))
    assert g.table == (0, 1, 0, 1)


def test_minor_diagonal_identification():
    f2 = bool_fn("0110", 2)
    g = minor(f2, MinorMap(2, 1, (1, 1)))
    assert g.table == (0, 0)


def test_minor_arity_mismatch():
    with pytest.raises(InputError):
        minor(bool_fn("0110", 2), MinorMap(3, 2, (1, 2, 1)))


def test_minor_map_validation():
    with pytest.raises(InputError):
        MinorMap(2, 2, (0, 1))
    with pytest.raises(InputError):
        MinorMap(2, 2, (1, 3))


def test_minor_functoriality_small():
    rng = random.Random(5)
    for k, ell, m in itertools.product((1, 2, 3), repeat=3):
        f = FiniteFunction(2, 2, k, tuple(rng.randrange(2) for _ in range(2**k)))
        for sigma in iter_minor_maps(k, ell):
            for tau in iter_minor_maps(ell, m):
                lhs = minor(minor(f, sigma), tau)
                rhs = minor(f, compose_minor_maps(tau, sigma))
                assert lhs == rhs


def test_apply_pointwise_projection_returns_argument():
    proj = FiniteFunction.projection(2, 2, 2)
    g1, g2 = bool_fn("0011", 2), bool_fn("0101", 2)
    assert apply_pointwise(proj, [g1, g2]) == g2


def test_apply_pointwise_xor_and_meet():
    g1, g2 = bool_fn("0011", 2), bool_fn("0101", 2)
    assert apply_pointwise(XOR_01.op_named("add"), [g1, g2]).table == (0, 1, 1, 0)
    assert apply_pointwise(MEET.op_named("meet"), [g1, g2]).table == (0, 0, 0, 1)


def test_apply_pointwise_signature_mismatch():
    with pytest.raises(InputError):
        apply_pointwise(MEET.op_named("meet"), [bool_fn("01", 1), bool_fn("0110", 2)])
    with pytest.raises(InputError):
        apply_pointwise(MEET.op_named("meet"), [bool_fn("01", 1)])


def test_support_count():
    assert support_count(bool_fn("0001", 2), 1) == 1
    assert support_count(bool_fn("0101", 2), 1) == 2
    assert support_count(FiniteFunction.constant(2, 2, 2, 0), 1) == 0
    with pytest.raises(InputError):
        support_count(bool_fn("01", 1), 2)


def unit_pair_2():
    return RelationPair(2, 2, 2, ((1, 0), (0, 1)), ((0, 0), (0, 1), (1, 0)))


def test_is_polymorphism_examples():
    f2 = bool_fn("0110", 2)
    p2 = unit_pair_2()
    assert not is_polymorphism(f2, p2)
    p3 = RelationPair(
        3,
        2,
        2,
        ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
        tuple(t for t in iter_points(2, 3) if t != (1, 1, 1)),
    )
    assert is_polymorphism(FiniteFunction.constant(2, 2, 1, 0), p3)
    assert is_polymorphism(f2, p3)


def test_is_polymorphism_size_mismatch():
    with pytest.raises(InputError):
        is_polymorphism(FiniteFunction(3, 2, 1, (0, 1, 0)), unit_pair_2())


def test_polymorphisms_are_minor_closed():
    rng = random.Random(11)
    pair = unit_pair_2()
    found = 0
    for _ in range(200):
        k = rng.randint(1, 3)
        f = FiniteFunction(2, 2, k, tuple(rng.randrange(2) for _ in range(2**k)))
        if not is_polymorphism(f, pair):
            continue
        found += 1
        for ell in (1, 2, 3):
            for sigma in iter_minor_maps(k, ell):
                assert is_polymorphism(minor(f, sigma), pair)
    assert found > 10


def test_pol_slice_no_constraints():
    assert len(pol_slice([], 1, source_size=2, target_size=2)) == 4


def test_pol_slice_unit_pair_matches_direct_constraints():
    got = pol_slice([unit_pair_2()], 2)
    expected = []
    for table in itertools.product((0, 1), repeat=4):
        f00, f01, f10, f11 = table
        if f00 and f11:
            continue
        if f01 and f10:
            continue
        expected.append(table)
    assert len(got) == 9
    assert list(got.tables) == sorted(expected)


def test_pol_slice_empty_p_allows_everything():
    pair = RelationPair(2, 2, 2, (), ((0, 0),))
    assert len(pol_slice([pair], 2)) == 16


def test_pol_slice_budget():
    with pytest.raises(BudgetExceededError):
        pol_slice([], 5, source_size=2, target_size=2, budget=Budget(1 << 10))


def test_relation_pair_canonicalization():
    pair = RelationPair(2, 2, 2, ((0, 1), (1, 0), (0, 1)), ((0, 0),))
    assert pair.p == ((0, 1), (1, 0))
    with pytest.raises(InputError):
        RelationPair(2, 2, 2, ((0, 1, 1),), ())
    with pytest.raises(InputError):
        RelationPair(2, 2, 2, ((0, 2),), ())


def test_function_set_canonical_order_and_membership():
    fs = FunctionSet(2, 2, 1, ((1, 0), (0, 1), (1, 0)))
    assert fs.tables == ((0, 1), (1, 0))
    assert bool_fn("01", 1) in fs
    assert bool_fn("00", 1) not in fs
    assert FiniteFunction(3, 2, 1, (0, 1, 0)) not in fs
    assert [f.table for f in fs] == [(0, 1), (1, 0)]


def test_function_set_validation():
    with pytest.raises(InputError):
        FunctionSet(2, 2, 1, ((0, 1, 1),))
    with pytest.raises(InputError):
        FunctionSet(2, 2, 1, ((0, 2),))


def test_algebra_validation():
    with pytest.raises(InputError):
        Algebra(2, (("a", bool_fn("01", 1)), ("a", bool_fn("10", 1))))
    with pytest.raises(InputError):
        Algebra(3, (("a", bool_fn("01", 1)),))
    assert Algebra(2, ()).ops == ()
