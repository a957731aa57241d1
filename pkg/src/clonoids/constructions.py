"""Witness families and algebra combinators.

The separation machinery of the package rests on two indicator families
over a source set containing 0 and 1: the indicator of the all-ones tuple
and the indicator of the set of unit vectors, together with the relation
pairs that tell members of the second family apart.
"""

from __future__ import annotations

from typing import Iterable

from .core import (
    Algebra,
    FiniteFunction,
    InputError,
    RelationPair,
    iter_points,
)
from .closure import GeneratorFamily


def all_ones_indicator(source_size: int, arity: int) -> FiniteFunction:
    """Indicator of the tuple (1, ..., 1) inside A^arity, into {0, 1}."""
    if source_size < 2:
        raise InputError("indicator constructions need 0 and 1 in the source set")
    table = tuple(1 if all(x == 1 for x in p) else 0 for p in iter_points(source_size, arity))
    return FiniteFunction(source_size, 2, arity, table)


def unit_vectors(size: int, arity: int) -> tuple[tuple[int, ...], ...]:
    """The arity-many 0/1 tuples with exactly one coordinate equal to 1."""
    out = []
    for i in range(arity):
        p = [0] * arity
        p[i] = 1
        out.append(tuple(p))
    return tuple(sorted(out))


def unit_vector_indicator(source_size: int, arity: int) -> FiniteFunction:
    """Indicator of the unit vectors inside A^arity, into {0, 1}."""
    if source_size < 2:
        raise InputError("indicator constructions need 0 and 1 in the source set")
    units = set(unit_vectors(source_size, arity))
    table = tuple(1 if p in units else 0 for p in iter_points(source_size, arity))
    return FiniteFunction(source_size, 2, arity, table)


def unit_pair(arity: int, source_size: int, target_size: int) -> RelationPair:
    """Unit vectors on the source side, the punctured 0/1 cube on the target side.

    The target relation is every 0/1 tuple of the given arity except the
    all-ones tuple, viewed inside the target carrier.
    """
    if source_size < 2 or target_size < 2:
        raise InputError("relation pair constructions need carriers of size at least 2")
    p = unit_vectors(source_size, arity)
    q = tuple(t for t in iter_points(2, arity) if any(x == 0 for x in t))
    return RelationPair(arity, source_size, target_size, p, q)


def witness_family(
    indices: Iterable[int], source_size: int, target_size: int = 2
) -> tuple[GeneratorFamily, tuple[RelationPair, ...]]:
    """Unit-vector indicators and their separating pairs at the given arities."""
    idx = sorted(set(indices))
    for k in idx:
        if k < 1:
            raise InputError("family indices must be positive")
    gens = tuple(unit_vector_indicator(source_size, k) for k in idx)
    pairs = tuple(unit_pair(n, source_size, target_size) for n in idx)
    return GeneratorFamily(source_size, 2, gens), pairs


def complement_in_window(indices: Iterable[int], low: int, high: int) -> tuple[int, ...]:
    """The complement of an index set, taken inside a declared finite window."""
    inside = set(indices)
    return tuple(n for n in range(low, high + 1) if n not in inside)


def product_algebra(left: Algebra, right: Algebra) -> Algebra:
    """Componentwise product; element (a, b) is encoded as a * |B2| + b.

    Both factors must declare the same operation names with the same
    arities, in the same order.
    """
    left_names = [(n, f.arity) for n, f in left.ops]
    right_names = [(n, f.arity) for n, f in right.ops]
    if left_names != right_names:
        raise InputError("product factors must share operation names and arities")
    ls, rs = left.carrier_size, right.carrier_size
    size = ls * rs
    ops = []
    for (name, lf), (_n, rf) in zip(left.ops, right.ops):
        table = []
        for point in iter_points(size, lf.arity):
            la = tuple(x // rs for x in point)
            ra = tuple(x % rs for x in point)
            table.append(lf.evaluate(la) * rs + rf.evaluate(ra))
        ops.append((name, FiniteFunction(size, size, lf.arity, tuple(table))))
    return Algebra(size, tuple(ops))


def dualize(f: FiniteFunction) -> FiniteFunction:
    """The Boolean dual g(x1, ..., xk) = not f(not x1, ..., not xk)."""
    if f.source_size != 2 or f.target_size != 2:
        raise InputError("dualization is defined over the two-element carrier")
    table = tuple(
        1 - f.evaluate(tuple(1 - x for x in p)) for p in iter_points(2, f.arity)
    )
    return FiniteFunction(2, 2, f.arity, table)


def dualize_algebra(algebra: Algebra) -> Algebra:
    """Dualize every basic operation, keeping names and order."""
    if algebra.carrier_size != 2:
        raise InputError("dualization is defined over the two-element carrier")
    return Algebra(2, tuple((name, dualize(fn)) for name, fn in algebra.ops))
