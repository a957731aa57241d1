"""Finitary functions between finite sets, relation pairs, and algebras.

A function A^k -> B is stored as its full value table in row-major order
with the first argument most significant, so the tuple (x1, ..., xk) sits
at index sum(xi * |A|^(k-i)).  Carrier elements are 0 .. size-1; by
convention the designated elements 0 and 1 are the first two.  All values
are immutable after construction, hashable, and safe to share across
threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class InputError(ValueError):
    """An argument violates a documented precondition."""


class BudgetExceededError(RuntimeError):
    """A computation would grow past its size budget."""

    def __init__(self, message: str, size: int):
        super().__init__(message)
        self.size = size


@dataclass(frozen=True)
class Budget:
    """Cap on the number of elements any generated or enumerated set may reach."""

    max_set_size: int = 1 << 20

    def __post_init__(self):
        if self.max_set_size <= 0:
            raise InputError("budget must be positive")

    def charge(self, size: int, what: str) -> None:
        if size > self.max_set_size:
            raise BudgetExceededError(
                f"{what} needs {size} elements, over the budget of {self.max_set_size}",
                size,
            )


DEFAULT_BUDGET = Budget()


def point_index(point: Sequence[int], size: int) -> int:
    """Table index of a tuple, first coordinate most significant."""
    idx = 0
    for x in point:
        idx = idx * size + x
    return idx


def index_point(index: int, size: int, arity: int) -> tuple[int, ...]:
    """Inverse of point_index."""
    out = [0] * arity
    for i in range(arity - 1, -1, -1):
        index, out[i] = divmod(index, size)
    return tuple(out)


def iter_points(size: int, arity: int) -> Iterator[tuple[int, ...]]:
    """All tuples of the given arity over 0..size-1, in table-index order."""
    return itertools.product(range(size), repeat=arity)


@dataclass(frozen=True, order=True)
class FiniteFunction:
    """A total function A^arity -> B given by its value table."""

    source_size: int
    target_size: int
    arity: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.source_size < 1 or self.target_size < 1:
            raise InputError("source and target sizes must be at least 1")
        if self.arity < 1:
            raise InputError("arity must be at least 1")
        expected = self.source_size**self.arity
        if len(self.table) != expected:
            raise InputError(
                f"table has {len(self.table)} entries, expected {expected}"
            )
        for v in self.table:
            if not 0 <= v < self.target_size:
                raise InputError(f"table entry {v} outside target 0..{self.target_size - 1}")

    def __call__(self, *point: int) -> int:
        return self.table[point_index(point, self.source_size)]

    def evaluate(self, point: Sequence[int]) -> int:
        return self.table[point_index(point, self.source_size)]

    @classmethod
    def from_callable(cls, source_size: int, target_size: int, arity: int, fn) -> "FiniteFunction":
        table = tuple(fn(*p) for p in iter_points(source_size, arity))
        return cls(source_size, target_size, arity, table)

    @classmethod
    def constant(cls, source_size: int, target_size: int, arity: int, value: int) -> "FiniteFunction":
        return cls(source_size, target_size, arity, (value,) * source_size**arity)

    @classmethod
    def projection(cls, size: int, arity: int, position: int) -> "FiniteFunction":
        """Projection onto the given coordinate; positions are 1-based."""
        if not 1 <= position <= arity:
            raise InputError(f"projection position {position} outside 1..{arity}")
        table = tuple(p[position - 1] for p in iter_points(size, arity))
        return cls(size, size, arity, table)


@dataclass(frozen=True)
class MinorMap:
    """A variable map sigma: [k] -> [l] with 1-based images.

    Applied to a k-ary function it permutes, identifies, or adds dummy
    variables; it need not be injective or surjective.
    """

    domain_arity: int
    codomain_arity: int
    images: tuple[int, ...]

    def __post_init__(self):
        if self.domain_arity < 1 or self.codomain_arity < 1:
            raise InputError("minor map arities must be at least 1")
        if len(self.images) != self.domain_arity:
            raise InputError(
                f"minor map has {len(self.images)} images, expected {self.domain_arity}"
            )
        for v in self.images:
            if not 1 <= v <= self.codomain_arity:
                raise InputError(f"minor map image {v} outside 1..{self.codomain_arity}")

    @classmethod
    def identity(cls, arity: int) -> "MinorMap":
        return cls(arity, arity, tuple(range(1, arity + 1)))


def compose_minor_maps(outer: MinorMap, inner: MinorMap) -> MinorMap:
    """The map sending i to outer(inner(i))."""
    if inner.codomain_arity != outer.domain_arity:
        raise InputError("minor maps do not compose: codomain/domain mismatch")
    images = tuple(outer.images[i - 1] for i in inner.images)
    return MinorMap(inner.domain_arity, outer.codomain_arity, images)


def iter_minor_maps(domain_arity: int, codomain_arity: int) -> Iterator[MinorMap]:
    """All maps [domain_arity] -> [codomain_arity], in lexicographic image order."""
    for images in itertools.product(range(1, codomain_arity + 1), repeat=domain_arity):
        yield MinorMap(domain_arity, codomain_arity, images)


def minor(f: FiniteFunction, sigma: MinorMap) -> FiniteFunction:
    """The minor f^sigma with f^sigma(x1, ..., xl) = f(x_sigma(1), ..., x_sigma(k))."""
    if sigma.domain_arity != f.arity:
        raise InputError(
            f"minor map domain arity {sigma.domain_arity} does not match function arity {f.arity}"
        )
    ell = sigma.codomain_arity
    size = f.source_size
    table = tuple(
        f.table[point_index(tuple(point[i - 1] for i in sigma.images), size)]
        for point in iter_points(size, ell)
    )
    return FiniteFunction(size, f.target_size, ell, table)


def apply_pointwise(op: FiniteFunction, args: Sequence[FiniteFunction]) -> FiniteFunction:
    """Apply an operation on B to functions A^k -> B, pointwise on arguments.

    For op of arity m the result r satisfies r(x) = op(g1(x), ..., gm(x)).
    """
    if op.source_size != op.target_size:
        raise InputError("pointwise operation must act on a single carrier")
    if len(args) != op.arity:
        raise InputError(f"operation of arity {op.arity} applied to {len(args)} arguments")
    if not args:
        raise InputError("no arguments")
    first = args[0]
    for g in args:
        if (g.source_size, g.target_size, g.arity) != (
            first.source_size,
            first.target_size,
            first.arity,
        ):
            raise InputError("pointwise arguments must share one signature")
    if first.target_size != op.source_size:
        raise InputError(
            f"argument target size {first.target_size} does not match carrier {op.source_size}"
        )
    carrier = op.source_size
    tables = [g.table for g in args]
    out = []
    for t in range(len(first.table)):
        acc = 0
        for tab in tables:
            acc = acc * carrier + tab[t]
        out.append(op.table[acc])
    return FiniteFunction(first.source_size, first.target_size, first.arity, tuple(out))


def support_count(f: FiniteFunction, value: int) -> int:
    """Number of input tuples mapped to the given value."""
    if not 0 <= value < f.target_size:
        raise InputError(f"value {value} outside target 0..{f.target_size - 1}")
    return sum(1 for v in f.table if v == value)


def _canonical_tuples(tuples: Iterable[Sequence[int]], arity: int, size: int, side: str):
    seen = set()
    for t in tuples:
        t = tuple(t)
        if len(t) != arity:
            raise InputError(f"{side} tuple {t} has length {len(t)}, expected {arity}")
        for v in t:
            if not 0 <= v < size:
                raise InputError(f"{side} tuple entry {v} outside 0..{size - 1}")
        seen.add(t)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class RelationPair:
    """A pair (P, Q) of m-ary relations on the source and target sets."""

    arity: int
    source_size: int
    target_size: int
    p: tuple[tuple[int, ...], ...]
    q: tuple[tuple[int, ...], ...]
    p_set: frozenset = field(init=False, repr=False, compare=False)
    q_set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.arity < 1:
            raise InputError("relation arity must be at least 1")
        if self.source_size < 1 or self.target_size < 1:
            raise InputError("relation carrier sizes must be at least 1")
        object.__setattr__(
            self, "p", _canonical_tuples(self.p, self.arity, self.source_size, "P")
        )
        object.__setattr__(
            self, "q", _canonical_tuples(self.q, self.arity, self.target_size, "Q")
        )
        object.__setattr__(self, "p_set", frozenset(self.p))
        object.__setattr__(self, "q_set", frozenset(self.q))


@dataclass(frozen=True)
class Algebra:
    """A finite carrier with named basic operations.

    Operations act on the carrier (source = target = carrier_size) and
    have arity at least 1; constants are unary constant operations.
    """

    carrier_size: int
    ops: tuple[tuple[str, FiniteFunction], ...] = ()

    def __post_init__(self):
        if self.carrier_size < 1:
            raise InputError("carrier size must be at least 1")
        names = set()
        for name, fn in self.ops:
            if not name:
                raise InputError("operation names must be nonempty")
            if name in names:
                raise InputError(f"duplicate operation name {name!r}")
            names.add(name)
            if fn.source_size != self.carrier_size or fn.target_size != self.carrier_size:
                raise InputError(
                    f"operation {name!r} does not act on a carrier of size {self.carrier_size}"
                )
        object.__setattr__(self, "ops", tuple(self.ops))

    def op_named(self, name: str) -> FiniteFunction:
        for n, fn in self.ops:
            if n == name:
                return fn
        raise InputError(f"no operation named {name!r}")


def is_polymorphism(f: FiniteFunction, pair: RelationPair) -> bool:
    """Whether f applied componentwise maps every k-tuple over P into Q.

    Brute force over all |P|^k choices of rows.
    """
    if f.source_size != pair.source_size:
        raise InputError(
            f"function source size {f.source_size} does not match relation source {pair.source_size}"
        )
    if f.target_size != pair.target_size:
        raise InputError(
            f"function target size {f.target_size} does not match relation target {pair.target_size}"
        )
    m = pair.arity
    size = f.source_size
    table = f.table
    for choice in itertools.product(pair.p, repeat=f.arity):
        image = tuple(
            table[point_index(tuple(row[j] for row in choice), size)] for j in range(m)
        )
        if image not in pair.q_set:
            return False
    return True


@dataclass(frozen=True)
class FunctionSet:
    """A deduplicated set of value tables sharing one signature.

    Iteration and emission follow the canonical order: lexicographic by
    table.
    """

    source_size: int
    target_size: int
    arity: int
    tables: tuple[tuple[int, ...], ...]
    _lookup: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.source_size < 1 or self.target_size < 1 or self.arity < 1:
            raise InputError("function set signature entries must be at least 1")
        length = self.source_size**self.arity
        for t in self.tables:
            if len(t) != length:
                raise InputError(f"member table has {len(t)} entries, expected {length}")
            for v in t:
                if not 0 <= v < self.target_size:
                    raise InputError(
                        f"member entry {v} outside target 0..{self.target_size - 1}"
                    )
        object.__setattr__(self, "tables", tuple(sorted(set(self.tables))))
        object.__setattr__(self, "_lookup", frozenset(self.tables))

    @classmethod
    def empty(cls, source_size: int, target_size: int, arity: int) -> "FunctionSet":
        return cls(source_size, target_size, arity, ())

    @classmethod
    def from_functions(cls, fns: Iterable[FiniteFunction]) -> "FunctionSet":
        fns = list(fns)
        if not fns:
            raise InputError("cannot infer a signature from an empty collection")
        first = fns[0]
        for f in fns:
            if (f.source_size, f.target_size, f.arity) != (
                first.source_size,
                first.target_size,
                first.arity,
            ):
                raise InputError("function set members must share one signature")
        return cls(
            first.source_size, first.target_size, first.arity, tuple(f.table for f in fns)
        )

    @property
    def table_set(self) -> frozenset:
        return self._lookup

    def __len__(self) -> int:
        return len(self.tables)

    def __contains__(self, item) -> bool:
        if isinstance(item, FiniteFunction):
            if (item.source_size, item.target_size, item.arity) != (
                self.source_size,
                self.target_size,
                self.arity,
            ):
                return False
            return item.table in self._lookup
        return tuple(item) in self._lookup

    def __iter__(self) -> Iterator[FiniteFunction]:
        for t in self.tables:
            yield FiniteFunction(self.source_size, self.target_size, self.arity, t)

    def functions(self) -> tuple[FiniteFunction, ...]:
        return tuple(self)


def pol_slice(
    pairs: Sequence[RelationPair],
    arity: int,
    source_size: int | None = None,
    target_size: int | None = None,
    budget: Budget | None = None,
) -> FunctionSet:
    """All arity-ary functions preserving every pair, by full enumeration."""
    budget = budget or DEFAULT_BUDGET
    if arity < 1:
        raise InputError("arity must be at least 1")
    if pairs:
        if source_size is None:
            source_size = pairs[0].source_size
        if target_size is None:
            target_size = pairs[0].target_size
        for r in pairs:
            if r.source_size != source_size or r.target_size != target_size:
                raise InputError("relation pairs must share source and target sizes")
    if source_size is None or target_size is None:
        raise InputError("source and target sizes are required when no pairs are given")
    length = source_size**arity
    count = target_size**length
    budget.charge(count, f"enumerating all {arity}-ary functions")
    kept = []
    for table in itertools.product(range(target_size), repeat=length):
        f = FiniteFunction(source_size, target_size, arity, table)
        if all(is_polymorphism(f, r) for r in pairs):
            kept.append(table)
    return FunctionSet(source_size, target_size, arity, tuple(kept))
