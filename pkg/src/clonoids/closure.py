"""Fixpoint engines: generated subalgebras, clonoid and clone slices.

The reference algorithm is an incremental worklist: each round applies
every basic operation to all argument tuples that touch at least one
element found in the previous round.  Two internal accelerations keep
desk-scale closures fast without changing any result:

* Boolean targets are bit-packed.  A table over {0,1} with at most 64
  entries is one machine word, a basic operation is evaluated on whole
  numpy batches of packed tables through its disjunctive normal form, and
  the worklist rounds run as chunked outer products.

* When the target algebra has a majority term, a generated subpower is
  determined by its projections onto coordinate pairs (the Baker-Pixley
  property at arity 3).  For small Boolean table spaces the closure is
  then read off directly: close every unary and binary projection of the
  generators, which lives in a space of at most 4 elements, and filter
  the full table space against the closed pair sets.

Both paths return the identical canonical set; the tests cross-check them
against the plain worklist.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .core import (
    Algebra,
    Budget,
    DEFAULT_BUDGET,
    FiniteFunction,
    FunctionSet,
    InputError,
    iter_minor_maps,
    minor,
    point_index,
)

# Boolean fast-path limits: bit-packed worklist up to 64-entry tables,
# projection-based generation up to 2^20 candidate tables.
_PACKED_MAX_LEN = 64
_DECOMPOSE_MAX_LEN = 20
_BLOCK = 1 << 21


@dataclass(frozen=True)
class GeneratorFamily:
    """Generators of a clonoid: functions of mixed arities, one signature."""

    source_size: int
    target_size: int
    generators: tuple[FiniteFunction, ...] = ()

    def __post_init__(self):
        if self.source_size < 1 or self.target_size < 1:
            raise InputError("family sizes must be at least 1")
        for g in self.generators:
            if g.source_size != self.source_size or g.target_size != self.target_size:
                raise InputError("family generators must share source and target sizes")
        object.__setattr__(self, "generators", tuple(self.generators))


def _op_specs(algebra: Algebra) -> list[tuple[str, int, tuple[int, ...]]]:
    return [(name, fn.arity, fn.table) for name, fn in algebra.ops]


def _apply_table_op(
    op_table: tuple[int, ...], carrier: int, args: Sequence[tuple[int, ...]]
) -> tuple[int, ...]:
    out = []
    for t in range(len(args[0])):
        acc = 0
        for tab in args:
            acc = acc * carrier + tab[t]
        out.append(op_table[acc])
    return tuple(out)


def _close_tuples(
    tables: Sequence[tuple[int, ...]], algebra: Algebra, budget: Budget
) -> tuple[tuple[int, ...], ...]:
    """Plain worklist closure on raw tables; works for any carrier size."""
    specs = _op_specs(algebra)
    carrier = algebra.carrier_size
    members = set(tables)
    budget.charge(len(members), "subalgebra closure")
    old: list[tuple[int, ...]] = []
    frontier = sorted(members)
    while frontier:
        everything = old + frontier
        new: set[tuple[int, ...]] = set()
        for _name, m, op_table in specs:
            for j in range(m):
                pools = [old] * j + [frontier] + [everything] * (m - 1 - j)
                if any(not pool for pool in pools):
                    continue
                for combo in itertools.product(*pools):
                    out = _apply_table_op(op_table, carrier, combo)
                    if out not in members and out not in new:
                        new.add(out)
                        budget.charge(len(members) + len(new), "subalgebra closure")
        members.update(new)
        old = everything
        frontier = sorted(new)
    return tuple(sorted(members))


# --- bit-packed Boolean path ------------------------------------------------


def _pack_table(table: Sequence[int]) -> int:
    acc = 0
    for v in table:
        acc = (acc << 1) | v
    return acc


def _unpack_mask(mask: int, length: int) -> tuple[int, ...]:
    return tuple((mask >> (length - 1 - t)) & 1 for t in range(length))


def _anf_terms(op_table: tuple[int, ...], arity: int) -> list[int]:
    """Monomials of the algebraic normal form of a {0,1}-valued operation.

    Each returned value is a bitmask over argument positions; bit p of a
    table index addresses argument arity-1-p.  Evaluating the operation is
    then one XOR accumulation of AND-monomials, which is much cheaper on
    packed batches than walking the disjunctive normal form.
    """
    coeffs = list(op_table)
    for b in range(arity):
        step = 1 << b
        for idx in range(1 << arity):
            if idx & step:
                coeffs[idx] ^= coeffs[idx & ~step]
    return [s for s, c in enumerate(coeffs) if c]


def _eval_anf(terms: list[int], arity: int, grids: list, full_mask):
    """Evaluate an operation given by its ANF monomials on broadcast grids."""
    acc = None
    for s in terms:
        if s == 0:
            term = full_mask
        else:
            term = None
            for p in range(arity):
                if s >> p & 1:
                    g = grids[arity - 1 - p]
                    term = g if term is None else (term & g)
        acc = term if acc is None else (acc ^ term)
    return acc


def _iter_grid_blocks(pools: list, block: int):
    """Chunk an m-dimensional argument grid into blocks of at most `block` cells."""
    m = len(pools)
    per_axis = max(1, int(round(block ** (1.0 / m))))
    ranges = [range(0, len(pool), per_axis) for pool in pools]
    for starts in itertools.product(*ranges):
        grids = []
        for axis, (pool, start) in enumerate(zip(pools, starts)):
            piece = pool[start : start + per_axis]
            shape = [1] * m
            shape[axis] = piece.size
            grids.append(piece.reshape(shape))
        yield grids


def _mask_dtype(length: int):
    if length <= 16:
        return np.uint16
    if length <= 32:
        return np.uint32
    return np.uint64


def _pool_choices(specs, old, frontier, everything):
    """Argument pools covering every tuple that touches the frontier.

    Tuples are split by the first position holding a frontier element;
    symmetric binary operations only need frontier-against-everything.
    """
    for _name, m, op_table in specs:
        terms = _anf_terms(op_table, m)
        if m == 2 and op_table[1] == op_table[2]:
            yield m, terms, (everything, frontier)
            continue
        for j in range(m):
            yield m, terms, tuple([old] * j + [frontier] + [everything] * (m - 1 - j))


def _close_masks_dense(tables, specs, length, budget):
    """Packed worklist with a dense seen table; new elements are scatter-marked
    per block and the frontier is read off once per round."""
    dtype = _mask_dtype(length)
    full_mask = dtype((1 << length) - 1)
    space = 1 << length
    seen = np.zeros(space, dtype=bool)
    start = sorted({_pack_table(t) for t in tables})
    budget.charge(len(start), "subalgebra closure")
    seen[start] = True
    old = np.empty(0, dtype=dtype)
    frontier = np.array(start, dtype=dtype)
    total = len(start)

    while frontier.size and total < space:
        everything = np.concatenate([old, frontier])
        before = seen.copy()
        saturated = False
        for m, terms, pools in _pool_choices(specs, old, frontier, everything):
            if saturated:
                break
            if any(pool.size == 0 for pool in pools):
                continue
            for grids in _iter_grid_blocks(list(pools), _BLOCK):
                block = _eval_anf(terms, m, grids, full_mask)
                if block is None:  # constant-zero operation
                    seen[0] = True
                else:
                    seen[block] = True
                if int(np.count_nonzero(seen)) == space:
                    saturated = True
                    break
        fresh = np.flatnonzero(seen ^ before)
        total += int(fresh.size)
        budget.charge(total, "subalgebra closure")
        old = everything
        frontier = fresh.astype(dtype)

    masks = np.flatnonzero(seen).tolist()
    return masks


def _close_masks_sparse(tables, specs, length, budget):
    """Packed worklist for long tables; dedup through a plain set."""
    full_mask = np.uint64((1 << length) - 1) if length < 64 else np.uint64(~np.uint64(0))
    seen: set[int] = set()
    start = sorted({_pack_table(t) for t in tables})
    budget.charge(len(start), "subalgebra closure")
    seen.update(start)
    old = np.empty(0, dtype=np.uint64)
    frontier = np.array(start, dtype=np.uint64)
    total = len(start)

    while frontier.size:
        everything = np.concatenate([old, frontier])
        found: list[int] = []
        for m, terms, pools in _pool_choices(specs, old, frontier, everything):
            if any(pool.size == 0 for pool in pools):
                continue
            for grids in _iter_grid_blocks(list(pools), _BLOCK):
                block = _eval_anf(terms, m, grids, full_mask)
                cand = (
                    np.unique(block.ravel()) if block is not None else np.zeros(1, np.uint64)
                )
                for v in cand.tolist():
                    if v not in seen:
                        seen.add(v)
                        found.append(v)
                        total += 1
                        budget.charge(total, "subalgebra closure")
        old = everything
        frontier = np.array(sorted(found), dtype=np.uint64)

    return sorted(seen)


def _close_masks(
    tables: Sequence[tuple[int, ...]], algebra: Algebra, length: int, budget: Budget
) -> tuple[tuple[int, ...], ...]:
    """Worklist closure over bit-packed Boolean tables, numpy-batched."""
    specs = _op_specs(algebra)
    if length <= 24:
        masks = _close_masks_dense(tables, specs, length, budget)
    else:
        masks = _close_masks_sparse(tables, specs, length, budget)
    return tuple(_unpack_mask(m, length) for m in masks)


# --- projection path for majority targets -----------------------------------


def _majority_table_ok(table: tuple[int, ...], carrier: int) -> bool:
    for x in range(carrier):
        for y in range(carrier):
            for j in range(3):
                point = [x, x, x]
                point[j] = y
                if table[point_index(point, carrier)] != x:
                    return False
    return True


@lru_cache(maxsize=None)
def _has_majority_term(algebra: Algebra) -> bool:
    if algebra.carrier_size != 2 or not algebra.ops:
        return False
    projections = tuple(
        FiniteFunction.projection(2, 3, i).table for i in range(1, 4)
    )
    ternary = _close_tables_dispatch(
        projections, algebra, 2, 3, Budget(1 << 10), allow_decomposition=False
    )
    return any(_majority_table_ok(t, 2) for t in ternary)


def _close_by_projections(
    tables: Sequence[tuple[int, ...]], algebra: Algebra, length: int, budget: Budget
) -> tuple[tuple[int, ...], ...]:
    """Closure via closed coordinate-pair projections; exact for majority targets."""
    unary: list = []
    for t in range(length):
        col = {(tab[t],) for tab in tables}
        unary.append({v[0] for v in _close_tuples(sorted(col), algebra, DEFAULT_BUDGET)})
    allowed = np.ones(1 << length, dtype=bool)
    bits = [
        ((np.arange(1 << length, dtype=np.uint32) >> (length - 1 - t)) & 1).astype(np.uint8)
        for t in range(length)
    ]
    for t in range(length):
        lut = np.zeros(2, dtype=bool)
        for v in unary[t]:
            lut[v] = True
        allowed &= lut[bits[t]]
    for t in range(length):
        for u in range(t + 1, length):
            col = sorted({(tab[t], tab[u]) for tab in tables})
            closed_pairs = _close_tuples(col, algebra, DEFAULT_BUDGET)
            if len(closed_pairs) == 4:
                continue
            lut = np.zeros((2, 2), dtype=bool)
            for a, b in closed_pairs:
                lut[a, b] = True
            allowed &= lut[bits[t], bits[u]]
    budget.charge(int(np.count_nonzero(allowed)), "subalgebra closure")
    masks = np.nonzero(allowed)[0].tolist()
    return tuple(_unpack_mask(m, length) for m in masks)


def _close_tables_dispatch(
    tables: Sequence[tuple[int, ...]],
    algebra: Algebra,
    source_size: int,
    arity: int,
    budget: Budget,
    allow_decomposition: bool = True,
) -> tuple[tuple[int, ...], ...]:
    if not tables:
        return ()
    if not algebra.ops:
        return tuple(sorted(set(tables)))
    length = source_size**arity
    if algebra.carrier_size == 2:
        if (
            allow_decomposition
            and length <= _DECOMPOSE_MAX_LEN
            and _has_majority_term(algebra)
        ):
            return _close_by_projections(tables, algebra, length, budget)
        if length <= _PACKED_MAX_LEN:
            return _close_masks(tables, algebra, length, budget)
    return _close_tuples(tables, algebra, budget)


def subalgebra_close(
    gens: FunctionSet, algebra: Algebra, budget: Budget | None = None
) -> FunctionSet:
    """Least superset of gens closed under every basic operation, pointwise.

    The empty set closes to itself since no operation is nullary.
    """
    if gens.target_size != algebra.carrier_size:
        raise InputError(
            f"generator target size {gens.target_size} does not match carrier {algebra.carrier_size}"
        )
    budget = budget or DEFAULT_BUDGET
    closed = _close_tables_dispatch(gens.tables, algebra, gens.source_size, gens.arity, budget)
    return FunctionSet(gens.source_size, gens.target_size, gens.arity, closed)


def clonoid_slice(
    family: GeneratorFamily, algebra: Algebra, arity: int, budget: Budget | None = None
) -> FunctionSet:
    """The arity-ary part of the clonoid generated by the family.

    Computed in normal form: take every minor of every generator into the
    requested arity, then close under the basic operations.  Minors
    commute with the pointwise action, so one layer of minors under one
    closure reaches everything.
    """
    if arity < 1:
        raise InputError("slice arity must be at least 1")
    if family.target_size != algebra.carrier_size:
        raise InputError(
            f"family target size {family.target_size} does not match carrier {algebra.carrier_size}"
        )
    budget = budget or DEFAULT_BUDGET
    minors = []
    for g in family.generators:
        for sigma in iter_minor_maps(g.arity, arity):
            minors.append(minor(g, sigma).table)
    closed = _close_tables_dispatch(tuple(minors), algebra, family.source_size, arity, budget)
    return FunctionSet(family.source_size, family.target_size, arity, closed)


def member(
    f: FiniteFunction,
    family: GeneratorFamily,
    algebra: Algebra,
    budget: Budget | None = None,
) -> bool:
    """Whether f lies in the clonoid generated by the family."""
    if f.source_size != family.source_size or f.target_size != family.target_size:
        raise InputError("function signature does not match the generator family")
    return f in clonoid_slice(family, algebra, f.arity, budget)


def bp_member(f: FiniteFunction, c_r: FunctionSet, nu_arity: int) -> bool:
    """Membership through the fixed-arity slice of a clonoid.

    Valid when the target algebra has a near-unanimity term of the given
    arity n: f belongs to the clonoid iff every minor of f into arity
    r = |A|^(n-1) lies in the r-ary slice.  Each choice of n-1 rows over
    A^k factors through the canonical matrix whose columns enumerate
    A^(n-1), so running over all variable maps [k] -> [r] covers every
    such choice.
    """
    if nu_arity < 3:
        raise InputError("near-unanimity arity must be at least 3")
    r = f.source_size ** (nu_arity - 1)
    if c_r.arity != r:
        raise InputError(f"slice arity {c_r.arity} does not match required arity {r}")
    if c_r.source_size != f.source_size or c_r.target_size != f.target_size:
        raise InputError("slice signature does not match the function")
    for sigma in iter_minor_maps(f.arity, r):
        if minor(f, sigma) not in c_r:
            return False
    return True


def clone_slice(algebra: Algebra, arity: int, budget: Budget | None = None) -> FunctionSet:
    """All arity-ary term operations: close the projections under the basic ops."""
    if arity < 1:
        raise InputError("clone slice arity must be at least 1")
    budget = budget or DEFAULT_BUDGET
    size = algebra.carrier_size
    projections = tuple(
        FiniteFunction.projection(size, arity, i).table for i in range(1, arity + 1)
    )
    closed = _close_tables_dispatch(projections, algebra, size, arity, budget)
    return FunctionSet(size, size, arity, closed)


def clone_contains(
    container: Algebra, contained: Algebra, budget: Budget | None = None
) -> bool:
    """Whether every basic operation of `contained` is a term of `container`.

    Basic-operation containment is sound and complete for containment of
    the generated clones: terms of `contained` are compositions of its
    basic operations and projections, all of which then live in the
    container's clone.
    """
    if container.carrier_size != contained.carrier_size:
        raise InputError("clone containment needs a common carrier size")
    slices: dict[int, FunctionSet] = {}
    for _name, fn in contained.ops:
        if fn.arity not in slices:
            slices[fn.arity] = clone_slice(container, fn.arity, budget)
        if fn not in slices[fn.arity]:
            return False
    return True
