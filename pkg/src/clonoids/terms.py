"""Term-condition detectors and the exact classifier for Boolean targets.

Detection is by slice filtering: the ternary (or n-ary) term operations
of an algebra are generated exactly, then screened against the defining
identities.  An empty filter result is therefore a proof of absence, not
a failed search, except for near-unanimity terms of unbounded arity where
only a capped search is possible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    Algebra,
    Budget,
    BudgetExceededError,
    FiniteFunction,
    FunctionSet,
    InputError,
    iter_points,
    point_index,
)
from .closure import clone_contains, clone_slice

VERDICT_FINITE = "finite"
VERDICT_COUNTABLE = "countably_infinite"
VERDICT_CONTINUUM = "continuum"


def nu_identities_hold(table: tuple[int, ...], carrier: int, arity: int) -> bool:
    """Check f(y,x,...,x) = ... = f(x,...,x,y) = x over the whole carrier."""
    for x in range(carrier):
        for y in range(carrier):
            for j in range(arity):
                point = [x] * arity
                point[j] = y
                if table[point_index(point, carrier)] != x:
                    return False
    return True


def malcev_identities_hold(table: tuple[int, ...], carrier: int) -> bool:
    """Check f(y,y,x) = f(x,y,y) = x over the whole carrier."""
    for x in range(carrier):
        for y in range(carrier):
            if table[point_index((y, y, x), carrier)] != x:
                return False
            if table[point_index((x, y, y), carrier)] != x:
                return False
    return True


def malcev_terms(algebra: Algebra, budget: Budget | None = None) -> FunctionSet:
    """All ternary term operations satisfying the Mal'cev identities.

    Empty means none exist: any Mal'cev term has a ternary table, so the
    ternary slice is a complete search space.
    """
    ternary = clone_slice(algebra, 3, budget)
    kept = tuple(
        t for t in ternary.tables if malcev_identities_hold(t, algebra.carrier_size)
    )
    return FunctionSet(algebra.carrier_size, algebra.carrier_size, 3, kept)


def majority_terms(algebra: Algebra, budget: Budget | None = None) -> FunctionSet:
    """All ternary term operations satisfying the ternary near-unanimity identities."""
    ternary = clone_slice(algebra, 3, budget)
    kept = tuple(
        t for t in ternary.tables if nu_identities_hold(t, algebra.carrier_size, 3)
    )
    return FunctionSet(algebra.carrier_size, algebra.carrier_size, 3, kept)


def nu_terms(algebra: Algebra, arity: int, budget: Budget | None = None) -> FunctionSet:
    """All arity-ary term operations satisfying the near-unanimity identities.

    A budget error here means "unknown at this arity", which callers must
    keep distinct from an exact empty result.
    """
    if arity < 3:
        raise InputError("near-unanimity terms have arity at least 3")
    terms = clone_slice(algebra, arity, budget)
    kept = tuple(
        t for t in terms.tables if nu_identities_hold(t, algebra.carrier_size, arity)
    )
    return FunctionSet(algebra.carrier_size, algebra.carrier_size, arity, kept)


def is_idempotent(algebra: Algebra) -> bool:
    """Whether every basic operation fixes every constant tuple."""
    for _name, fn in algebra.ops:
        for x in range(algebra.carrier_size):
            if fn.table[point_index((x,) * fn.arity, algebra.carrier_size)] != x:
                return False
    return True


def _absorbing_coordinate(fn: FiniteFunction, v: frozenset) -> bool:
    size = fn.source_size
    for i in range(fn.arity):
        ok = True
        for point in iter_points(size, fn.arity):
            if point[i] in v and fn.table[point_index(point, size)] not in v:
                ok = False
                break
        if ok:
            return True
    return False


def cube_term_blocker(algebra: Algebra) -> tuple[int, ...] | None:
    """First subset V whose membership at some coordinate forces values into V.

    Candidates are the nonempty proper subsets of the carrier, ordered by
    size and then lexicographically, which prefers subsets containing 0.
    A returned V makes B^n minus (B without V)^n a subuniverse for every
    n: the coordinate property survives projections and composition, so
    it extends from the basic operations to all term operations.
    """
    size = algebra.carrier_size
    for card in range(1, size):
        for combo in itertools.combinations(range(size), card):
            v = frozenset(combo)
            if all(_absorbing_coordinate(fn, v) for _name, fn in algebra.ops):
                return combo
    return None


def blocked_tuples(carrier_size: int, v: tuple[int, ...], n: int) -> tuple[tuple[int, ...], ...]:
    """All n-tuples over the carrier with at least one coordinate in V."""
    vs = set(v)
    return tuple(p for p in iter_points(carrier_size, n) if any(x in vs for x in p))


def blocker_tower_closed(algebra: Algebra, v: tuple[int, ...], n: int) -> bool:
    """Direct enumeration check that the blocked n-tuples form a subuniverse."""
    tower = blocked_tuples(algebra.carrier_size, v, n)
    tower_set = set(tower)
    size = algebra.carrier_size
    for _name, fn in algebra.ops:
        for combo in itertools.product(tower, repeat=fn.arity):
            image = tuple(
                fn.table[point_index(tuple(row[j] for row in combo), size)]
                for j in range(n)
            )
            if image not in tower_set:
                return False
    return True


def _boolean_op(name: str, arity: int, bits: str) -> tuple[str, FiniteFunction]:
    table = tuple(int(c) for c in bits)
    return name, FiniteFunction(2, 2, arity, table)


def _maximal_clone_algebras() -> dict[str, Algebra]:
    meet = _boolean_op("meet", 2, "0001")
    join = _boolean_op("join", 2, "0111")
    neg = _boolean_op("not", 1, "10")
    zero = _boolean_op("zero", 1, "00")
    one = _boolean_op("one", 1, "11")
    implies = _boolean_op("implies", 2, "1101")
    nimplies = _boolean_op("nimplies", 2, "0010")
    return {
        "meet-01": Algebra(2, (meet, zero, one)),
        "join-01": Algebra(2, (join, zero, one)),
        "not-0": Algebra(2, (neg, zero)),
        "implies": Algebra(2, (implies,)),
        "not-implies": Algebra(2, (nimplies,)),
    }


#: The five maximal Boolean clones without a near-unanimity or Mal'cev term,
#: each given by a concrete generating algebra.  Containment is decided by
#: slice membership of basic operations, never by relational descriptions.
MAXIMAL_CLONES = _maximal_clone_algebras()


@dataclass(frozen=True)
class ClassificationReport:
    """Trichotomy verdict for a Boolean target algebra, with witnesses."""

    verdict: str
    witness_majority: FiniteFunction | None = None
    witness_malcev: FiniteFunction | None = None
    witness_nu: tuple[int, FiniteFunction] | None = None
    nu_beyond_search_cap: bool = False
    containing_maximal_clone: str | None = None
    blocker: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.verdict not in (VERDICT_FINITE, VERDICT_COUNTABLE, VERDICT_CONTINUUM):
            raise InputError(f"unknown verdict {self.verdict!r}")
        if self.verdict == VERDICT_FINITE:
            if self.witness_nu is None and not self.nu_beyond_search_cap:
                raise InputError("finite verdict needs an NU witness or the beyond-cap marker")
        if self.verdict == VERDICT_COUNTABLE:
            if self.witness_malcev is None or self.witness_majority is not None:
                raise InputError(
                    "countably infinite verdict needs a Mal'cev witness and no majority witness"
                )
        if self.verdict == VERDICT_CONTINUUM and self.containing_maximal_clone is None:
            raise InputError("continuum verdict needs a containing maximal clone")


def classify_boolean(
    algebra: Algebra, nu_cap: int = 5, budget: Budget | None = None
) -> ClassificationReport:
    """Exact cardinality trichotomy for clonoids into a two-element algebra.

    Majority term: finitely many.  Otherwise a Mal'cev term: countably
    many.  Otherwise containment in one of the five maximal clones:
    continuum many.  If none of those hold the clone must have a
    near-unanimity term of some higher arity and Mal'cev was excluded, so
    the verdict is finite, with the witness searched up to nu_cap.

    A cube term blocker is attached to every report; for idempotent
    algebras its presence is cross-checked against the verdict.
    """
    if algebra.carrier_size != 2:
        raise InputError("classification is implemented for two-element carriers only")
    blocker = cube_term_blocker(algebra)

    def finish(report: ClassificationReport) -> ClassificationReport:
        if is_idempotent(algebra):
            expected = report.verdict == VERDICT_CONTINUUM
            if (blocker is not None) != expected:
                raise RuntimeError(
                    "idempotent cross-check failed: blocker presence disagrees with verdict"
                )
        return report

    majority = majority_terms(algebra, budget)
    if len(majority):
        witness = majority.functions()[0]
        return finish(
            ClassificationReport(
                VERDICT_FINITE,
                witness_majority=witness,
                witness_nu=(3, witness),
                blocker=blocker,
            )
        )
    malcev = malcev_terms(algebra, budget)
    if len(malcev):
        return finish(
            ClassificationReport(
                VERDICT_COUNTABLE,
                witness_malcev=malcev.functions()[0],
                blocker=blocker,
            )
        )
    for clone_id, generator_algebra in MAXIMAL_CLONES.items():
        if clone_contains(generator_algebra, algebra, budget):
            return finish(
                ClassificationReport(
                    VERDICT_CONTINUUM,
                    containing_maximal_clone=clone_id,
                    blocker=blocker,
                )
            )
    # Majority is the only ternary near-unanimity table on two elements and
    # it is absent, so the witness search starts at arity 4.
    witness_nu = None
    for arity in range(4, nu_cap + 1):
        try:
            found = nu_terms(algebra, arity, budget)
        except BudgetExceededError:
            continue  # unknown at this arity; keep searching upward
        if len(found):
            witness_nu = (arity, found.functions()[0])
            break
    capped = witness_nu is None
    return finish(
        ClassificationReport(
            VERDICT_FINITE,
            witness_nu=witness_nu,
            nu_beyond_search_cap=capped,
            blocker=blocker,
        )
    )
