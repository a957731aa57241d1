import itertools
import random

import pytest

from clonoids import (
    Algebra,
    FiniteFunction,
    InputError,
    MAXIMAL_CLONES,
    blocker_tower_closed,
    classify_boolean,
    cube_term_blocker,
    dualize_algebra,
    is_idempotent,
    majority_terms,
    malcev_terms,
    nu_terms,
)
from clonoids.terms import nu_identities_hold, malcev_identities_hold

from util import bool_algebra, bool_fn, MAJ, MEET, MEET_01, NIMPLIES, NOT_0, XOR3, XOR_01


def test_malcev_terms():
    assert bool_fn("01101001", 3) in malcev_terms(XOR3)
    assert len(malcev_terms(MEET)) == 0
    assert len(malcev_terms(MAJ)) == 0


def test_majority_terms():
    assert bool_fn("00010111", 3) in majority_terms(MAJ)
    assert len(majority_terms(XOR_01)) == 0
    assert len(majority_terms(MEET_01)) == 0


def test_only_ternary_nu_table_on_two_elements_is_majority():
    nu_tables = [
        t for t in itertools.product((0, 1), repeat=8) if nu_identities_hold(t, 2, 3)
    ]
    assert nu_tables == [tuple(int(c) for c in "00010111")]


def test_nu_terms():
    assert len(nu_terms(MAJ, 3)) == 1
    for arity in (3, 4, 5):
        assert len(nu_terms(MEET_01, arity)) == 0
    with pytest.raises(InputError):
        nu_terms(MAJ, 2)


def test_detected_witnesses_satisfy_their_identities():
    for algebra in (MAJ, XOR3, XOR_01, MEET_01):
        for f in malcev_terms(algebra):
            assert malcev_identities_hold(f.table, 2)
        for f in majority_terms(algebra):
            assert nu_identities_hold(f.table, 2, 3)


def test_is_idempotent():
    assert is_idempotent(MAJ)
    assert not is_idempotent(bool_algebra(("zero", 1, "00")))
    assert not is_idempotent(bool_algebra(("not", 1, "10")))


def test_cube_term_blocker_table():
    assert cube_term_blocker(MEET) == (0,)
    assert cube_term_blocker(XOR3) is None
    assert cube_term_blocker(MAJ) is None
    assert cube_term_blocker(Algebra(2, ())) == (0,)


def test_blocker_tower_closed():
    for n in range(1, 5):
        assert blocker_tower_closed(MEET, (0,), n)
    # {1} fails at n=2: the meet of (0,1) and (1,0) has no coordinate in {1}
    assert not blocker_tower_closed(MEET, (1,), 2)


def test_blocker_prefers_zero_side():
    join = bool_algebra(("join", 2, "0111"))
    assert cube_term_blocker(join) == (1,)
    assert cube_term_blocker(MEET) == (0,)


def test_classification_table():
    meet01 = MEET_01
    rows = [
        (MAJ, "finite"),
        (XOR3, "countably_infinite"),
        (XOR_01, "countably_infinite"),
        (MEET, "continuum"),
        (meet01, "continuum"),
        (NOT_0, "continuum"),
        (NIMPLIES, "continuum"),
        (Algebra(2, ()), "continuum"),
    ]
    for algebra, expected in rows:
        assert classify_boolean(algebra).verdict == expected


def test_classification_witnesses():
    finite = classify_boolean(MAJ)
    assert finite.witness_majority is not None
    assert finite.witness_nu == (3, finite.witness_majority)
    countable = classify_boolean(XOR_01)
    assert countable.witness_malcev is not None
    assert countable.witness_majority is None
    continuum = classify_boolean(MEET)
    assert continuum.containing_maximal_clone == "meet-01"
    assert continuum.blocker == (0,)


def test_classification_near_unanimity_beyond_arity_three():
    threshold = FiniteFunction.from_callable(
        2, 2, 4, lambda a, b, c, d: 1 if a + b + c + d >= 3 else 0
    )
    report = classify_boolean(Algebra(2, (("thr", threshold),)))
    assert report.verdict == "finite"
    assert report.witness_majority is None
    assert report.witness_nu is not None and report.witness_nu[0] == 4
    assert not report.nu_beyond_search_cap


def test_classification_rejects_larger_carriers():
    with pytest.raises(InputError):
        classify_boolean(Algebra(3, ()))


def test_classifier_totality_and_duality():
    rng = random.Random(9)
    seen = set()
    for _ in range(60):
        ops = []
        for i in range(rng.randint(0, 2)):
            a = rng.randint(1, 3)
            table = tuple(rng.randrange(2) for _ in range(2**a))
            ops.append((f"op{i}", FiniteFunction(2, 2, a, table)))
        algebra = Algebra(2, tuple(ops))
        report = classify_boolean(algebra)
        assert report.verdict in ("finite", "countably_infinite", "continuum")
        dual = classify_boolean(dualize_algebra(algebra))
        assert dual.verdict == report.verdict
        seen.add(report.verdict)
    assert "continuum" in seen


def test_idempotent_cross_check_runs_clean():
    # classify_boolean raises internally if the blocker check ever disagrees
    # with the verdict on an idempotent algebra; sweep all one-op idempotent
    # binary algebras to exercise it
    for table in itertools.product((0, 1), repeat=4):
        if table[0] != 0 or table[3] != 1:
            continue
        algebra = Algebra(2, (("op", FiniteFunction(2, 2, 2, table)),))
        report = classify_boolean(algebra)
        if report.verdict == "continuum":
            assert report.blocker is not None
        else:
            assert report.blocker is None


def test_maximal_clone_identifiers():
    assert set(MAXIMAL_CLONES) == {"meet-01", "join-01", "not-0", "implies", "not-implies"}
