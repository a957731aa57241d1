"""Named verification suites with deterministic, machine-checkable reports.

Each suite replays one of the library's reference results at desk scale
and reports every check with its expected and actual value.  Reports are
byte-identical for identical suite id, parameters, and seed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .core import (
    Algebra,
    Budget,
    FiniteFunction,
    FunctionSet,
    InputError,
    MinorMap,
    apply_pointwise,
    is_polymorphism,
    minor,
    point_index,
    support_count,
)
from .closure import GeneratorFamily, bp_member, clonoid_slice
from .constructions import (
    all_ones_indicator,
    unit_pair,
    unit_vector_indicator,
    witness_family,
)
from .terms import blocker_tower_closed, classify_boolean, cube_term_blocker


def _bool_op(name: str, arity: int, bits: str) -> tuple[str, FiniteFunction]:
    return name, FiniteFunction(2, 2, arity, tuple(int(c) for c in bits))


def _algebra_label(algebra: Algebra) -> str:
    ops = " ".join(f"{name}/{fn.arity}" for name, fn in algebra.ops) or "no ops"
    return f"carrier {algebra.carrier_size}, {ops}"


XOR_WITH_CONSTANTS = Algebra(
    2, (_bool_op("add", 2, "0110"), _bool_op("zero", 1, "00"), _bool_op("one", 1, "11"))
)
MEET_ONLY = Algebra(2, (_bool_op("meet", 2, "0001"),))
NOT_ZERO = Algebra(2, (_bool_op("not", 1, "10"), _bool_op("zero", 1, "00")))
NIMPLIES_ONLY = Algebra(2, (_bool_op("nimplies", 2, "0010"),))
MAJORITY_ONLY = Algebra(2, (_bool_op("maj", 3, "00010111"),))
MINORITY_ONLY = Algebra(2, (_bool_op("xor3", 3, "01101001"),))


@dataclass(frozen=True)
class CheckResult:
    description: str
    expected: str
    actual: str
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    suite_id: str
    parameters: tuple[tuple[str, object], ...]
    checks: tuple[CheckResult, ...]
    overall: bool
    seed: int | None = None

    def render_text(self) -> str:
        lines = [f"suite {self.suite_id}"]
        if self.parameters:
            lines.append(
                "parameters: " + " ".join(f"{k}={v}" for k, v in self.parameters)
            )
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        for i, check in enumerate(self.checks, start=1):
            word = "PASS" if check.passed else "FAIL"
            lines.append(
                f"{i:4d} {word} {check.description}: "
                f"expected {check.expected}, actual {check.actual}"
            )
        passed = sum(1 for c in self.checks if c.passed)
        word = "PASS" if self.overall else "FAIL"
        lines.append(f"overall {word} ({passed}/{len(self.checks)})")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite_id,
            "parameters": {k: v for k, v in self.parameters},
            "seed": self.seed,
            "checks": [
                {
                    "description": c.description,
                    "expected": c.expected,
                    "actual": c.actual,
                    "pass": c.passed,
                }
                for c in self.checks
            ],
            "overall": self.overall,
        }


def _check(description: str, expected, actual) -> CheckResult:
    e, a = _token(expected), _token(actual)
    return CheckResult(description, e, a, e == a)


def _token(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _all_preserve(fs: FunctionSet, pair) -> bool:
    """Whether every member of the set is a polymorphism of the pair."""
    if len(fs) == 0 or not pair.p:
        return True
    k, m, size = fs.arity, pair.arity, fs.source_size
    choices = list(itertools.product(pair.p, repeat=k))
    idx = np.array(
        [
            [point_index(tuple(row[j] for row in choice), size) for j in range(m)]
            for choice in choices
        ],
        dtype=np.int64,
    )
    tables = np.array(fs.tables, dtype=np.int64)
    values = tables[:, idx]  # (members, choices, m)
    weights = np.array([pair.target_size ** (m - 1 - j) for j in range(m)], dtype=np.int64)
    codes = (values * weights).sum(axis=2)
    q_codes = np.array(
        sorted(point_index(t, pair.target_size) for t in pair.q), dtype=np.int64
    )
    return bool(np.isin(codes, q_codes).all())


def _subsets_of(window: tuple[int, ...]):
    for bits in range(1 << len(window)):
        yield tuple(window[i] for i in range(len(window)) if bits >> i & 1)


def _fmt_set(values) -> str:
    return "{" + ",".join(str(v) for v in values) + "}"


# --- suites ------------------------------------------------------------------


def _suite_lemma_4_1(params, budget):
    limit = int(params.pop("max", 5))
    source = int(params.pop("source_size", 2))
    target = int(params.pop("target_size", 2))
    checks = []
    for k in range(1, limit + 1):
        f = unit_vector_indicator(source, k)
        for n in range(1, limit + 1):
            pair = unit_pair(n, source, target)
            checks.append(
                _check(
                    f"unit indicator of arity {k} preserves the pair at arity {n}",
                    k != n,
                    is_polymorphism(f, pair),
                )
            )
    return [("max", limit), ("source_size", source), ("target_size", target)], None, checks


def _suite_lemma_3_2(params, budget):
    limit = int(params.pop("max", 4))
    if limit < 2:
        raise InputError("lemma-3.2 needs max at least 2")
    checks = []
    slices = {}  # index count j -> slice of the first j indicators at arity `limit`

    def family_of(count):
        return GeneratorFamily(
            2, 2, tuple(all_ones_indicator(2, i) for i in range(1, count + 1))
        )

    for k in range(2, limit + 1):
        fam = family_of(k - 1)
        slice_k = clonoid_slice(fam, XOR_WITH_CONSTANTS, k, budget)
        if k == limit:
            slices[k - 1] = slice_k
        e_k = all_ones_indicator(2, k)
        checks.append(
            _check(
                f"all-ones indicator of arity {k} escapes the chain below it",
                True,
                e_k not in slice_k,
            )
        )
        checks.append(
            _check(
                f"every arity-{k} member generated below has even support",
                True,
                all(support_count(g, 1) % 2 == 0 for g in slice_k),
            )
        )
        checks.append(
            _check(
                f"all-ones indicator of arity {k} has support of size 1",
                1,
                support_count(e_k, 1),
            )
        )
    for j in range(1, limit + 1):
        if j not in slices:
            slices[j] = clonoid_slice(family_of(j), XOR_WITH_CONSTANTS, limit, budget)
    for j in range(1, limit):
        lower, upper = slices[j], slices[j + 1]
        checks.append(
            _check(
                f"arity-{limit} slice of the first {j} indicators is strictly below the first {j + 1}",
                True,
                lower.table_set < upper.table_set,
            )
        )
    return [("max", limit)], None, checks


def _membership_grid(algebra: Algebra, low: int, high: int, budget) -> list[CheckResult]:
    window = tuple(range(low, high + 1))
    checks = []
    for u in _subsets_of(window):
        family, _pairs = witness_family(u, 2, 2)
        for n in window:
            f_n = unit_vector_indicator(2, n)
            actual = f_n in clonoid_slice(family, algebra, n, budget)
            checks.append(
                _check(
                    f"unit indicator of arity {n} generated by U={_fmt_set(u)}",
                    n in u,
                    actual,
                )
            )
    return checks


def _suite_eq_4_1(params, budget):
    low = int(params.pop("window_low", 2))
    high = int(params.pop("window_high", 4))
    algebra = params.pop("algebra", MEET_ONLY)
    checks = _membership_grid(algebra, low, high, budget)
    return (
        [("algebra", _algebra_label(algebra)), ("window_low", low), ("window_high", high)],
        None,
        checks,
    )


def _suite_lemma_4_4(params, budget):
    low = int(params.pop("window_low", 2))
    high = int(params.pop("window_high", 4))
    checks = _membership_grid(NOT_ZERO, low, high, budget)
    return (
        [("algebra", _algebra_label(NOT_ZERO)), ("window_low", low), ("window_high", high)],
        None,
        checks,
    )


def _suite_lemma_4_5(params, budget):
    max_index = int(params.pop("max_index", 3))
    max_arity = int(params.pop("max_arity", 4))
    window = tuple(range(2, max_index + 1))
    checks = []
    for u in _subsets_of(window):
        family, _pairs = witness_family(u, 2, 2)
        slices = {
            n: clonoid_slice(family, NIMPLIES_ONLY, n, budget)
            for n in range(1, max_arity + 1)
        }
        for n in range(1, max_arity + 1):
            for m in range(1, max_arity + 1):
                if m in u:
                    continue
                checks.append(
                    _check(
                        f"U={_fmt_set(u)}: all {len(slices[n])} arity-{n} members preserve the pair at arity {m}",
                        True,
                        _all_preserve(slices[n], unit_pair(m, 2, 2)),
                    )
                )
        for n in u:
            f_n = unit_vector_indicator(2, n)
            checks.append(
                _check(
                    f"U={_fmt_set(u)}: unit indicator of arity {n} is in its own slice",
                    True,
                    f_n in slices[n],
                )
            )
            checks.append(
                _check(
                    f"U={_fmt_set(u)}: unit indicator of arity {n} fails the pair at arity {n}",
                    False,
                    is_polymorphism(f_n, unit_pair(n, 2, 2)),
                )
            )
    return [("max_index", max_index), ("max_arity", max_arity)], None, checks


def _suite_thm_2_1(params, budget):
    families = int(params.pop("families", 50))
    seed = int(params.pop("seed", 0))
    rng = random.Random(seed)
    maj = MAJORITY_ONLY.op_named("maj")
    checks = []
    instances = 0

    def random_minor(g):
        ell = rng.randint(1, 4)
        images = tuple(rng.randint(1, ell) for _ in range(g.arity))
        return minor(g, MinorMap(g.arity, ell, images))

    for fam_index in range(families):
        count = rng.randint(1, 2)
        gens = []
        for _ in range(count):
            arity = rng.randint(1, 3)
            table = tuple(rng.randrange(2) for _ in range(2**arity))
            gens.append(FiniteFunction(2, 2, arity, table))
        family = GeneratorFamily(2, 2, tuple(gens))
        slices = {
            a: clonoid_slice(family, MAJORITY_ONLY, a, budget) for a in range(1, 5)
        }
        tests = list(gens)
        for _ in range(2):
            tests.append(random_minor(gens[rng.randrange(len(gens))]))
        picks = [random_minor(gens[rng.randrange(len(gens))]) for _ in range(3)]
        aligned = max(p.arity for p in picks)
        padded = [
            minor(p, MinorMap(p.arity, aligned, tuple(range(1, p.arity + 1))))
            for p in picks
        ]
        tests.append(apply_pointwise(maj, padded))
        for _ in range(2):
            arity = rng.randint(1, 4)
            tests.append(
                FiniteFunction(2, 2, arity, tuple(rng.randrange(2) for _ in range(2**arity)))
            )
        for test_index, f in enumerate(tests):
            direct = f in slices[f.arity]
            through_minors = bp_member(f, slices[4], 3)
            instances += 1
            checks.append(
                _check(
                    f"family {fam_index} test {test_index} (arity {f.arity}): "
                    "direct membership agrees with the fixed-arity route",
                    direct,
                    through_minors,
                )
            )
    checks.append(
        _check(
            f"exercised {instances} instances, at least two per family",
            True,
            instances >= 2 * families,
        )
    )
    return [("families", families)], seed, checks


def _suite_thm_1_4_table(params, budget):
    nu_cap = int(params.pop("nu_cap", 5))
    table = [
        (MAJORITY_ONLY, "finite"),
        (MINORITY_ONLY, "countably_infinite"),
        (XOR_WITH_CONSTANTS, "countably_infinite"),
        (MEET_ONLY, "continuum"),
        (
            Algebra(
                2,
                (_bool_op("meet", 2, "0001"), _bool_op("zero", 1, "00"), _bool_op("one", 1, "11")),
            ),
            "continuum",
        ),
        (NOT_ZERO, "continuum"),
        (NIMPLIES_ONLY, "continuum"),
        (Algebra(2, ()), "continuum"),
    ]
    checks = []
    for algebra, expected in table:
        report = classify_boolean(algebra, nu_cap=nu_cap, budget=budget)
        checks.append(
            _check(f"classification of ({_algebra_label(algebra)})", expected, report.verdict)
        )
    return [("nu_cap", nu_cap)], None, checks


def _suite_blocker_table(params, budget):
    max_tower = int(params.pop("max_tower", 4))
    table = [
        (MEET_ONLY, (0,)),
        (MINORITY_ONLY, None),
        (MAJORITY_ONLY, None),
    ]
    checks = []
    for algebra, expected in table:
        found = cube_term_blocker(algebra)
        checks.append(
            _check(
                f"blocker of ({_algebra_label(algebra)})",
                "none" if expected is None else _fmt_set(expected),
                "none" if found is None else _fmt_set(found),
            )
        )
        if found is not None:
            for n in range(1, max_tower + 1):
                checks.append(
                    _check(
                        f"({_algebra_label(algebra)}): blocked {n}-tuples form a subuniverse",
                        True,
                        blocker_tower_closed(algebra, found, n),
                    )
                )
    return [("max_tower", max_tower)], None, checks


def _suite_separation(params, budget):
    max_index = int(params.pop("max_index", 3))
    window = tuple(range(2, max_index + 1))
    targets = [MEET_ONLY, NOT_ZERO, NIMPLIES_ONLY]
    checks = []
    subsets = list(_subsets_of(window))
    for algebra in targets:
        for u, v in itertools.combinations(subsets, 2):
            diff = sorted(set(u) ^ set(v))
            n = diff[0]
            big, small = (u, v) if n in u else (v, u)
            fam_big, _ = witness_family(big, 2, 2)
            fam_small, _ = witness_family(small, 2, 2)
            f_n = unit_vector_indicator(2, n)
            pair_n = unit_pair(n, 2, 2)
            label = f"{_algebra_label(algebra)}, U={_fmt_set(u)} vs V={_fmt_set(v)}"
            checks.append(
                _check(
                    f"{label}: witness of arity {n} generated by the side containing it",
                    True,
                    f_n in clonoid_slice(fam_big, algebra, n, budget),
                )
            )
            checks.append(
                _check(
                    f"{label}: witness of arity {n} absent from the other side",
                    False,
                    f_n in clonoid_slice(fam_small, algebra, n, budget),
                )
            )
            checks.append(
                _check(
                    f"{label}: witness of arity {n} fails its own relation pair",
                    False,
                    is_polymorphism(f_n, pair_n),
                )
            )
    return [("max_index", max_index)], None, checks


_SUITES = {
    "lemma-4.1": _suite_lemma_4_1,
    "lemma-3.2": _suite_lemma_3_2,
    "eq-4.1": _suite_eq_4_1,
    "lemma-4.4": _suite_lemma_4_4,
    "lemma-4.5": _suite_lemma_4_5,
    "thm-2.1": _suite_thm_2_1,
    "thm-1.4-table": _suite_thm_1_4_table,
    "blocker-table": _suite_blocker_table,
    "separation": _suite_separation,
}

SUITE_IDS = tuple(_SUITES)


def run_verification(
    suite_id: str, parameters: dict | None = None, budget: Budget | None = None
) -> VerificationReport:
    """Run a named suite and return its full report."""
    if suite_id not in _SUITES:
        known = ", ".join(SUITE_IDS)
        raise InputError(f"unknown suite {suite_id!r}; known suites: {known}")
    params = dict(parameters or {})
    echo, seed, checks = _SUITES[suite_id](params, budget)
    if params:
        extra = ", ".join(sorted(params))
        raise InputError(f"suite {suite_id!r} does not accept parameters: {extra}")
    overall = all(c.passed for c in checks)
    return VerificationReport(suite_id, tuple(echo), tuple(checks), overall, seed)
