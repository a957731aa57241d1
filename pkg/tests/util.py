"""Shared builders for the test suite."""

from clonoids import Algebra, FiniteFunction


def bool_fn(bits: str, arity: int) -> FiniteFunction:
    return FiniteFunction(2, 2, arity, tuple(int(c) for c in bits))


def bool_algebra(*ops: tuple[str, int, str]) -> Algebra:
    return Algebra(2, tuple((name, bool_fn(bits, arity)) for name, arity, bits in ops))


MEET = bool_algebra(("meet", 2, "0001"))
MEET_01 = bool_algebra(("meet", 2, "0001"), ("zero", 1, "00"), ("one", 1, "11"))
XOR_01 = bool_algebra(("add", 2, "0110"), ("zero", 1, "00"), ("one", 1, "11"))
MAJ = bool_algebra(("maj", 3, "00010111"))
XOR3 = bool_algebra(("xor3", 3, "01101001"))
NOT_0 = bool_algebra(("not", 1, "10"), ("zero", 1, "00"))
NIMPLIES = bool_algebra(("nimplies", 2, "0010"))
