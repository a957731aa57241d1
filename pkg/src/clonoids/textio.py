"""Line-oriented text interchange for algebras, functions, and relation pairs.

Three artifact kinds share one reader:

    carrier 2            # algebra: carrier then one op line per operation
    op meet 2 0001

    fn e2 source 2 target 2 arity 2 table 0001     # one or more fn lines

    pair n 2 source 2 target 2                     # one or more pair blocks
    P 10 01
    Q 00 01 10

'#' starts a comment.  Value tables and relation tuples are contiguous
digit strings while the relevant alphabet has at most 10 elements; larger
carriers switch to whitespace-separated decimals for tables and
comma-separated decimals for tuples.  Formatting is canonical: tables in
row-major order, relation tuples sorted, operations in declaration order.
"""

from __future__ import annotations

import re

from .core import Algebra, FiniteFunction, FunctionSet, InputError, RelationPair


class _Token:
    __slots__ = ("text", "line", "column")

    def __init__(self, text: str, line: int, column: int):
        self.text = text
        self.line = line
        self.column = column


def _fail(token: _Token, message: str):
    raise InputError(f"line {token.line}, column {token.column}: {message}")


def _tokenize(text: str) -> list[list[_Token]]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [
            _Token(m.group(), lineno, m.start() + 1) for m in re.finditer(r"\S+", line)
        ]
        if tokens:
            rows.append(tokens)
    return rows


def _int_token(token: _Token, what: str) -> int:
    try:
        return int(token.text)
    except ValueError:
        _fail(token, f"expected {what}, got {token.text!r}")


def _parse_table(tokens: list[_Token], start: int, alphabet: int, expected_len: int) -> tuple[int, ...]:
    head = tokens[start]
    if alphabet <= 10:
        if start != len(tokens) - 1:
            _fail(tokens[start + 1], "unexpected token after digit table")
        values = []
        for i, c in enumerate(head.text):
            if not c.isdigit():
                _fail(head, f"table contains non-digit {c!r}")
            values.append(int(c))
    else:
        values = [_int_token(t, "a table entry") for t in tokens[start:]]
    if len(values) != expected_len:
        _fail(head, f"table has {len(values)} entries, expected {expected_len}")
    for v in values:
        if v >= alphabet:
            _fail(head, f"table entry {v} outside 0..{alphabet - 1}")
    return tuple(values)


def _parse_tuple(token: _Token, alphabet: int, arity: int) -> tuple[int, ...]:
    if alphabet <= 10:
        values = []
        for c in token.text:
            if not c.isdigit():
                _fail(token, f"tuple contains non-digit {c!r}")
            values.append(int(c))
    else:
        try:
            values = [int(p) for p in token.text.split(",")]
        except ValueError:
            _fail(token, f"expected a comma-separated tuple, got {token.text!r}")
    if len(values) != arity:
        _fail(token, f"tuple has {len(values)} entries, expected {arity}")
    for v in values:
        if v >= alphabet or v < 0:
            _fail(token, f"tuple entry {v} outside 0..{alphabet - 1}")
    return tuple(values)


def _expect_keyword(tokens: list[_Token], index: int, keyword: str):
    if index >= len(tokens):
        _fail(tokens[-1], f"expected {keyword!r} before end of line")
    if tokens[index].text != keyword:
        _fail(tokens[index], f"expected {keyword!r}, got {tokens[index].text!r}")


def _parse_algebra(rows: list[list[_Token]]) -> Algebra:
    head = rows[0]
    if len(head) != 2:
        _fail(head[0], "carrier line must read: carrier <size>")
    size = _int_token(head[1], "a carrier size")
    ops = []
    for row in rows[1:]:
        if row[0].text != "op":
            _fail(row[0], f"expected 'op', got {row[0].text!r}")
        if len(row) < 4:
            _fail(row[0], "op line must read: op <name> <arity> <table>")
        name = row[1].text
        arity = _int_token(row[2], "an arity")
        if arity < 1:
            _fail(row[2], "operation arity must be at least 1")
        table = _parse_table(row, 3, size, size**arity)
        ops.append((name, FiniteFunction(size, size, arity, table)))
    try:
        return Algebra(size, tuple(ops))
    except InputError as exc:
        _fail(head[0], str(exc))


def _parse_functions(rows: list[list[_Token]]):
    fns = []
    for row in rows:
        if row[0].text != "fn":
            _fail(row[0], f"expected 'fn', got {row[0].text!r}")
        if len(row) < 10:
            _fail(row[0], "fn line must read: fn <name> source <s> target <t> arity <k> table <table>")
        _expect_keyword(row, 2, "source")
        source = _int_token(row[3], "a source size")
        _expect_keyword(row, 4, "target")
        target = _int_token(row[5], "a target size")
        _expect_keyword(row, 6, "arity")
        arity = _int_token(row[7], "an arity")
        if arity < 1:
            _fail(row[7], "arity must be at least 1")
        _expect_keyword(row, 8, "table")
        table = _parse_table(row, 9, target, source**arity)
        fns.append(FiniteFunction(source, target, arity, table))
    return fns[0] if len(fns) == 1 else fns


def _parse_pairs(rows: list[list[_Token]]) -> list[RelationPair]:
    pairs = []
    current = None

    def flush():
        if current is not None:
            arity, source, target, p, q, head = current
            try:
                pairs.append(RelationPair(arity, source, target, tuple(p), tuple(q)))
            except InputError as exc:
                _fail(head, str(exc))

    for row in rows:
        word = row[0].text
        if word == "pair":
            flush()
            if len(row) != 7:
                _fail(row[0], "pair line must read: pair n <m> source <s> target <t>")
            _expect_keyword(row, 1, "n")
            arity = _int_token(row[2], "a relation arity")
            _expect_keyword(row, 3, "source")
            source = _int_token(row[4], "a source size")
            _expect_keyword(row, 5, "target")
            target = _int_token(row[6], "a target size")
            current = (arity, source, target, [], [], row[0])
        elif word in ("P", "Q"):
            if current is None:
                _fail(row[0], f"{word} line before any pair line")
            arity, source, target, p, q, _head = current
            alphabet = source if word == "P" else target
            bucket = p if word == "P" else q
            for token in row[1:]:
                bucket.append(_parse_tuple(token, alphabet, arity))
        else:
            _fail(row[0], f"expected 'pair', 'P', or 'Q', got {word!r}")
    flush()
    return pairs


def parse_artifact(text: str):
    """Parse an algebra, one or more functions, or a list of relation pairs."""
    rows = _tokenize(text)
    if not rows:
        raise InputError("line 1, column 1: empty input")
    kind = rows[0][0].text
    if kind == "carrier":
        return _parse_algebra(rows)
    if kind == "fn":
        return _parse_functions(rows)
    if kind == "pair":
        return _parse_pairs(rows)
    _fail(rows[0][0], f"expected 'carrier', 'fn', or 'pair', got {kind!r}")


def _format_table(table: tuple[int, ...], alphabet: int) -> str:
    if alphabet <= 10:
        return "".join(str(v) for v in table)
    return " ".join(str(v) for v in table)


def _format_tuple(values: tuple[int, ...], alphabet: int) -> str:
    if alphabet <= 10:
        return "".join(str(v) for v in values)
    return ",".join(str(v) for v in values)


def _format_fn(fn: FiniteFunction, name: str) -> str:
    return (
        f"fn {name} source {fn.source_size} target {fn.target_size} "
        f"arity {fn.arity} table {_format_table(fn.table, fn.target_size)}"
    )


def format_artifact(value) -> str:
    """Canonical text form; parse(format(v)) returns v for parseable kinds."""
    if isinstance(value, Algebra):
        lines = [f"carrier {value.carrier_size}"]
        for name, fn in value.ops:
            lines.append(
                f"op {name} {fn.arity} {_format_table(fn.table, value.carrier_size)}"
            )
        return "\n".join(lines) + "\n"
    if isinstance(value, FiniteFunction):
        return _format_fn(value, "f") + "\n"
    if isinstance(value, FunctionSet):
        lines = [_format_fn(fn, f"g{i}") for i, fn in enumerate(value)]
        return "\n".join(lines) + ("\n" if lines else "")
    if isinstance(value, RelationPair):
        value = [value]
    if isinstance(value, (list, tuple)):
        if all(isinstance(v, FiniteFunction) for v in value):
            lines = [_format_fn(fn, f"g{i}") for i, fn in enumerate(value)]
            return "\n".join(lines) + ("\n" if lines else "")
        if all(isinstance(v, RelationPair) for v in value):
            lines = []
            for pair in value:
                lines.append(
                    f"pair n {pair.arity} source {pair.source_size} target {pair.target_size}"
                )
                if pair.p:
                    lines.append(
                        "P " + " ".join(_format_tuple(t, pair.source_size) for t in pair.p)
                    )
                if pair.q:
                    lines.append(
                        "Q " + " ".join(_format_tuple(t, pair.target_size) for t in pair.q)
                    )
            return "\n".join(lines) + ("\n" if lines else "")
    raise InputError(f"cannot format a value of type {type(value).__name__}")
