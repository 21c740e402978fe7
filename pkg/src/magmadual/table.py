"""Cayley tables of binary operations on {0, ..., n-1}.

A table is stored row-major: ``entries[i * n + j]`` is the product ``i z j``.
The OpCode of a table reads the entries as base-n digits with entry (0, 0)
most significant, so numeric code order coincides with lexicographic table
order.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    CodeOverflowError,
    OrderError,
    ParseError,
    RangeError,
    ShapeError,
)

CODE_BITS = 64


class UnknownLabelError(ParseError, RangeError):
    """A table row uses a symbol that is not one of the declared labels."""


def code_space(n: int) -> int:
    """Number of binary operations on an n-element set, ``n ** (n*n)``."""
    _check_order(n)
    return n ** (n * n)


def has_codes(n: int) -> bool:
    """True when every table of order ``n`` has a 64-bit OpCode."""
    return code_space(n) <= 2**CODE_BITS


def _check_order(n):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise OrderError(f"order must be a positive integer, got {n!r}")


def _check_element(n, x, what="element"):
    if not isinstance(x, (int, np.integer)) or isinstance(x, bool) or not 0 <= x < n:
        raise RangeError(f"{what} {x!r} outside [0, {n})")


class OpCode(NamedTuple):
    """Canonical integer encoding of a table of order ``n``."""

    n: int
    code: int

    def table(self) -> "CayleyTable":
        return decode_op(self)


@dataclass(frozen=True, order=True)
class CayleyTable:
    n: int
    entries: tuple

    def __post_init__(self):
        _check_order(self.n)
        if len(self.entries) != self.n * self.n:
            raise ShapeError(f"expected {self.n * self.n} entries, got {len(self.entries)}")
        for x in self.entries:
            _check_element(self.n, x, "entry")
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))

    @classmethod
    def _trusted(cls, n: int, entries: tuple) -> "CayleyTable":
        # skips validation; callers guarantee n*n ints in range
        t = object.__new__(cls)
        object.__setattr__(t, "n", n)
        object.__setattr__(t, "entries", entries)
        return t

    @classmethod
    def from_rows(cls, rows) -> "CayleyTable":
        rows = [list(r) for r in rows]
        return make_table(len(rows), rows)

    def __call__(self, a, b):
        return self.entries[a * self.n + b]

    def rows(self) -> list[list[int]]:
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    @property
    def code(self) -> int:
        return encode_op(self).code

    @property
    def opcode(self) -> OpCode:
        return encode_op(self)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=np.int64).reshape(self.n, self.n)

    def __repr__(self):
        body = " / ".join(" ".join(map(str, r)) for r in self.rows())
        return f"CayleyTable(n={self.n}, [{body}])"


def make_table(n: int, rows: Sequence[Sequence[int]]) -> CayleyTable:
    """Build a table from ``n`` rows of ``n`` elements each."""
    _check_order(n)
    if len(rows) != n:
        raise ShapeError(f"expected {n} rows, got {len(rows)}")
    flat = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ShapeError(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            _check_element(n, x, "entry")
            flat.append(int(x))
    return CayleyTable(n, tuple(flat))


def apply(t: CayleyTable, a: int, b: int) -> int:
    """Return ``a t b``."""
    _check_element(t.n, a)
    _check_element(t.n, b)
    return t.entries[a * t.n + b]


def encode_op(t: CayleyTable) -> OpCode:
    n = t.n
    if not has_codes(n):
        raise CodeOverflowError(f"{n}**{n * n} exceeds {CODE_BITS} bits")
    code = 0
    for x in t.entries:
        code = code * n + x
    return OpCode(n, code)


def decode_op(c: OpCode | tuple) -> CayleyTable:
    n, code = c
    if not has_codes(n):
        raise CodeOverflowError(f"{n}**{n * n} exceeds {CODE_BITS} bits")
    if not isinstance(code, (int, np.integer)) or not 0 <= code < n ** (n * n):
        raise RangeError(f"code {code!r} outside [0, {n}**{n * n})")
    code = int(code)
    digits = [0] * (n * n)
    for k in range(n * n - 1, -1, -1):
        code, digits[k] = divmod(code, n)
    return CayleyTable._trusted(n, tuple(digits))


# ---------------------------------------------------------------------------
# labels and the text format

_FORBIDDEN = re.compile(r"[\s,/=#]")


def default_labels(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(string.ascii_lowercase[:n])
    return tuple(str(i) for i in range(n))


@dataclass(frozen=True)
class LabelMap:
    labels: tuple

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"labels must be distinct: {labels}")
        for lab in labels:
            if not isinstance(lab, str) or not lab or _FORBIDDEN.search(lab):
                raise ValueError(f"invalid label {lab!r}")

    @classmethod
    def default(cls, n: int) -> "LabelMap":
        return cls(default_labels(n))

    def __len__(self):
        return len(self.labels)

    def __getitem__(self, i):
        return self.labels[i]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise RangeError(f"unknown label {label!r}") from None


def _split_lines(text):
    # '/' is accepted as a row separator so tables can be written inline
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.lstrip().startswith("#"):
            continue
        col = 1
        for piece in raw.split("/"):
            if piece.strip():
                out.append((lineno, col + len(piece) - len(piece.lstrip()), piece.strip()))
            col += len(piece) + 1
    return out


def read_table(text: str) -> tuple[CayleyTable, LabelMap]:
    """Parse the table text format.

    Optional ``#`` comments, a line ``n=<int>``, an optional line
    ``labels=l0,l1,...`` and then ``n`` rows of ``n`` whitespace-separated
    symbols. Without a labels line the symbols are decimal indices, or the
    default letters a, b, c, ..., or failing both the symbols of the first
    row in order. A missing ``n=`` line means n is the number of rows.
    """
    lines = _split_lines(text)
    n = None
    labels = None
    pos = 0
    if pos < len(lines) and lines[pos][2].replace(" ", "").startswith("n="):
        lineno, col, s = lines[pos]
        value = s.split("=", 1)[1].strip()
        if not value.isdigit():
            raise ParseError(f"bad order {value!r}", lineno, col)
        n = int(value)
        if n < 1:
            raise ParseError("order must be at least 1", lineno, col)
        pos += 1
    if pos < len(lines) and lines[pos][2].replace(" ", "").startswith("labels="):
        lineno, col, s = lines[pos]
        parts = [p.strip() for p in s.split("=", 1)[1].split(",")]
        try:
            labels = LabelMap(tuple(parts))
        except ValueError as exc:
            raise ParseError(str(exc), lineno, col) from None
        pos += 1
    rows = lines[pos:]
    if n is None:
        n = len(rows)
        if n == 0:
            raise ParseError("no table rows", len(text.splitlines()) or 1)
    if labels is not None and len(labels) != n:
        raise ParseError(f"{len(labels)} labels for order {n}", lines[pos - 1][0])
    if len(rows) != n:
        where = rows[n][0] if len(rows) > n else (lines[-1][0] if lines else 1)
        raise ParseError(f"expected {n} rows, found {len(rows)}", where)

    tokens = []
    for lineno, col, s in rows:
        row = []
        for m in re.finditer(r"\S+", s):
            row.append((lineno, col + m.start(), m.group()))
        if len(row) != n:
            raise ParseError(f"expected {n} symbols, found {len(row)}", lineno, col)
        tokens.append(row)

    if labels is None:
        labels = _infer_labels(n, tokens)
    lookup = {lab: i for i, lab in enumerate(labels.labels)}
    entries = []
    for row in tokens:
        for lineno, col, sym in row:
            if sym not in lookup:
                raise UnknownLabelError(f"unknown label {sym!r}", lineno, col)
            entries.append(lookup[sym])
    return CayleyTable(n, tuple(entries)), labels


def _infer_labels(n, tokens):
    symbols = {sym for row in tokens for _, _, sym in row}
    decimal = tuple(str(i) for i in range(n))
    if symbols <= set(decimal):
        return LabelMap(decimal)
    letters = default_labels(n)
    if symbols <= set(letters):
        return LabelMap(letters)
    first = tuple(sym for _, _, sym in tokens[0])
    if len(set(first)) == n:
        try:
            return LabelMap(first)
        except ValueError:
            pass
    lineno, col, _ = tokens[0][0]
    # report the first symbol that none of the conventions explain
    for row in tokens:
        for lineno, col, sym in row:
            if sym not in letters:
                raise UnknownLabelError(f"unknown label {sym!r}", lineno, col)
    raise ParseError("cannot infer labels", lineno, col)


def write_table(t: CayleyTable, lm: LabelMap | None = None) -> str:
    """Canonical text form; ``read_table`` inverts it exactly."""
    if lm is None:
        lm = LabelMap.default(t.n)
    if len(lm) != t.n:
        raise ValueError(f"{len(lm)} labels for order {t.n}")
    out = [f"n={t.n}", "labels=" + ",".join(lm.labels)]
    for row in t.rows():
        out.append(" ".join(lm[x] for x in row))
    return "\n".join(out) + "\n"
