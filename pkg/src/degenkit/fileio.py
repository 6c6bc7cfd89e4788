"""Line-oriented parsing helpers for the toolkit's text formats.

All formats are strict: unknown keys, missing '=' separators, bad tokens and
wrong entry counts raise ParseError, which the CLI reports as exit code 2.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError

KVLine = tuple[int, str, str]


def iter_kv(text: str) -> list[KVLine]:
    """Parse ``key = value`` lines; '#' comments and blank lines are skipped."""
    out: list[KVLine] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip()
        if not key:
            raise ParseError(f"line {lineno}: empty key")
        out.append((lineno, key, value))
    return out


def parse_record_blocks(text: str) -> list[list[KVLine]]:
    """Split a key = value document into blank-line separated records."""
    blocks: list[list[KVLine]] = []
    current: list[KVLine] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = line.split("=", 1)
        if not key.strip():
            raise ParseError(f"line {lineno}: empty key")
        current.append((lineno, key.strip(), value.strip()))
    if current:
        blocks.append(current)
    return blocks


def single_value(lines: list[KVLine], key: str) -> str:
    """The unique value for ``key``; missing or repeated keys are parse errors."""
    hits = [v for _, k, v in lines if k == key]
    if not hits:
        raise ParseError(f"missing required key {key!r}")
    if len(hits) > 1:
        raise ParseError(f"key {key!r} given more than once")
    return hits[0]


def optional_value(lines: list[KVLine], key: str, default: str | None = None) -> str | None:
    hits = [v for _, k, v in lines if k == key]
    if len(hits) > 1:
        raise ParseError(f"key {key!r} given more than once")
    return hits[0] if hits else default


def parse_int(value: str, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{what}: expected an integer, got {value!r}") from None


def parse_bool(value: str, what: str) -> bool:
    v = value.strip().lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0"):
        return False
    raise ParseError(f"{what}: expected true/false, got {value!r}")


def parse_scalar(tok: str, what: str, allow_rational: bool):
    """An integer, or p/q when rationals are allowed."""
    if "/" in tok:
        if not allow_rational:
            raise ParseError(f"{what}: integer entries required, got {tok!r}")
        num, _, den = tok.partition("/")
        try:
            return Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{what}: bad rational entry {tok!r}") from None
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what}: bad entry {tok!r}") from None


def parse_matrix(text: str, allow_rational: bool = False) -> list[list]:
    """Dense matrix: one-line header ``rows cols``, then row-major entries
    separated by arbitrary whitespace."""
    tokens = text.split()
    if len(tokens) < 2:
        raise ParseError("matrix file needs a 'rows cols' header")
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ParseError(f"bad matrix header {tokens[0]!r} {tokens[1]!r}") from None
    if rows < 0 or cols < 0:
        raise ParseError("matrix dimensions must be nonnegative")
    body = tokens[2:]
    if len(body) != rows * cols:
        raise ParseError(f"expected {rows * cols} matrix entries, found {len(body)}")
    out = []
    for r in range(rows):
        out.append(
            [
                parse_scalar(body[r * cols + c], f"matrix entry ({r},{c})", allow_rational)
                for c in range(cols)
            ]
        )
    return out


def format_matrix(matrix) -> str:
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    lines = [f"{rows} {cols}"]
    for row in matrix:
        if len(row) != cols:
            raise ValueError("ragged matrix")
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


__all__ = [
    "iter_kv",
    "parse_record_blocks",
    "single_value",
    "optional_value",
    "parse_int",
    "parse_bool",
    "parse_scalar",
    "parse_matrix",
    "format_matrix",
]
