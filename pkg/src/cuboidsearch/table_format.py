"""Reader and writer for the Integer Cuboid Table.

One row per line, ASCII, ``\\n`` terminated::

    index<TAB>ss<TAB>K,x,y,z,d

``K`` is the type letter and a radical slot is written ``(radicand)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import IO, Iterable, Iterator

from .cuboid_model import Cuboid, CuboidType, RadicalLength, canonicalize, sorted_side, violations
from .errors import MalformedRowError, RowVerificationError

HEADER = "#\tss\tcuboid"

_INT = re.compile(r"[1-9][0-9]*")
_RADICAL = re.compile(r"\((-?[1-9][0-9]*)\)")


@dataclass(frozen=True)
class TableRow:
    index: int
    ss: int
    cuboid: Cuboid

    @classmethod
    def of(cls, cuboid: Cuboid, index: int = 0) -> "TableRow":
        return cls(index, sorted_side(cuboid), cuboid)

    def key(self) -> tuple:
        return self.cuboid.key()


def format_row(row: TableRow) -> bytes:
    return f"{row.index}\t{row.ss}\t{row.cuboid}".encode("ascii")


def _parse_slot(text: str, name: str, line) -> int | RadicalLength:
    if _INT.fullmatch(text):
        return int(text)
    m = _RADICAL.fullmatch(text)
    if m:
        return RadicalLength(int(m.group(1)))
    raise MalformedRowError(name, line)


def parse_row(line: bytes | str, check: bool = True) -> TableRow:
    """Parse one table line; with ``check`` the cuboid must also verify."""
    raw = line
    if isinstance(line, bytes):
        try:
            line = line.decode("ascii")
        except UnicodeDecodeError:
            raise MalformedRowError("encoding", raw, "not ASCII") from None
    line = line.rstrip("\n")
    fields = line.split("\t")
    if len(fields) != 3:
        raise MalformedRowError("field count", raw, f"expected 3 tab-separated fields, got {len(fields)}")
    index_s, ss_s, body = fields
    if not _INT.fullmatch(index_s):
        raise MalformedRowError("index", raw)
    if not _INT.fullmatch(ss_s):
        raise MalformedRowError("ss", raw)
    parts = body.split(",")
    if len(parts) != 5:
        raise MalformedRowError("cuboid", raw, f"expected type letter and 4 slots, got {len(parts)} items")
    try:
        kind = CuboidType.from_letter(parts[0])
    except ValueError:
        raise MalformedRowError("type", raw) from None
    slots = [_parse_slot(p, n, raw) for p, n in zip(parts[1:], "xyzd")]
    row = TableRow(int(index_s), int(ss_s), Cuboid(kind, *slots))
    if check:
        problems = violations(row.cuboid)
        if problems:
            raise RowVerificationError(row.cuboid, raw)
    return row


def sort_rows(rows: Iterable[TableRow]) -> list[TableRow]:
    """Order by (ss, x, y, z, kind, d) and renumber from 1."""
    ordered = sorted(rows, key=TableRow.key)
    return [replace(r, index=i) for i, r in enumerate(ordered, 1)]


def rows_from_cuboids(cuboids: Iterable[Cuboid]) -> list[TableRow]:
    return sort_rows(TableRow.of(canonicalize(c)) for c in cuboids)


def write_table(rows: Iterable[TableRow], fh: IO[bytes], header: bool = False) -> None:
    if header:
        fh.write(HEADER.encode("ascii") + b"\n")
    for r in rows:
        fh.write(format_row(r) + b"\n")


def dumps(rows: Iterable[TableRow], header: bool = False) -> bytes:
    return b"".join(format_row(r) + b"\n" for r in rows) if not header else (
        HEADER.encode("ascii") + b"\n" + dumps(rows))


def iter_lines(fh: IO[bytes]) -> Iterator[tuple[int, bytes]]:
    """Yield ``(line_number, line)`` skipping blank lines and the optional header."""
    for lineno, line in enumerate(fh, 1):
        line = line.rstrip(b"\n")
        if not line.strip() or line.startswith(b"#"):
            continue
        yield lineno, line


def read_table(fh: IO[bytes], check: bool = True) -> list[TableRow]:
    return [parse_row(line, check) for _, line in iter_lines(fh)]
