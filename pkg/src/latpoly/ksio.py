"""Reading Kreuzer-Skarke (PALP) vertex matrices and the native line format.

PALP records look like::

    3 6  M:12 6 N:7 5 H:3,...
    -1 -1  1  1  0  0
     0  0  1  1 -1 -1
     1 -1  1 -1  1 -1

A header with the matrix shape (anything after the two integers is kept as
an opaque comment), then that many rows of integers.

The native format is one polytope per line::

    <dim> <n_vertices> <v_1 coords> <v_2 coords> ...

with vertices in lexicographic order, so equal polytopes serialize to equal
lines.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

from .lattice import LatticeError
from .polytope import NotFullDimensional, Polytope, affine_dimension, make_polytope

log = logging.getLogger(__name__)

_MINUS = str.maketrans({"−": "-"})


class ParseError(LatticeError):
    def __init__(self, msg: str, line: int | None = None, record: int | None = None):
        where = []
        if record is not None:
            where.append(f"record {record}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{', '.join(where)}: {msg}" if where else msg)
        self.line = line
        self.record = record


class MalformedHeader(ParseError):
    pass


class MatrixShapeMismatch(ParseError):
    pass


class AmbiguousOrientation(ParseError):
    pass


class RecordNotFullDimensional(ParseError):
    pass


@dataclass
class KsRecord:
    header_rows: int
    header_cols: int
    comment: str
    matrix: list
    line: int  # line number of the header, 1-based
    index: int  # 0-based record index


def _ints(text: str, lineno: int, record: int | None, cls=ParseError) -> list[int]:
    try:
        return [int(tok) for tok in text.translate(_MINUS).split()]
    except ValueError as exc:
        raise cls(f"non-integer token ({exc})", lineno, record) from None


def iter_ks_records(lines: Iterable[str]) -> Iterator[KsRecord]:
    """Split a PALP stream into raw records, one at a time."""
    it = iter(enumerate(lines, 1))
    index = 0
    for lineno, raw in it:
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        toks = line.translate(_MINUS).split()
        try:
            rows, cols = int(toks[0]), int(toks[1])
        except (ValueError, IndexError):
            raise MalformedHeader(f"expected '<rows> <cols> ...', got {line!r}", lineno, index) from None
        if rows <= 0 or cols <= 0:
            raise MalformedHeader(f"nonpositive shape {rows}x{cols}", lineno, index)
        comment = line.split(None, 2)[2] if len(toks) > 2 else ""
        matrix = []
        while len(matrix) < rows:
            try:
                rl, rraw = next(it)
            except StopIteration:
                raise MatrixShapeMismatch(f"file ended after {len(matrix)} of {rows} rows",
                                          lineno, index) from None
            if not rraw.strip():
                continue
            row = _ints(rraw, rl, index, MatrixShapeMismatch)
            if len(row) != cols:
                raise MatrixShapeMismatch(f"row has {len(row)} entries, header says {cols}", rl, index)
            matrix.append(row)
        yield KsRecord(rows, cols, comment, matrix, lineno, index)
        index += 1


def record_to_polytope(rec: KsRecord, orientation: str = "auto") -> Polytope:
    """Interpret a record's matrix as a point set.

    ``orientation`` is ``"auto"``, ``"columns"`` (columns are points) or
    ``"rows"`` (rows are points).
    """
    cols_as_points = [tuple(c) for c in zip(*rec.matrix)]
    rows_as_points = [tuple(r) for r in rec.matrix]
    if orientation == "columns":
        options = [cols_as_points]
    elif orientation == "rows":
        options = [rows_as_points]
    elif rec.header_rows < rec.header_cols:
        options = [cols_as_points]
    elif rec.header_rows > rec.header_cols:
        options = [rows_as_points]
    else:
        full = [pts for pts in (cols_as_points, rows_as_points)
                if affine_dimension(pts) == len(pts[0])]
        if len(full) != 1:
            raise AmbiguousOrientation(
                f"square {rec.header_rows}x{rec.header_cols} matrix is full-dimensional "
                f"{'both ways' if full else 'neither way'}", rec.line, rec.index)
        options = full
    try:
        return make_polytope(options[0])
    except NotFullDimensional as exc:
        raise RecordNotFullDimensional(str(exc), rec.line, rec.index) from None


def parse_ks(stream: Iterable[str], strict: bool = True,
             orientation: str = "auto") -> Iterator[Polytope]:
    """Stream polytopes out of PALP-formatted text.

    In lenient mode a bad record is logged and skipped; a malformed header
    still stops the stream, since the record boundaries are lost.
    """
    for rec in iter_ks_records(stream):
        try:
            yield record_to_polytope(rec, orientation)
        except ParseError as exc:
            if strict:
                raise
            log.warning("skipping %s", exc)


def write_native(P: Polytope) -> str:
    toks = [P.dim, P.n_vertices]
    for v in P.vertices:
        toks.extend(v)
    return " ".join(map(str, toks))


def read_native_line(line: str, lineno: int | None = None) -> Polytope:
    toks = _ints(line, lineno, None)
    if len(toks) < 2:
        raise ParseError("expected '<dim> <n_vertices> coords...'", lineno)
    d, n = toks[0], toks[1]
    if d <= 0 or n <= 0:
        raise ParseError(f"nonpositive dimension or vertex count ({d}, {n})", lineno)
    coords = toks[2:]
    if len(coords) != d * n:
        raise ParseError(f"expected {d * n} coordinates, found {len(coords)}", lineno)
    pts = [tuple(coords[i * d:(i + 1) * d]) for i in range(n)]
    try:
        return make_polytope(pts)
    except NotFullDimensional as exc:
        raise ParseError(str(exc), lineno) from None


def read_native(stream: Iterable[str]) -> Iterator[Polytope]:
    for lineno, line in enumerate(stream, 1):
        if line.strip() and not line.lstrip().startswith("#"):
            yield read_native_line(line, lineno)


def sniff_format(first_line: str) -> str:
    """'native' when the first record line carries coordinates, else 'ks'."""
    toks = first_line.split()
    if len(toks) >= 2 and all(t.lstrip("-−").isdigit() for t in toks[:2]):
        try:
            d, n = int(toks[0]), int(toks[1])
        except ValueError:
            return "ks"
        if len(toks) == 2 + d * n and all(t.lstrip("-−").isdigit() for t in toks):
            return "native"
    return "ks"


def read_polytopes(fh: TextIO, fmt: str = "auto", strict: bool = True,
                   orientation: str = "auto") -> Iterator[Polytope]:
    """Polytopes from an open text file in either format."""
    if fmt == "auto":
        lines = iter(fh)
        head = []
        for line in lines:
            head.append(line)
            if line.strip() and not line.lstrip().startswith("#"):
                break
        first = head[-1] if head else ""
        fmt = sniff_format(first) if first.strip() and not first.lstrip().startswith("#") else "native"
        source = itertools.chain(head, lines)
    else:
        source = fh
    if fmt == "native":
        return read_native(source)
    if fmt == "ks":
        return parse_ks(source, strict=strict, orientation=orientation)
    raise ValueError(f"unknown format {fmt!r}")
