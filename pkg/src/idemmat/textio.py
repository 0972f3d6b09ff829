"""Matrix text and JSON formats.

Text form::

    Z 2 2
    1 0
    0 0

The header ``<ring> <rows> <cols>`` is optional when the caller supplies the
ring. Entries are whitespace separated; a polynomial may contain blanks around
an operator (``x^2 + 1``) but an entry that *starts* with a sign after a
complete entry begins a new entry (``x^2 -1`` is two entries). Lines starting
with ``#`` are comments. The JSON mirror is
``{"ring": "Z", "rows": 2, "cols": 2, "entries": ["1", "0", "0", "0"]}``.
"""

from __future__ import annotations

import json
import re

from .errors import ParseError
from .matrices import Matrix
from .rings import Ring, ring_from_name

__all__ = ["parse_matrix", "parse_matrices", "format_matrix", "matrix_to_json",
           "matrix_from_json", "dumps_matrix_json", "loads_matrix_json"]

_HEADER_RE = re.compile(r"(\S+)\s+(\d+)\s+(\d+)\s*\Z")
_OPS = "+-*^/"


def _split_entries(line):
    """Split a row into ``(entry_text, column)`` pairs, rejoining polynomials."""
    out = []
    for m in re.finditer(r"\S+", line):
        tok, col = m.group(), m.start() + 1
        join = bool(out) and (
            out[-1][0][-1] in _OPS
            or tok in ("+", "-")
            or tok[0] in "*^/"
        )
        if join:
            out[-1] = (out[-1][0] + tok, out[-1][1])
        else:
            out.append((tok, col))
    return out


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield lineno, raw


def _parse_block(lines, ring: Ring | None) -> Matrix:
    lines = list(lines)
    if not lines:
        raise ParseError("no matrix rows found", line=1)
    lineno, first = lines[0]
    header = _HEADER_RE.match(first.strip())
    expected = None
    if header and (ring is None or not _looks_like_row(first, ring)):
        try:
            hdr_ring = ring_from_name(header.group(1))
        except ParseError as exc:
            raise ParseError(exc.message, line=lineno, col=1) from None
        if ring is not None and hdr_ring != ring:
            raise ParseError(f"header ring {hdr_ring.name} conflicts with requested ring {ring.name}",
                             line=lineno, col=1)
        ring = hdr_ring
        expected = (int(header.group(2)), int(header.group(3)))
        lines = lines[1:]
    elif ring is None:
        raise ParseError("missing header '<ring> <rows> <cols>'", line=lineno, col=1)

    rows = []
    for lineno, raw in lines:
        row = []
        for tok, col in _split_entries(raw):
            try:
                row.append(ring.parse(tok))
            except ParseError as exc:
                raise ParseError(exc.message, line=lineno, col=col + (exc.col or 1) - 1) from None
        if rows and len(row) != len(rows[0]):
            raise ParseError(f"expected {len(rows[0])} entries, found {len(row)}", line=lineno, col=1)
        rows.append(row)
    if expected is not None:
        if len(rows) != expected[0] or (rows and len(rows[0]) != expected[1]):
            got = (len(rows), len(rows[0]) if rows else 0)
            raise ParseError(f"header declares {expected[0]}x{expected[1]}, body is {got[0]}x{got[1]}",
                             line=lines[-1][0] if lines else 1)
        if not rows:
            return Matrix.zeros(ring, 0, expected[1])
    return Matrix(ring, len(rows), len(rows[0]) if rows else 0, [x for r in rows for x in r])


def _looks_like_row(line, ring):
    """A 3-token line such as ``1 2 3`` is data, not a header, when a ring is given."""
    try:
        ring_from_name(line.split()[0])
    except ParseError:
        return True
    return False


def parse_matrix(text: str, ring: Ring | None = None) -> Matrix:
    """Parse one matrix in the text format; JSON input is detected and accepted."""
    if text.lstrip().startswith("{"):
        return loads_matrix_json(text, ring)
    return _parse_block(_content_lines(text), ring)


def parse_matrices(text: str, ring: Ring | None = None) -> list[Matrix]:
    """Parse a stream of blank-line separated matrices."""
    blocks, cur = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s:
            if cur:
                blocks.append(cur)
                cur = []
            continue
        if not s.startswith("#"):
            cur.append((lineno, raw))
    if cur:
        blocks.append(cur)
    return [_parse_block(b, ring) for b in blocks]


def format_matrix(M: Matrix, header: bool = True) -> str:
    lines = [f"{M.ring.name} {M.rows} {M.cols}"] if header else []
    fmt = M.ring.format
    lines.extend(" ".join(fmt(x) for x in row) for row in M.payload_rows())
    return "\n".join(lines) + "\n"


def matrix_to_json(M: Matrix) -> dict:
    fmt = M.ring.format
    return {"ring": M.ring.name, "rows": M.rows, "cols": M.cols,
            "entries": [fmt(x) for x in M.data]}


def matrix_from_json(obj: dict, ring: Ring | None = None) -> Matrix:
    try:
        name, rows, cols, entries = obj["ring"], obj["rows"], obj["cols"], obj["entries"]
    except (KeyError, TypeError):
        raise ParseError("JSON matrix needs fields ring, rows, cols, entries") from None
    R = ring_from_name(name)
    if ring is not None and R != ring:
        raise ParseError(f"JSON ring {R.name} conflicts with requested ring {ring.name}")
    if entries and isinstance(entries[0], list):
        entries = [x for row in entries for x in row]
    if len(entries) != rows * cols:
        raise ParseError(f"{len(entries)} entries for a {rows}x{cols} matrix")
    data = []
    for k, e in enumerate(entries):
        try:
            data.append(R.parse(str(e)))
        except ParseError as exc:
            raise ParseError(f"entry {k}: {exc.message}") from None
    return Matrix(R, rows, cols, data)


def dumps_matrix_json(M: Matrix) -> str:
    return json.dumps(matrix_to_json(M))


def loads_matrix_json(text: str, ring: Ring | None = None) -> Matrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, col=exc.colno) from None
    if not isinstance(obj, dict):
        raise ParseError("JSON matrix must be an object")
    return matrix_from_json(obj, ring)
