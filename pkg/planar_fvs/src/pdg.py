"""Text codec for embedded planar digraphs (``.pdg``).

A document looks like:

    # directed triangle
    3 3 3
    0 1
    1 2
    2 0
    0 +1 -3
    1 -1 +2
    2 -2 +3

where:
  - line 1 is ``n m g_declared`` (``g_declared`` = 0 when no digirth is claimed)
  - the next ``m`` lines are ``tail head``; arcs are numbered 1..m in file order
  - the next ``n`` lines are a vertex id followed by its counter-clockwise
    rotation: ``+k`` is the tail-end of arc ``k``, ``-k`` its head-end
  - ``#`` starts a comment that runs to the end of the line; blank lines are
    ignored

The outer face is the face holding the first arc-end listed for vertex 0.
:func:`serialize_pdg` writes the canonical form (no comments, single spaces,
vertices in order, trailing newline) and ``parse_pdg(serialize_pdg(G))``
rebuilds ``G`` exactly.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path

from src.embed_core import PlanarDigraph, build_planar_digraph
from src.errors import PdgParseError

_LOGGER = logging.getLogger(__name__)

_INT = re.compile(r"^[+-]?\d+$")


def _tokens(text: str) -> list[tuple[int, list[str]]]:
    """Non-empty lines with comments stripped, tagged with 1-based line numbers."""
    out = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            out.append((line_no, body))
    return out


def _ints(line_no: int, fields: list[str]) -> list[int]:
    for f in fields:
        if not _INT.match(f):
            raise PdgParseError(line_no, f"expected an integer, got {f!r}")
    return [int(f) for f in fields]


def parse_pdg(text: str) -> PlanarDigraph:
    """Parse a ``.pdg`` document. Structural problems raise with the offending line."""
    lines = _tokens(text)
    if not lines:
        raise PdgParseError(1, "empty document")

    header_no, header = lines[0]
    if len(header) != 3:
        raise PdgParseError(header_no, "header must be 'n m g_declared'")
    n, m, g_declared = _ints(header_no, header)
    if n < 0 or m < 0 or g_declared < 0:
        raise PdgParseError(header_no, "header values must be non-negative")
    if len(lines) < 1 + m + n:
        last = lines[-1][0]
        raise PdgParseError(last, f"expected {m} arc lines and {n} rotation lines")
    if len(lines) > 1 + m + n:
        extra_no = lines[1 + m + n][0]
        raise PdgParseError(extra_no, "unexpected content after the rotation lines")

    arcs: list[tuple[int, int]] = []
    for line_no, fields in lines[1 : 1 + m]:
        if len(fields) != 2:
            raise PdgParseError(line_no, "arc line must be 'tail head'")
        tail, head = _ints(line_no, fields)
        if not (0 <= tail < n and 0 <= head < n):
            raise PdgParseError(line_no, f"arc endpoint outside 0..{n - 1}")
        if tail == head:
            raise PdgParseError(line_no, "loops are not allowed")
        arcs.append((tail, head))

    rotation: list[list[int] | None] = [None] * n
    for line_no, fields in lines[1 + m :]:
        vertex, *signed = _ints(line_no, fields)
        if not 0 <= vertex < n:
            raise PdgParseError(line_no, f"vertex {vertex} outside 0..{n - 1}")
        if rotation[vertex] is not None:
            raise PdgParseError(line_no, f"vertex {vertex} has two rotation lines")
        darts = []
        for s in signed:
            if s == 0 or abs(s) > m:
                raise PdgParseError(line_no, f"arc-end {s:+d} does not name an arc in 1..{m}")
            arc = abs(s) - 1
            end_vertex = arcs[arc][0] if s > 0 else arcs[arc][1]
            if end_vertex != vertex:
                raise PdgParseError(line_no, f"arc-end {s:+d} does not touch vertex {vertex}")
            darts.append(2 * arc + (0 if s > 0 else 1))
        rotation[vertex] = darts

    graph = build_planar_digraph(n, arcs, [r or [] for r in rotation], g_declared=g_declared)
    _LOGGER.debug("Parsed .pdg: n=%d m=%d g_declared=%d", n, m, g_declared)
    return graph


def serialize_pdg(graph: PlanarDigraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{graph.n} {graph.m} {graph.g_declared}")
    lines.extend(f"{t} {h}" for t, h in graph.arcs)
    for v, darts in enumerate(graph.rotation):
        ends = " ".join(f"{'-' if d & 1 else '+'}{(d >> 1) + 1}" for d in darts)
        lines.append(f"{v} {ends}" if ends else str(v))
    return "\n".join(lines) + "\n"


def read_pdg(path: Path | str) -> PlanarDigraph:
    return parse_pdg(Path(path).read_text(encoding="utf-8"))


def write_pdg(path: Path | str, graph: PlanarDigraph, comment: str | None = None) -> None:
    Path(path).write_text(serialize_pdg(graph, comment), encoding="utf-8")
