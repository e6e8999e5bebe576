"""Line-oriented, diff-friendly instance and routing file formats.

Instance:
    GRID t n
    DEMANDS m
    <id> <u coords> <v coords>          (m lines, 0-indexed coordinates)

Routing:
    ROUTING m
    <id> <len> <v0> | <v1> | ... | <v_len>
"""

from __future__ import annotations

from typing import Mapping

from .demand import DemandEdge, DemandGraph
from .errors import FormatError
from .grid import GridSpec, Trail


def emit_instance(dg: DemandGraph) -> str:
    lines = [f"GRID {dg.spec.t} {dg.spec.n}", f"DEMANDS {len(dg.edges)}"]
    for d in dg.edges:
        coords = " ".join(str(c) for c in d.u + d.v)
        lines.append(f"{d.id} {coords}")
    return "\n".join(lines) + "\n"


def _int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"expected integer {what}, got {token!r}", line_no) from None


def parse_instance(text: str) -> DemandGraph:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) < 2:
        raise FormatError("instance needs a GRID line and a DEMANDS line")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "GRID":
        raise FormatError(f"expected 'GRID t n', got {lines[0]!r}", 1)
    t, n = _int(head[1], 1, "t"), _int(head[2], 1, "n")
    try:
        spec = GridSpec(t, n)
    except ValueError as exc:
        raise FormatError(str(exc), 1) from None
    count_line = lines[1].split()
    if len(count_line) != 2 or count_line[0] != "DEMANDS":
        raise FormatError(f"expected 'DEMANDS m', got {lines[1]!r}", 2)
    m = _int(count_line[1], 2, "demand count")
    if len(lines) - 2 != m:
        raise FormatError(f"header promises {m} demands, file has {len(lines) - 2}")
    edges = []
    for offset, line in enumerate(lines[2:], start=3):
        tokens = line.split()
        if len(tokens) != 1 + 2 * n:
            raise FormatError(
                f"demand line needs 1 + 2n = {1 + 2 * n} integers, got {len(tokens)}",
                offset,
            )
        values = [_int(tok, offset, "coordinate") for tok in tokens]
        did, coords = values[0], values[1:]
        u, v = tuple(coords[:n]), tuple(coords[n:])
        try:
            spec.check_vertex(u)
            spec.check_vertex(v)
            edges.append(DemandEdge(did, u, v))
        except ValueError as exc:
            raise FormatError(str(exc), offset) from None
    try:
        return DemandGraph(spec, tuple(edges))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def emit_routing(routing: Mapping[int, Trail]) -> str:
    lines = [f"ROUTING {len(routing)}"]
    for did in sorted(routing):
        tr = routing[did]
        verts = " | ".join(" ".join(str(c) for c in v) for v in tr.vertices)
        lines.append(f"{did} {tr.length} {verts}")
    return "\n".join(lines) + "\n"


def parse_routing(text: str, spec: GridSpec) -> dict[int, Trail]:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise FormatError("routing needs a ROUTING header")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "ROUTING":
        raise FormatError(f"expected 'ROUTING m', got {lines[0]!r}", 1)
    m = _int(head[1], 1, "trail count")
    if len(lines) - 1 != m:
        raise FormatError(f"header promises {m} trails, file has {len(lines) - 1}")
    routing: dict[int, Trail] = {}
    for offset, line in enumerate(lines[1:], start=2):
        segments = line.split("|")
        first = segments[0].split()
        if len(first) < 2 + spec.n:
            raise FormatError("trail line needs an id, a length, and a first vertex", offset)
        did = _int(first[0], offset, "demand id")
        declared = _int(first[1], offset, "trail length")
        vertex_tokens = [first[2:]] + [seg.split() for seg in segments[1:]]
        vertices = []
        for tokens in vertex_tokens:
            if len(tokens) != spec.n:
                raise FormatError(
                    f"vertex needs {spec.n} coordinates, got {len(tokens)}", offset
                )
            vertices.append(tuple(_int(tok, offset, "coordinate") for tok in tokens))
        if declared != len(vertices) - 1:
            raise FormatError(
                f"declared length {declared} but trail has {len(vertices) - 1} edges",
                offset,
            )
        if did in routing:
            raise FormatError(f"duplicate trail for demand {did}", offset)
        routing[did] = Trail(tuple(vertices))
    return routing
