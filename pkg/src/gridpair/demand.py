"""Demand multigraphs, degree budgets, and the column-projection graph.

A demand asks for a trail between two grid vertices. Cross-column demands
are projected onto column coordinates to form an auxiliary multigraph, which
is padded with dummy edges until it is exactly t*q-regular; the padded graph
is what the 2-factor machinery decomposes.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass, replace
from random import Random
from typing import Sequence

from .errors import InfeasibleBudgetError
from .grid import GridSpec, Vertex, column_of, vertex_rank


@dataclass(frozen=True)
class DemandEdge:
    """One demand: connect u and v by a trail."""

    id: int
    u: Vertex
    v: Vertex

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise ValueError(f"demand {self.id} pairs vertex {self.u!r} with itself")


@dataclass(frozen=True)
class DemandGraph:
    """Demand multigraph over a grid, with an optional even degree budget q."""

    spec: GridSpec
    edges: tuple[DemandEdge, ...]
    q: int | None = None

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for d in self.edges:
            if d.id in seen:
                raise ValueError(f"duplicate demand id {d.id}")
            seen.add(d.id)
            self.spec.check_vertex(d.u)
            self.spec.check_vertex(d.v)
        if self.q is not None:
            if self.q < 2 or self.q % 2:
                raise ValueError(f"degree budget must be even and >= 2, got {self.q}")
            if self.max_degree > self.q:
                raise ValueError(f"demand degree {self.max_degree} exceeds budget {self.q}")

    def degrees(self) -> Counter[Vertex]:
        deg: Counter[Vertex] = Counter()
        for d in self.edges:
            deg[d.u] += 1
            deg[d.v] += 1
        return deg

    @property
    def max_degree(self) -> int:
        deg = self.degrees()
        return max(deg.values()) if deg else 0

    def with_budget(self, q: int) -> DemandGraph:
        return replace(self, q=q)


def from_pairing(spec: GridSpec, pairs: Sequence[tuple[Vertex, Vertex]]) -> DemandGraph:
    """Demand graph with one edge per pair, ids numbered in input order.

    The budget q is left unset; pick it with choose_q once the maximum
    demand degree is known.
    """
    edges = tuple(DemandEdge(i, u, v) for i, (u, v) in enumerate(pairs))
    return DemandGraph(spec, edges)


def choose_q(spec: GridSpec, delta: int) -> int:
    """Smallest even budget q >= max(2, delta), subject to q <= floor(t/6) - 1."""
    if delta < 1:
        raise ValueError(f"maximum demand degree must be >= 1, got {delta}")
    q = max(2, delta + delta % 2)
    cap = spec.t // 6 - 1
    if q > cap:
        raise InfeasibleBudgetError(
            f"demand degree {delta} needs even budget {q}, but t={spec.t} admits "
            f"at most {cap} (requires t >= {6 * (q + 1)})"
        )
    return q


def split_demands(dg: DemandGraph) -> tuple[list[DemandEdge], list[DemandEdge]]:
    """Partition demands into (intra_column, cross_column) by column coordinates."""
    intra: list[DemandEdge] = []
    cross: list[DemandEdge] = []
    for d in dg.edges:
        (cross if column_of(d.u) != column_of(d.v) else intra).append(d)
    return intra, cross


@dataclass(frozen=True)
class AuxEdge:
    """Edge of the projection graph; origin is a demand id, or None for padding."""

    a: Vertex
    b: Vertex
    origin: int | None = None

    @property
    def is_dummy(self) -> bool:
        return self.origin is None


@dataclass(frozen=True)
class AuxGraph:
    """Multigraph on the columns of the grid; loops appear only on dummy edges."""

    base: GridSpec
    edges: tuple[AuxEdge, ...]

    def degrees(self) -> Counter[Vertex]:
        deg: Counter[Vertex] = Counter()
        for e in self.edges:
            deg[e.a] += 1
            deg[e.b] += 1  # a loop lands here twice
        return deg

    @property
    def max_degree(self) -> int:
        deg = self.degrees()
        return max(deg.values()) if deg else 0

    def edge_of_demand(self) -> dict[int, int]:
        """Demand id -> index of its projected edge."""
        return {e.origin: i for i, e in enumerate(self.edges) if e.origin is not None}


def project(cross: Sequence[DemandEdge], spec: GridSpec) -> AuxGraph:
    """Project cross-column demands onto column coordinates, one edge per demand."""
    if spec.n < 2:
        raise ValueError("projection requires dimension n >= 2")
    edges = []
    for d in cross:
        a, b = column_of(d.u), column_of(d.v)
        if a == b:
            raise ValueError(f"demand {d.id} stays inside column {a!r}; not projectable")
        edges.append(AuxEdge(a, b, d.id))
    return AuxGraph(GridSpec(spec.t, spec.n - 1), tuple(edges))


def regularize(aux: AuxGraph, r: int) -> AuxGraph:
    """Pad with dummy edges until every column vertex has degree exactly r.

    Repeatedly joins the two most deficient vertices; a final lone deficient
    vertex (even deficiency, by parity) receives dummy loops. Existing edges
    are never touched.
    """
    deg = aux.degrees()
    deficits: list[tuple[int, int, Vertex]] = []  # (-deficit, rank, vertex)
    total = 0
    for v in aux.base.vertices():
        d = r - deg.get(v, 0)
        if d < 0:
            raise ValueError(f"vertex {v!r} has degree {deg[v]} > target {r}")
        if d > 0:
            deficits.append((-d, vertex_rank(v, aux.base), v))
            total += d
    if total % 2:
        raise ValueError(f"total deficiency {total} is odd; degree {r} unreachable")
    heapq.heapify(deficits)
    padding: list[AuxEdge] = []
    while len(deficits) >= 2:
        da, ra, va = heapq.heappop(deficits)
        db, rb, vb = heapq.heappop(deficits)
        padding.append(AuxEdge(va, vb))
        if da + 1 < 0:
            heapq.heappush(deficits, (da + 1, ra, va))
        if db + 1 < 0:
            heapq.heappush(deficits, (db + 1, rb, vb))
    if deficits:
        d, _, v = deficits[0]
        assert d % 2 == 0, "parity leaves an even deficiency on the last vertex"
        padding.extend(AuxEdge(v, v) for _ in range(-d // 2))
    return AuxGraph(aux.base, aux.edges + tuple(padding))


def random_pairing(spec: GridSpec, rng: Random) -> list[tuple[Vertex, Vertex]]:
    """Uniformly random perfect pairing of all grid vertices; t^n must be even."""
    verts = list(spec.vertices())
    if len(verts) % 2:
        raise ValueError(f"cannot pair an odd number of vertices ({len(verts)})")
    rng.shuffle(verts)
    return [(verts[i], verts[i + 1]) for i in range(0, len(verts), 2)]


def random_demand_multigraph(
    spec: GridSpec, q: int, rng: Random
) -> list[tuple[Vertex, Vertex]]:
    """Random demand multiset with maximum degree exactly q.

    Built by repeated random matchings over the vertices still below budget;
    parallel demands are allowed, self-demands never occur.
    """
    if q < 1:
        raise ValueError(f"degree budget must be >= 1, got {q}")
    deg: Counter[Vertex] = Counter()
    pairs: list[tuple[Vertex, Vertex]] = []
    while True:
        open_verts = [v for v in spec.vertices() if deg[v] < q]
        if len(open_verts) < 2:
            break
        rng.shuffle(open_verts)
        if len(open_verts) % 2:
            open_verts.pop()
        for i in range(0, len(open_verts), 2):
            u, v = open_verts[i], open_verts[i + 1]
            pairs.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return pairs
