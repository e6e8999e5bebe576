"""Shared test utilities."""

from __future__ import annotations

from random import Random

from gridpair import DemandGraph, GridSpec, Multigraph, Trail


def random_regular_multigraph(num_vertices: int, degree: int, rng: Random) -> Multigraph:
    """Configuration model: pair up degree stubs per vertex; loops and parallels arise naturally."""
    assert (num_vertices * degree) % 2 == 0
    stubs = [v for v in range(num_vertices) for _ in range(degree)]
    rng.shuffle(stubs)
    edges = tuple((stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2))
    return Multigraph(num_vertices, edges)


def wrap_complete_routing(trails: dict) -> dict[int, Trail]:
    """Lift integer trails from the complete-graph solver into 1-tuple grid trails."""
    return {key: Trail(tuple((x,) for x in verts)) for key, verts in trails.items()}


def demand_graph_from_int_pairs(t: int, pairs: list[tuple[int, int]]) -> DemandGraph:
    spec = GridSpec(t, 1)
    from gridpair import from_pairing

    return from_pairing(spec, [((x,), (y,)) for x, y in pairs])
