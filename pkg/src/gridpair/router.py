"""Recursive routing engine for demand multigraphs on complete grid graphs.

Cross-column demands are rerouted through a layer chosen by 2-factorizing the
regularized column-projection graph: each becomes a column hop, a layer
crossing, and a second column hop. Layers recurse one dimension down, columns
and one-dimensional instances are solved directly on the complete graph, and
the pieces are stitched back per original demand. Column and layer edge sets
are pairwise disjoint, so edge-disjointness composes across subproblems.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from random import Random
from typing import Hashable, Sequence

from .demand import (
    AuxGraph,
    DemandEdge,
    DemandGraph,
    choose_q,
    project,
    regularize,
    split_demands,
)
from .errors import BaseSolverExhaustedError, ClaimViolationError, InfeasibleBudgetError
from .factorization import LayerAssignment, Multigraph, group_factors, two_factorization
from .grid import GridSpec, Trail, Vertex, column_of, lift_trail, vertex_rank

Routing = dict[int, Trail]

ColumnKey = tuple[int, str]  # (original demand id, role: "d" intra / "u", "v" connector)


@dataclass(frozen=True)
class RewrittenDemand:
    """Replacement of a cross-column demand by up to three chained demands."""

    original_id: int
    connector_u: DemandEdge | None
    middle: DemandEdge
    connector_v: DemandEdge | None


@dataclass
class SubproblemLayer:
    """Demands falling into layer k, with the last coordinate already stripped."""

    k: int
    demands: list[DemandEdge]


@dataclass
class SubproblemColumn:
    """Demands inside one column, addressed by last coordinate."""

    column: Vertex
    demands: list[tuple[ColumnKey, int, int]]


@dataclass
class RouteDiagnostics:
    """Observed subproblem degree maxima, one record per recursion level."""

    records: list[tuple[int, int, int, int, int]] = field(default_factory=list)
    # (dimension, layer max, layer bound, column max, column bound)

    def record(
        self, n: int, layer_max: int, layer_bound: int, column_max: int, column_bound: int
    ) -> None:
        self.records.append((n, layer_max, layer_bound, column_max, column_bound))

    def all_within_bounds(self) -> bool:
        return all(lm <= lb and cm <= cb for _, lm, lb, cm, cb in self.records)


def rewrite(d: DemandEdge, k: int) -> RewrittenDemand:
    """Reroute demand d through layer k: column hop, layer crossing, column hop.

    A connector vanishes when its endpoint already lies in layer k.
    """
    a, i = column_of(d.u), d.u[-1]
    b, j = column_of(d.v), d.v[-1]
    if a == b:
        raise ValueError(f"demand {d.id} stays within column {a!r}; nothing to rewrite")
    top_u = a + (k,)
    top_v = b + (k,)
    connector_u = None if i == k else DemandEdge(d.id, d.u, top_u)
    connector_v = None if j == k else DemandEdge(d.id, top_v, d.v)
    return RewrittenDemand(d.id, connector_u, DemandEdge(d.id, top_u, top_v), connector_v)


def build_subproblems(
    dg: DemandGraph,
    assignment: LayerAssignment,
    aux: AuxGraph,
    diagnostics: RouteDiagnostics | None = None,
) -> tuple[list[SubproblemLayer], dict[Vertex, SubproblemColumn], dict[int, RewrittenDemand]]:
    """Distribute demands into t layer subproblems and per-column subproblems.

    Middles join their assigned layer (coordinates stripped); connectors and
    intra-column demands join their column. Degree bounds are asserted here:
    a layer above q or a column above 2q raises ClaimViolationError, which
    always means an upstream bug.
    """
    spec, q = dg.spec, dg.q
    if q is None:
        raise ValueError("demand graph needs a budget before subproblem construction")
    intra, cross = split_demands(dg)
    edge_of = aux.edge_of_demand()
    layers = [SubproblemLayer(k, []) for k in range(spec.t)]
    columns: dict[Vertex, SubproblemColumn] = {}
    rewrites: dict[int, RewrittenDemand] = {}

    def col(cv: Vertex) -> SubproblemColumn:
        sp = columns.get(cv)
        if sp is None:
            sp = columns[cv] = SubproblemColumn(cv, [])
        return sp

    for d in cross:
        eid = edge_of.get(d.id)
        if eid is None:
            raise ValueError(f"cross-column demand {d.id} has no projected edge")
        k = assignment.edge_layer[eid]
        rw = rewrite(d, k)
        rewrites[d.id] = rw
        layers[k].demands.append(
            DemandEdge(d.id, column_of(rw.middle.u), column_of(rw.middle.v))
        )
        if rw.connector_u is not None:
            col(column_of(d.u)).demands.append(((d.id, "u"), d.u[-1], k))
        if rw.connector_v is not None:
            col(column_of(d.v)).demands.append(((d.id, "v"), k, d.v[-1]))
    for d in intra:
        col(column_of(d.u)).demands.append(((d.id, "d"), d.u[-1], d.v[-1]))

    layer_max = 0
    for sp in layers:
        deg: Counter[Vertex] = Counter()
        for d in sp.demands:
            deg[d.u] += 1
            deg[d.v] += 1
        if deg:
            worst = max(deg.values())
            if worst > q:
                raise ClaimViolationError(
                    "i", f"layer {sp.k} reaches demand degree {worst} > q={q}"
                )
            layer_max = max(layer_max, worst)
    column_max = 0
    for sp in columns.values():
        cdeg: Counter[int] = Counter()
        for _, x, y in sp.demands:
            cdeg[x] += 1
            cdeg[y] += 1
        worst = max(cdeg.values())
        if worst > 2 * q:
            raise ClaimViolationError(
                "ii", f"column {sp.column!r} reaches demand degree {worst} > 2q={2 * q}"
            )
        column_max = max(column_max, worst)
    if diagnostics is not None:
        diagnostics.record(spec.n, layer_max, q, column_max, 2 * q)
    return layers, columns, rewrites


_EXHAUSTIVE_MAX_T = 8
# Cap matches the certification oracle's trail bound so feasibility verdicts agree.
_EXHAUSTIVE_TRAIL_CAP = 4


def solve_complete(
    t: int,
    demands: Sequence[tuple[Hashable, int, int]],
    rng: Random | None = None,
    max_restarts: int = 200,
) -> dict[Hashable, tuple[int, ...]]:
    """Pairwise edge-disjoint trails for demands (key, from, to) on K_t.

    Greedy passes first: direct edges, then length-2 detours through the
    least-loaded intermediate, then length-3 detours. On failure the demand
    order is reshuffled, up to max_restarts times; for t <= 8 an exhaustive
    search runs last. Raises BaseSolverExhaustedError when everything fails.
    """
    for key, x, y in demands:
        if not (0 <= x < t and 0 <= y < t):
            raise ValueError(f"demand {key!r} endpoint outside [0, {t})")
        if x == y:
            raise ValueError(f"demand {key!r} pairs vertex {x} with itself")
    if not demands:
        return {}
    rng = rng if rng is not None else Random(0)
    order = list(range(len(demands)))
    for _ in range(max_restarts + 1):
        routed = _greedy_pass(t, demands, order)
        if routed is not None:
            return routed
        rng.shuffle(order)
    if t <= _EXHAUSTIVE_MAX_T:
        routed = _exhaustive_pass(t, demands, _EXHAUSTIVE_TRAIL_CAP)
        if routed is not None:
            return routed
        raise BaseSolverExhaustedError(
            f"no edge-disjoint trail system with length <= {_EXHAUSTIVE_TRAIL_CAP} "
            f"exists on K_{t} for demands {_triage(demands)}"
        )
    raise BaseSolverExhaustedError(
        f"greedy routing failed after {max_restarts} restarts on K_{t} "
        f"for demands {_triage(demands)}"
    )


def _triage(demands: Sequence[tuple[Hashable, int, int]]) -> str:
    """Render the full instance so a failure report can be replayed."""
    body = " ".join(f"{x}-{y}" for _, x, y in demands)
    return f"[{body}]"


def _greedy_pass(
    t: int,
    demands: Sequence[tuple[Hashable, int, int]],
    order: Sequence[int],
) -> dict[Hashable, tuple[int, ...]] | None:
    used = bytearray(t * t)
    load = [0] * t
    trails: dict[Hashable, tuple[int, ...]] = {}

    def edge(a: int, b: int) -> int:
        return a * t + b if a < b else b * t + a

    def commit(key: Hashable, verts: tuple[int, ...]) -> None:
        for a, b in zip(verts, verts[1:]):
            used[edge(a, b)] = 1
            load[a] += 1
            load[b] += 1
        trails[key] = verts

    detour2: list[int] = []
    for idx in order:
        key, x, y = demands[idx]
        if not used[edge(x, y)]:
            commit(key, (x, y))
        else:
            detour2.append(idx)
    detour3: list[int] = []
    for idx in detour2:
        key, x, y = demands[idx]
        best = -1
        best_load = -1
        for w in range(t):
            if w == x or w == y or used[edge(x, w)] or used[edge(w, y)]:
                continue
            if best < 0 or load[w] < best_load:
                best, best_load = w, load[w]
        if best >= 0:
            commit(key, (x, best, y))
        else:
            detour3.append(idx)
    for idx in detour3:
        key, x, y = demands[idx]
        pick: tuple[int, int] | None = None
        pick_load = -1
        for w1 in range(t):
            if w1 == x or w1 == y or used[edge(x, w1)]:
                continue
            for w2 in range(t):
                if w2 == x or w2 == y or w2 == w1:
                    continue
                if used[edge(w1, w2)] or used[edge(w2, y)]:
                    continue
                cand = load[w1] + load[w2]
                if pick is None or cand < pick_load:
                    pick, pick_load = (w1, w2), cand
        if pick is None:
            return None
        commit(key, (x, pick[0], pick[1], y))
    return trails


def _exhaustive_pass(
    t: int,
    demands: Sequence[tuple[Hashable, int, int]],
    cap: int,
) -> dict[Hashable, tuple[int, ...]] | None:
    """Depth-first search over all edge-disjoint systems with bounded trail length."""
    used = bytearray(t * t)
    result: dict[Hashable, tuple[int, ...]] = {}

    def edge(a: int, b: int) -> int:
        return a * t + b if a < b else b * t + a

    def trails_between(x: int, y: int, budget: int):
        path = [x]
        path_edges: list[int] = []

        def extend(v: int, left: int):
            if left == 0:
                if v == y:
                    yield tuple(path)
                return
            for w in range(t):
                if w == v:
                    continue
                e = edge(v, w)
                if used[e] or e in path_edges:
                    continue
                path.append(w)
                path_edges.append(e)
                yield from extend(w, left - 1)
                path.pop()
                path_edges.pop()

        yield from extend(x, budget)

    def place(i: int) -> bool:
        if i == len(demands):
            return True
        key, x, y = demands[i]
        for budget in range(1, cap + 1):
            for verts in trails_between(x, y, budget):
                for a, b in zip(verts, verts[1:]):
                    used[edge(a, b)] = 1
                if place(i + 1):
                    result[key] = verts
                    return True
                for a, b in zip(verts, verts[1:]):
                    used[edge(a, b)] = 0
        return False

    return result if place(0) else None


def _derive_seed(seed: int, tag: str, index: int) -> int:
    """Stable per-subproblem seed, independent of scheduling and worker count."""
    digest = hashlib.blake2b(f"{seed}:{tag}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _oriented(tr: Trail, start: Vertex) -> Trail:
    if tr.vertices[0] == start:
        return tr
    if tr.vertices[-1] == start:
        return tr.reverse()
    raise ValueError(f"trail with ends {tr.ends!r} cannot start at {start!r}")


def stitch(
    rw: RewrittenDemand, column_trails: tuple[Trail, Trail], layer_trail: Trail
) -> Trail:
    """Concatenate connector and layer pieces into one endpoint-to-endpoint trail.

    Pieces are re-oriented as needed; an absent connector arrives as a
    single-vertex trail. Raises when the pieces do not chain.
    """
    head, tail = column_trails
    u = rw.connector_u.u if rw.connector_u is not None else rw.middle.u
    v = rw.connector_v.v if rw.connector_v is not None else rw.middle.v
    head = _oriented(head, u)
    middle = _oriented(layer_trail, head.vertices[-1])
    tail = _oriented(tail, middle.vertices[-1])
    if tail.vertices[-1] != v:
        raise ValueError(
            f"stitched trail for demand {rw.original_id} ends at "
            f"{tail.vertices[-1]!r}, expected {v!r}"
        )
    return Trail(head.vertices + middle.vertices[1:] + tail.vertices[1:])


def shorten_trail(tr: Trail) -> Trail:
    """Remove cycles at repeated vertices; keeps endpoints, never lengthens."""
    verts = list(tr.vertices)
    i = 0
    while i < len(verts):
        j = len(verts) - 1
        while j > i:
            if verts[j] == verts[i]:
                del verts[i + 1 : j + 1]
                break
            j -= 1
        i += 1
    return Trail(tuple(verts))


def solve(
    dg: DemandGraph,
    seed: int = 0,
    jobs: int = 1,
    unchecked: bool = False,
    shuffle_factors: bool = False,
    diagnostics: RouteDiagnostics | None = None,
) -> Routing:
    """Route every demand along a trail so that all trails are edge-disjoint.

    One-dimensional instances go straight to the complete-graph solver. In
    higher dimensions the cross-column demands are spread over layers by a
    2-factor decomposition, layers recurse, columns are solved directly, and
    the pieces are stitched per demand. `unchecked` skips the degree-budget
    feasibility gate (best effort; the result is still worth verifying).
    """
    if not dg.edges:
        return {}
    q = dg.q
    if q is None:
        delta = dg.max_degree
        if unchecked:
            q = max(2, delta + delta % 2)
        else:
            q = choose_q(dg.spec, delta)
    elif not unchecked:
        cap = dg.spec.t // 6 - 1
        if q > cap:
            raise InfeasibleBudgetError(
                f"budget q={q} exceeds floor(t/6)-1 = {cap} for t={dg.spec.t}"
            )
    work = dg if dg.q == q else DemandGraph(dg.spec, dg.edges, q)
    return _solve_rec(work, seed, jobs, shuffle_factors, diagnostics)


def _solve_rec(
    dg: DemandGraph,
    seed: int,
    jobs: int,
    shuffle_factors: bool,
    diagnostics: RouteDiagnostics | None,
) -> Routing:
    spec, q = dg.spec, dg.q
    assert q is not None
    if spec.n == 1:
        flat = [(d.id, d.u[0], d.v[0]) for d in dg.edges]
        raw = solve_complete(spec.t, flat, Random(_derive_seed(seed, "kt", 0)))
        return {key: Trail(tuple((x,) for x in verts)) for key, verts in raw.items()}

    intra, cross = split_demands(dg)
    if cross:
        aux = regularize(project(cross, spec), spec.t * q)
        host = Multigraph(
            aux.base.num_vertices,
            tuple(
                (vertex_rank(e.a, aux.base), vertex_rank(e.b, aux.base))
                for e in aux.edges
            ),
        )
        factors = two_factorization(host, spec.t * q // 2)
        shuffle_rng = Random(_derive_seed(seed, "factors", 0)) if shuffle_factors else None
        assignment = group_factors(factors, q, spec.t, shuffle_rng)
    else:
        aux = AuxGraph(GridSpec(spec.t, spec.n - 1), ())
        assignment = LayerAssignment(edge_layer={}, t=spec.t, q=q)
    layers, columns, rewrites = build_subproblems(dg, assignment, aux, diagnostics)

    base = spec.sub()
    column_order = sorted(columns, key=lambda cv: vertex_rank(cv, base))
    layer_order = [sp for sp in layers if sp.demands]

    def run_column(cv: Vertex) -> dict[Hashable, tuple[int, ...]]:
        sub_rng = Random(_derive_seed(seed, "column", vertex_rank(cv, base)))
        return solve_complete(spec.t, columns[cv].demands, sub_rng)

    def run_layer(sp: SubproblemLayer) -> Routing:
        sub = DemandGraph(base, tuple(sp.demands), q)
        return _solve_rec(sub, _derive_seed(seed, "layer", sp.k), 1, shuffle_factors, diagnostics)

    if jobs > 1 and len(column_order) + len(layer_order) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            col_futures = {cv: pool.submit(run_column, cv) for cv in column_order}
            layer_futures = {sp.k: pool.submit(run_layer, sp) for sp in layer_order}
            column_trails = {cv: f.result() for cv, f in col_futures.items()}
            layer_routes = {k: f.result() for k, f in layer_futures.items()}
    else:
        column_trails = {cv: run_column(cv) for cv in column_order}
        layer_routes = {sp.k: run_layer(sp) for sp in layer_order}

    middle_of: dict[int, Trail] = {}
    for sp in layer_order:
        for did, tr in layer_routes[sp.k].items():
            middle_of[did] = lift_trail(tr, sp.k, spec.t)

    def column_piece(cv: Vertex, key: ColumnKey) -> Trail:
        verts = column_trails[cv][key]
        return Trail(tuple(cv + (x,) for x in verts))

    routing: Routing = {}
    for d in dg.edges:
        rw = rewrites.get(d.id)
        if rw is None:
            routing[d.id] = _oriented(column_piece(column_of(d.u), (d.id, "d")), d.u)
        else:
            head = (
                column_piece(column_of(d.u), (d.id, "u"))
                if rw.connector_u is not None
                else Trail.single(d.u)
            )
            tail = (
                column_piece(column_of(d.v), (d.id, "v"))
                if rw.connector_v is not None
                else Trail.single(d.v)
            )
            routing[d.id] = stitch(rw, (head, tail), middle_of[d.id])
    return routing
