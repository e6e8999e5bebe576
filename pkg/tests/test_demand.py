from collections import Counter
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridpair import (
    AuxEdge,
    AuxGraph,
    DemandEdge,
    GridSpec,
    choose_q,
    from_pairing,
    project,
    random_demand_multigraph,
    random_pairing,
    regularize,
    split_demands,
)
from gridpair.errors import InfeasibleBudgetError


def test_from_pairing_single_pair():
    dg = from_pairing(GridSpec(2, 1), [((0,), (1,))])
    assert len(dg.edges) == 1
    assert dg.max_degree == 1
    assert dg.q is None


def test_from_pairing_two_pairs():
    dg = from_pairing(GridSpec(3, 2), [((0, 0), (2, 2)), ((0, 1), (1, 0))])
    assert dg.max_degree == 1
    assert len(dg.edges) == 2


def test_from_pairing_rejects_self_demand():
    with pytest.raises(ValueError):
        from_pairing(GridSpec(2, 1), [((0,), (0,))])


def test_from_pairing_rejects_out_of_range():
    with pytest.raises(ValueError):
        from_pairing(GridSpec(2, 1), [((0,), (5,))])


def test_choose_q_examples():
    assert choose_q(GridSpec(18, 2), 1) == 2
    assert choose_q(GridSpec(30, 2), 3) == 4
    with pytest.raises(InfeasibleBudgetError):
        choose_q(GridSpec(17, 1), 1)


def test_choose_q_rounds_odd_up_and_respects_cap():
    assert choose_q(GridSpec(30, 1), 4) == 4
    with pytest.raises(InfeasibleBudgetError):
        choose_q(GridSpec(30, 1), 5)  # needs 6 > floor(30/6)-1 = 4


def test_split_demands_examples():
    spec = GridSpec(3, 2)
    dg = from_pairing(spec, [((0, 1), (0, 2)), ((0, 1), (1, 1))])
    intra, cross = split_demands(dg)
    assert [d.id for d in intra] == [0]
    assert [d.id for d in cross] == [1]


def test_split_demands_n1_is_all_intra():
    dg = from_pairing(GridSpec(4, 1), [((0,), (1,)), ((2,), (3,))])
    intra, cross = split_demands(dg)
    assert len(intra) == 2 and not cross


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_split_is_a_partition(seed):
    spec = GridSpec(4, 2)
    rng = Random(seed)
    dg = from_pairing(spec, random_pairing(spec, rng))
    intra, cross = split_demands(dg)
    assert len(intra) + len(cross) == len(dg.edges)
    assert Counter(d.id for d in intra + cross) == Counter(d.id for d in dg.edges)


def test_project_example():
    spec = GridSpec(4, 3)
    d = DemandEdge(7, (0, 1, 0), (2, 3, 1))
    aux = project([d], spec)
    assert aux.base == GridSpec(4, 2)
    assert aux.edges == (AuxEdge((0, 1), (2, 3), 7),)


def test_project_keeps_parallel_edges():
    spec = GridSpec(3, 2)
    ds = [DemandEdge(0, (0, 0), (1, 1)), DemandEdge(1, (0, 2), (1, 0))]
    aux = project(ds, spec)
    assert len(aux.edges) == 2
    assert {e.origin for e in aux.edges} == {0, 1}
    assert all({e.a, e.b} == {(0,), (1,)} for e in aux.edges)


def test_project_rejects_intra_column_demand():
    spec = GridSpec(3, 2)
    with pytest.raises(ValueError):
        project([DemandEdge(0, (0, 0), (0, 1))], spec)


def test_projection_degree_stays_under_t_times_q():
    spec = GridSpec(18, 2)
    for seed in range(100):
        dg = from_pairing(spec, random_pairing(spec, Random(seed)))
        _, cross = split_demands(dg)
        aux = project(cross, spec)
        assert len(aux.edges) == len(cross)
        assert aux.max_degree <= spec.t * 2  # q = 2 for a perfect pairing


def test_regularize_identity_when_already_regular():
    base = GridSpec(2, 1)
    aux = AuxGraph(base, (AuxEdge((0,), (1,), 0), AuxEdge((0,), (1,), 1)))
    out = regularize(aux, 2)
    assert out.edges == aux.edges


def test_regularize_balances_two_deficient_vertices():
    base = GridSpec(3, 1)
    # degrees: (0,)=2, (1,)=1, (2,)=1 against target 2
    aux = AuxGraph(base, (AuxEdge((0,), (1,), 0), AuxEdge((0,), (2,), 1)))
    out = regularize(aux, 2)
    deg = out.degrees()
    assert all(deg[v] == 2 for v in base.vertices())
    dummies = [e for e in out.edges if e.is_dummy]
    assert dummies == [AuxEdge((1,), (2,))]


def test_regularize_pads_lone_vertex_with_loops():
    base = GridSpec(2, 1)
    aux = AuxGraph(base, (AuxEdge((0,), (1,), 0),))
    out = regularize(aux, 5 * 2)  # deficiency 9 on each: pair 9 edges... use even target
    deg = out.degrees()
    assert all(deg[v] == 10 for v in base.vertices())


def test_regularize_loops_only_case():
    base = GridSpec(2, 1)
    # (0,) already full at 4; (1,) deficient by 4 -> two dummy loops
    aux = AuxGraph(base, tuple(AuxEdge((0,), (0,)) for _ in range(2)))
    out = regularize(aux, 4)
    added = out.edges[2:]
    assert added == (AuxEdge((1,), (1,)), AuxEdge((1,), (1,)))
    assert all(d == 4 for d in out.degrees().values())


def test_regularize_rejects_overfull_vertex():
    base = GridSpec(2, 1)
    aux = AuxGraph(base, tuple(AuxEdge((0,), (1,), i) for i in range(3)))
    with pytest.raises(ValueError):
        regularize(aux, 2)


@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
@settings(max_examples=30, deadline=None)
def test_regularize_property(seed, half_q):
    q = 2 * half_q
    spec = GridSpec(6, 2)
    rng = Random(seed)
    dg = from_pairing(spec, random_demand_multigraph(spec, q, rng))
    _, cross = split_demands(dg)
    aux = project(cross, spec)
    target = spec.t * q
    out = regularize(aux, target)
    deg = out.degrees()
    assert all(deg[v] == target for v in out.base.vertices())
    assert [e for e in out.edges if not e.is_dummy] == list(aux.edges)
    assert all(e.a != e.b or e.is_dummy for e in out.edges)


def test_random_pairing_covers_every_vertex_once():
    spec = GridSpec(4, 2)
    pairs = random_pairing(spec, Random(5))
    seen = [v for p in pairs for v in p]
    assert sorted(seen) == sorted(spec.vertices())


def test_random_pairing_rejects_odd_vertex_count():
    with pytest.raises(ValueError):
        random_pairing(GridSpec(3, 1), Random(0))


def test_random_demand_multigraph_hits_budget_exactly():
    spec = GridSpec(18, 1)
    pairs = random_demand_multigraph(spec, 4, Random(11))
    deg = Counter()
    for u, v in pairs:
        deg[u] += 1
        deg[v] += 1
    assert max(deg.values()) == 4
    assert all(d <= 4 for d in deg.values())


def test_demand_graph_rejects_duplicate_ids():
    from gridpair import DemandEdge, DemandGraph

    spec = GridSpec(3, 1)
    with pytest.raises(ValueError):
        DemandGraph(spec, (DemandEdge(0, (0,), (1,)), DemandEdge(0, (1,), (2,))))


def test_demand_graph_budget_validation():
    spec = GridSpec(18, 1)
    dg = from_pairing(spec, [((0,), (1,))])
    assert dg.with_budget(2).q == 2
    with pytest.raises(ValueError):
        dg.with_budget(3)  # odd
    with pytest.raises(ValueError):
        from_pairing(spec, [((0,), (1,)), ((0,), (1,)), ((0,), (1,))]).with_budget(2)
