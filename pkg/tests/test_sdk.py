import pytest

from relnet.graph import GraphError
from relnet.model import Demand
from relnet.oracle import exact_optimum, feasible_by_fault_enumeration
from relnet.sdk import GroupDemand, component_demands, group_demands, ratio_bound, solution_json, solve_sdk
from relnet.graph import build_graph
from relnet.separators import Component, Hierarchy, build_hierarchy

from conftest import B0, B1


def test_ratio_bound_table():
    assert [ratio_bound(k) for k in (1, 2, 3, 4)] == [1, 6, 103, 6696]
    with pytest.raises(ValueError):
        ratio_bound(0)


def test_two_k4_group_demands(tk):
    H = build_hierarchy(tk, 1, 5, 3)
    got = {(tuple(sorted(g.X)), tuple(sorted(g.Y)), g.d, g.kind) for g in group_demands(H, 2, 0)}
    assert got == {((1,), (0,), 2, "pair"), ((1,), (3,), 2, "pair"),
                   ((1,), (0, 3), 3, "flow"), ((1,), (0, 3), 2, "final")}


def test_full_boundary_pair_excluded(tk):
    H = build_hierarchy(tk, 1, 5, 3)
    for comp in H.all_components():
        pairs = [g for g in component_demands(H, comp) if g.kind == "pair"]
        assert all((g.X, g.Y) != (comp.left, comp.right) for g in pairs)
        assert all(1 <= g.d <= 2 for g in pairs)


def _three_edge_separators():
    # outer 0,1,2 | boundary 3,4,5 | boundary 6,7,8 | outer 9,10,11
    edges = [(0, 3, 1), (1, 4, 1), (2, 5, 1), (6, 9, 1), (7, 10, 1), (8, 11, 1)]
    edges += [(a, b, 1) for a in (3, 4, 5) for b in (6, 7, 8)]
    G = build_graph(12, edges)
    comp = Component(3, 0, frozenset(range(3, 9)), frozenset({3, 4, 5}), frozenset({6, 7, 8}),
                     frozenset({0, 1, 2}), frozenset({3, 4, 5}), 0)
    return Hierarchy(G, 0, 11, 4, {3: [comp]}), comp


def test_group_demand_formula():
    H, comp = _three_edge_separators()
    got = {(tuple(sorted(g.X)), tuple(sorted(g.Y))): g.d for g in component_demands(H, comp) if g.kind == "pair"}
    # one separator edge on each side: 4 + 1 + 1 - 3 - 3 = 0, dropped
    assert ((3,), (6,)) not in got
    assert got[(3, 4), (6,)] == 1
    assert got[(3, 4), (6, 7)] == 2
    assert got[(3, 4, 5), (6, 7)] == 3
    assert max(got.values()) == 3


def test_small_cases(c4):
    assert solve_sdk(c4, 0, 2, 1).weight == 2
    assert solve_sdk(c4, 0, 2, 2).weight == 4


@pytest.mark.parametrize("k", [2, 3, 4])
def test_two_k4(tk, k):
    d = [Demand(1, 5, k)]
    sol = solve_sdk(tk, 1, 5, k)
    assert feasible_by_fault_enumeration(tk, sol.edges, d).feasible
    opt = exact_optimum(tk, d).weight
    assert opt <= sol.weight <= 2 * opt


def test_breakdown_and_json(tk):
    sol = solve_sdk(tk, 1, 5, 3)
    out = solution_json(tk, sol, 3)
    assert out["schema"] == 1 and out["ratio_bound"] == 103 and out["method"] == "hierarchy"
    assert out["breakdown"][0] == {"kind": "separators", "edges": [B0, B1], "weight": 2.0}
    covered = set().union(*(b["edges"] for b in out["breakdown"]))
    assert covered == set(out["edges"])


def test_no_peel_same_result_on_2ec(tk):
    assert solve_sdk(tk, 1, 5, 3, peel_bridges=False).edges == solve_sdk(tk, 1, 5, 3).edges


def test_input_errors(lol, c4):
    with pytest.raises(GraphError):
        solve_sdk(lol, 0, 3, 2)
    with pytest.raises(GraphError):
        solve_sdk(c4, 1, 1, 2)
    with pytest.raises(GraphError):
        solve_sdk(c4, 0, 2, 0)


def test_group_demand_defaults():
    g = GroupDemand(frozenset({0}), frozenset({1}), 2)
    assert g.kind == "pair" and g.S_X == frozenset()
