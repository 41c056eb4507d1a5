import pytest

from relnet.graph import (GraphError, bridges, build_graph, connected, contract, cut_size, delta,
                          format_graph, induced_subgraph, is_2_edge_connected, parse_graph, reachable)


def test_build_cycle(c4):
    assert c4.n == 4 and c4.m == 4
    assert c4.edges()[0] == (0, 1, 1.0)
    assert c4.edges()[3] == (3, 0, 1.0)


def test_build_k4(kfour):
    assert kfour.m == 6
    assert all(kfour.degree(v) == 3 for v in range(4))


def test_self_loop_rejected():
    with pytest.raises(GraphError, match="self-loop"):
        build_graph(3, [(0, 1, 1), (1, 1, 1)])


@pytest.mark.parametrize("edges,msg", [([(0, 5, 1)], "range"), ([(0, 1, -1)], "negative")])
def test_bad_edges_rejected(edges, msg):
    with pytest.raises(GraphError, match=msg):
        build_graph(3, edges)


def test_delta(c4, kfour):
    assert delta(c4, {0}) == {0, 3}
    assert len(delta(kfour, {0, 1})) == 4
    with pytest.raises(GraphError):
        delta(c4, {0, 1, 2, 3})
    with pytest.raises(GraphError):
        delta(c4, set())


def test_cut_size_restricted(c4):
    assert cut_size(c4, {0}) == 2
    assert cut_size(c4, {0}, edges=[0]) == 1


def test_induced_subgraph(c4, kfour, tk):
    v = induced_subgraph(c4, {0, 1})
    assert v.graph.m == 1 and v.lift_edges([0]) == {0}
    assert induced_subgraph(kfour, {0, 1, 2}).graph.m == 3
    half = induced_subgraph(tk, range(4))
    assert half.graph.n == 4 and half.graph.m == 6


def test_contract(c4, tk, kfour):
    v = contract(c4, [{0, 1}])
    assert v.graph.n == 3
    assert v.lift_edges(range(v.graph.m)) == {1, 2, 3}
    v = contract(tk, [{4, 5, 6, 7}])
    assert v.graph.n == 5 and v.graph.m == 8
    v = contract(kfour, [{0, 1}, {2, 3}])
    assert v.graph.n == 2 and v.graph.m == 4


def test_connected_after_removal(c4):
    assert connected(c4, {0}, {2}, removed={0})
    assert not connected(c4, {0}, {2}, removed={0, 2})
    assert connected(c4, {0}, {2})
    assert reachable(c4, {0}, removed={0, 3}) == {0}


def test_two_edge_connectivity(c4, lol, isolated_pair):
    assert is_2_edge_connected(c4) == (True, frozenset())
    ok, br = is_2_edge_connected(lol)
    assert not ok and br == {0, 3}
    assert bridges(lol) == {0, 3}
    assert not is_2_edge_connected(isolated_pair)[0]


def test_parse_round_trip(tk):
    G = parse_graph(format_graph(tk))
    assert G.edges() == tk.edges()


@pytest.mark.parametrize("text,msg", [
    ("", "empty"),
    ("2 1\n0 1\n", "line 2"),
    ("2 2\n0 1 1\n", "declares 2"),
    ("3 1\n# c\n1 1 2\n", "line 3: self-loop"),
    ("2 1\n0 x 1\n", "line 2"),
])
def test_parse_errors(text, msg):
    with pytest.raises(GraphError, match=msg):
        parse_graph(text)
