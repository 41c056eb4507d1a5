import pytest

from relnet.graph import GraphError
from relnet.oracle import brute_force_important_separators
from relnet.separators import (audit_hierarchy, build_h_chain, build_hierarchy,
                               enumerate_important_separators, find_important_separator, is_important)

from conftest import B0, B1


def test_find_important_separator(lol, tk, kfour):
    sep = find_important_separator(lol, [0], [3], 1)
    assert sep.edges == {0} and sep.reachable == {0}
    sep = find_important_separator(tk, [1], [5], 2)
    assert sep.edges == {B0, B1} and sep.reachable == {0, 1, 2, 3}
    assert find_important_separator(kfour, [0], [3], 2) is None


def test_enumerate(lol, tk, c4):
    assert [s.edges for s in enumerate_important_separators(lol, [0], [3], 2)] == [{0}]
    assert [s.edges for s in enumerate_important_separators(tk, [1], [5], 2)] == [{B0, B1}]
    assert enumerate_important_separators(c4, [0], [2], 1) == []


def test_far_edges_not_important(lol):
    # {f3} and the doubled middle pair separate too, but f0 is closer to the source
    assert not is_important(lol, [0], [3], [3])
    assert not is_important(lol, [0], [3], [1, 2])
    assert is_important(lol, [0], [3], [0])


def test_brute_force_agrees(lol, tk, kfour, c4):
    for G, X, Y in [(lol, [0], [3]), (tk, [1], [5]), (kfour, [0], [3]), (c4, [0], [2]), (c4, [0, 1], [3])]:
        for d in (1, 2, 3):
            assert enumerate_important_separators(G, X, Y, d) == brute_force_important_separators(G, X, Y, d)


def test_h_chain_lolly(lol):
    ch = build_h_chain(lol, [0], [3], 1)
    assert ch.components == [{0}, {1, 2}, {3}]
    assert ch.separators == [{0}, {3}]
    assert ch.left[0] == {0} and ch.right[-1] == {3}


def test_h_chain_two_k4(tk, kfour):
    ch = build_h_chain(tk, [1], [5], 2)
    assert ch.components == [set(range(4)), set(range(4, 8))]
    assert ch.separators == [{B0, B1}]
    ch = build_h_chain(kfour, [0], [3], 2)
    assert ch.components == [set(range(4))] and ch.separators == []


def test_h_chain_precondition(c4):
    with pytest.raises(GraphError):
        build_h_chain(c4, [0], [2], 3)


def test_hierarchy_two_k4(tk):
    H = build_hierarchy(tk, 1, 5, 3)
    assert sorted(H.levels) == [1, 2]
    assert [c.vertices for c in H.levels[2]] == [set(range(4)), set(range(4, 8))]
    assert H.separator_edges == {B0, B1}
    assert audit_hierarchy(H) == []
    assert sorted(build_hierarchy(tk, 1, 5, 2).levels) == [1]


def test_hierarchy_cycle(c4):
    H = build_hierarchy(c4, 0, 2, 3)
    assert audit_hierarchy(H) == []
    assert H.separator_edges == {0, 1, 2, 3}
    assert set().union(*(c.vertices for c in H.levels[2])) == {0, 1, 2, 3}


def test_hierarchy_json(tk):
    out = build_hierarchy(tk, 1, 5, 3).to_json()
    assert (out["schema"], out["mode"], out["separator_edges"]) == (1, "chain", [B0, B1])
    level2 = out["levels"][1]["components"]
    assert [c["right_separator"] for c in level2] == [[B0, B1], []]
    assert level2[0]["right_boundary"] == [0, 3] and level2[1]["left_boundary"] == [4, 7]
