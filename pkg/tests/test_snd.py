import numpy as np
import pytest

from relnet.cactus import ordinary_demand_set
from relnet.graph import GraphError, with_weights
from relnet.model import Demand
from relnet.oracle import exact_optimum
from relnet.snd import (CutRequirement, all_pair_demands, check_weak_supermodularity,
                        forced_edges_kefts, kefts_feasible, solve_kefts, solve_snd_jain)

from conftest import B0, B1


def test_jain_small(c4, kfour):
    sol = solve_snd_jain(c4, [Demand(0, 2, 2)])
    assert sol.edges == {0, 1, 2, 3} and sol.weight == 4
    assert solve_snd_jain(kfour, [Demand(0, 1, 1)]).weight == 1


def test_jain_rejects_relative(c4):
    with pytest.raises(GraphError, match="relative"):
        solve_snd_jain(c4, [Demand(0, 2, 3)])


def test_jain_on_reduced_two_k4(tk):
    demands = ordinary_demand_set(tk, 1, 5)
    sol = solve_snd_jain(tk, demands, fixed=[B0, B1])
    assert {B0, B1} <= sol.edges
    w = tk.w.copy()
    w[[B0, B1]] = 0.0
    free = with_weights(tk, w)
    opt = exact_optimum(free, demands).weight
    assert opt == 10  # the two stars cost 5 per side once the bridge pair is free
    assert free.weight(sorted(sol.edges)) <= 2 * opt + 1e-9
    assert sol.weight <= 2 * 12


def test_rounds_logged(tk):
    sol = solve_snd_jain(tk, [Demand(0, 5, 2)])
    assert sol.parts["rounds"] and all(r["fixed"] for r in sol.parts["rounds"])


def test_kefts_examples(c4, kfour):
    assert solve_kefts(c4, 2).edges == {0, 1, 2, 3}
    assert solve_kefts(kfour, 3).edges == set(range(6))
    sol = solve_kefts(c4, 1)
    opt = exact_optimum(c4, all_pair_demands(4, 1)).weight
    assert opt == 3
    assert kefts_feasible(c4, sol.edges, 1) and sol.weight <= 2 * opt


@pytest.mark.parametrize("k", [1, 2, 3])
def test_forced_methods_agree(tk, k):
    assert forced_edges_kefts(tk, k, "flow") == forced_edges_kefts(tk, k, "brute")


def test_forced_kefts(c4, tk):
    assert forced_edges_kefts(c4, 2) == {0, 1, 2, 3}
    assert forced_edges_kefts(tk, 2) == {B0, B1}


def test_kefts_feasible_backends(kfour, backend):
    assert kefts_feasible(kfour, range(6), 3, backend)
    assert not kefts_feasible(kfour, range(5), 3, backend)


def test_weak_supermodularity_examples(c4, kfour):
    assert check_weak_supermodularity(CutRequirement(c4, "kefts", k=2), {0, 1}, {1, 2}) == "supermodular"
    assert check_weak_supermodularity(CutRequirement(kfour, "kefts", k=3), {0}, {0, 1}) == "supermodular"


def test_family_membership(c4):
    req = CutRequirement(c4, "kefts", k=2, F=frozenset(range(4)))
    assert not req.in_family(frozenset({0}))
    with pytest.raises(GraphError):
        check_weak_supermodularity(req, {0}, {1})


def test_snd_requirement_values(tk):
    req = CutRequirement(tk, "snd", demands=(Demand(0, 1, 3), Demand(4, 5, 2)))
    assert req.value(frozenset({0})) == 3
    assert req.value(frozenset({4})) == 2
    assert req.value(frozenset({2})) == 0


def test_random_supermodularity_probes():
    from relnet.corpus import random_multigraph
    rng = np.random.default_rng(11)
    bad = 0
    for _ in range(5):
        G = random_multigraph(rng, max_n=7)
        req = CutRequirement(G, "kefts", k=2, F=forced_edges_kefts(G, 2))
        probes = 0
        for _ in range(2000):
            A = frozenset(np.nonzero(rng.random(G.n) < 0.5)[0].tolist())
            B = frozenset(np.nonzero(rng.random(G.n) < 0.5)[0].tolist())
            if req.in_family(A) and req.in_family(B):
                probes += 1
                bad += check_weak_supermodularity(req, A, B) == "violation"
            if probes == 200:
                break
    assert bad == 0
