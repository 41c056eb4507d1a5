from itertools import combinations

import numpy as np
from hypothesis import HealthCheck, given, settings, strategies as st

from relnet import _kernels as K
from relnet.cactus import build_cactus, three_classes
from relnet.corpus import random_multigraph, random_subgraph
from relnet.flow import decompose_paths, edge_connectivity, max_flow
from relnet.graph import build_graph, components, delta, format_graph, parse_graph
from relnet.model import Demand
from relnet.oracle import (brute_force_important_separators, exact_optimum, feasible_by_cut_cover,
                           feasible_by_fault_enumeration, replay_witness)
from relnet.rsnd3 import solve_3rsnd
from relnet.sdk import ratio_bound, solve_sdk
from relnet.separators import enumerate_important_separators, is_important
from relnet.snd import CutRequirement, check_weak_supermodularity, forced_edges_kefts, kefts_feasible, solve_kefts

seeds = st.integers(0, 2**32 - 1)
common = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def _graph(seed, max_n=7, max_m=12):
    return random_multigraph(np.random.default_rng(seed), max_n=max_n, max_m=max_m)


def _pair(G, seed):
    rng = np.random.default_rng(seed + 1)
    s, t = rng.choice(G.n, size=2, replace=False)
    return int(s), int(t)


@st.composite
def edge_lists(draw):
    n = draw(st.integers(2, 6))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    edges = draw(st.lists(st.tuples(pairs, st.integers(0, 20)), max_size=10))
    return n, [(a, b, float(w)) for (a, b), w in edges]


@common
@given(edge_lists())
def test_format_parse_round_trip(data):
    n, edges = data
    G = build_graph(n, edges)
    H = parse_graph(format_graph(G))
    assert H.n == G.n and H.edges() == G.edges()


@common
@given(seeds)
def test_flow_certificate(seed):
    G = _graph(seed)
    s, t = _pair(G, seed)
    res = max_flow(G, [s], [t])
    assert s in res.source_side and t not in res.source_side
    assert delta(G, res.source_side) == res.min_cut
    assert res.value == len(res.min_cut)
    paths = decompose_paths(G, res, [s], [t])
    assert len(paths) == res.value
    assert len({e for p in paths for e in p}) == sum(map(len, paths))


@common
@given(seeds)
def test_three_classes_partition(seed):
    G = _graph(seed, max_n=6)
    classes = three_classes(G)
    assert sorted(v for c in classes for v in c) == list(range(G.n))
    label = {v: i for i, c in enumerate(classes) for v in c}
    for u, v in combinations(range(G.n), 2):
        assert (label[u] == label[v]) == (edge_connectivity(G, [u], [v], limit=3) >= 3)


@common
@given(seeds)
def test_cactus_cycles_encode_two_cuts(seed):
    G = _graph(seed, max_n=6, max_m=10)
    brute = {frozenset(p) for p in combinations(range(G.m), 2) if len(components(G, removed=p)) > 1}
    assert build_cactus(G).same_cycle_pairs() == brute


@common
@given(seeds, st.integers(1, 3))
def test_fault_and_cut_verdicts_agree(seed, k):
    G = _graph(seed)
    s, t = _pair(G, seed)
    H = random_subgraph(np.random.default_rng(seed), G.m)
    d = Demand(s, t, k)
    a = feasible_by_fault_enumeration(G, H, [d])
    b = feasible_by_cut_cover(G, H, d)
    assert a.feasible == b.feasible
    for rep in (a, b):
        if not rep.feasible:
            assert replay_witness(G, H, rep.witness)


@common
@given(seeds, st.integers(1, 3))
def test_feasibility_monotone(seed, k):
    G = _graph(seed)
    s, t = _pair(G, seed)
    rng = np.random.default_rng(seed)
    H = random_subgraph(rng, G.m)
    bigger = sorted(set(H) | set(random_subgraph(rng, G.m, p=0.3)))
    d = [Demand(s, t, k)]
    if feasible_by_fault_enumeration(G, H, d).feasible:
        assert feasible_by_fault_enumeration(G, bigger, d).feasible


@common
@given(seeds)
def test_3rsnd_feasible_and_bounded(seed):
    G = _graph(seed, max_m=11)
    s, t = _pair(G, seed)
    d = [Demand(s, t, 3)]
    sol = solve_3rsnd(G, d)
    assert feasible_by_fault_enumeration(G, sol.edges, d).feasible
    assert abs(sol.weight - sum(G.w[sorted(sol.edges)])) < 1e-9
    assert sol.weight <= 2 * exact_optimum(G, d).weight + 1e-6


@common
@given(seeds, st.integers(2, 4))
def test_sdk_feasible(seed, k):
    G = _graph(seed, max_m=11)
    s, t = _pair(G, seed)
    sol = solve_sdk(G, s, t, k)
    assert feasible_by_fault_enumeration(G, sol.edges, [Demand(s, t, k)]).feasible


@common
@given(seeds, st.integers(1, 3))
def test_important_separators(seed, d):
    G = _graph(seed, max_n=6, max_m=10)
    s, t = _pair(G, seed)
    got = enumerate_important_separators(G, [s], [t], d)
    assert got == brute_force_important_separators(G, [s], [t], d)
    assert len(got) <= 4 ** d
    for sep in got:
        assert is_important(G, [s], [t], sep.edges)


@common
@given(seeds, st.integers(1, 3))
def test_kefts(seed, k):
    G = _graph(seed, max_n=6, max_m=10)
    sol = solve_kefts(G, k)
    assert kefts_feasible(G, sol.edges, k)
    assert forced_edges_kefts(G, k) <= sol.edges


@common
@given(seeds, st.integers(1, 3), st.data())
def test_weak_supermodularity(seed, k, data):
    G = _graph(seed, max_n=6, max_m=10)
    req = CutRequirement(G, "kefts", k=k, F=forced_edges_kefts(G, k))
    subsets = st.frozensets(st.integers(0, G.n - 1), min_size=1, max_size=G.n - 1)
    A, B = data.draw(subsets), data.draw(subsets)
    if req.in_family(A) and req.in_family(B):
        assert check_weak_supermodularity(req, A, B) != "violation"


@common
@given(seeds)
def test_kernel_backends_agree(seed):
    G = _graph(seed)
    rng = np.random.default_rng(seed)
    sets = rng.integers(1, 1 << G.n, size=20, dtype=np.int64)
    alive = rng.random(G.m) < 0.5
    got = [K.kernel("cut_values", b)(G.n, G.eu, G.ev, alive, sets).tolist() for b in ("numba", "numpy")]
    assert got[0] == got[1]


@given(st.integers(2, 8))
def test_ratio_recurrence(k):
    assert ratio_bound(k) == (4 ** (k - 1) + 1) * ratio_bound(k - 1) + 1
