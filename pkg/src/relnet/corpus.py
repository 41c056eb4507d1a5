"""Named fixtures and seeded instance generators for tests and reports."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import Graph, build_graph, is_2_edge_connected, is_connected
from .model import Demand


def cycle4() -> Graph:
    return build_graph(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)])


def k4() -> Graph:
    return build_graph(4, [(a, b, 1.0) for a, b in combinations(range(4), 2)])


def lolly() -> Graph:
    """Path 0-1-2-3 whose middle edge is doubled; the outer edges are bridges."""
    return build_graph(4, [(0, 1, 1.0), (1, 2, 1.0), (1, 2, 1.0), (2, 3, 1.0)])


def two_k4() -> Graph:
    """K4 on 0..3 and on 4..7 (edge ids 0-5 and 6-11) joined by 3-4 (id 12) and 0-7 (id 13)."""
    edges = [(a, b, 1.0) for a, b in combinations(range(4), 2)]
    edges += [(a, b, 1.0) for a, b in combinations(range(4, 8), 2)]
    edges += [(3, 4, 1.0), (0, 7, 1.0)]
    return build_graph(8, edges)


FIXTURES = {"c4": cycle4, "k4": k4, "lolly": lolly, "two_k4": two_k4}


@dataclass(frozen=True)
class Instance:
    name: str
    G: Graph
    demands: tuple[Demand, ...] = ()


def atlas_graphs(min_n: int = 3, max_n: int = 6, two_edge_connected: bool = True) -> list[tuple[str, Graph]]:
    """Every simple graph from the networkx atlas on ``min_n..max_n`` vertices
    that is connected (and bridgeless when asked), with unit weights."""
    import networkx as nx

    out = []
    for i, g in enumerate(nx.graph_atlas_g()):
        n = g.number_of_nodes()
        if not min_n <= n <= max_n:
            continue
        G = build_graph(n, [(min(a, b), max(a, b), 1.0) for a, b in sorted(g.edges())])
        if not is_connected(G):
            continue
        if two_edge_connected and not is_2_edge_connected(G)[0]:
            continue
        out.append((f"atlas{i}", G))
    return out


def random_multigraph(rng: np.random.Generator, max_n: int = 8, max_m: int = 14,
                      max_weight: int = 9) -> Graph:
    """2-edge-connected multigraph: a random Hamiltonian cycle plus random
    extra edges (parallels allowed), integer weights."""
    n = int(rng.integers(3, max_n + 1))
    m = int(rng.integers(n, max(n, max_m) + 1))
    order = rng.permutation(n)
    pairs = [(int(order[i]), int(order[(i + 1) % n])) for i in range(n)]
    while len(pairs) < m:
        a, b = rng.choice(n, size=2, replace=False)
        pairs.append((int(a), int(b)))
    w = rng.integers(1, max_weight + 1, size=m)
    return build_graph(n, [(min(a, b), max(a, b), float(c)) for (a, b), c in zip(pairs, w)])


def random_weights(G: Graph, rng: np.random.Generator, max_weight: int = 9) -> Graph:
    w = rng.integers(1, max_weight + 1, size=G.m).astype(float)
    return build_graph(G.n, [(a, b, float(c)) for (a, b, _), c in zip(G.edges(), w)])


def random_demands(G: Graph, rng: np.random.Generator, max_k: int = 3, count: int | None = None) -> tuple[Demand, ...]:
    count = int(rng.integers(1, 4)) if count is None else count
    out = []
    for _ in range(count):
        a, b = rng.choice(G.n, size=2, replace=False)
        out.append(Demand(int(min(a, b)), int(max(a, b)), int(rng.integers(1, max_k + 1))))
    return tuple(out)


def rsnd_corpus(seed: int = 0, random_count: int = 200, max_k: int = 3) -> list[Instance]:
    """Atlas graphs (random weights) and random multigraphs, each with a random demand set."""
    rng = np.random.default_rng(seed)
    out = []
    for name, G in atlas_graphs():
        G = random_weights(G, rng)
        out.append(Instance(name, G, random_demands(G, rng, max_k)))
    for i in range(random_count):
        G = random_multigraph(rng)
        out.append(Instance(f"random{i}", G, random_demands(G, rng, max_k)))
    return out


def random_subgraph(rng: np.random.Generator, m: int, must: frozenset[int] = frozenset(), p: float = 0.7) -> list[int]:
    keep = rng.random(m) < p
    return sorted(set(np.nonzero(keep)[0].tolist()) | set(must))
