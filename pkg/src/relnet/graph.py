"""Immutable weighted multigraphs over dense integer ids.

Edges keep the id they were given at construction.  Derived graphs
(induced subgraphs, contractions) are new objects that carry an explicit
map from their edge ids back to the ids of the graph they came from.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

WEIGHT_TOL = 1e-9


class GraphError(ValueError):
    """Malformed graph input or an invalid vertex/edge set argument."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected multigraph with nonnegative edge weights.

    ``eu[e]``, ``ev[e]`` are the endpoints of edge ``e`` and ``w[e]`` its weight.
    """

    n: int
    eu: np.ndarray
    ev: np.ndarray
    w: np.ndarray

    @property
    def m(self) -> int:
        return int(self.eu.shape[0])

    @cached_property
    def adj(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, ``(edge_id, neighbour)`` pairs in edge-id order."""
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for e in range(self.m):
            a, b = int(self.eu[e]), int(self.ev[e])
            out[a].append((e, b))
            out[b].append((e, a))
        return tuple(tuple(x) for x in out)

    def endpoints(self, e: int) -> tuple[int, int]:
        return int(self.eu[e]), int(self.ev[e])

    def edges(self) -> list[tuple[int, int, float]]:
        return [(int(a), int(b), float(c)) for a, b, c in zip(self.eu, self.ev, self.w)]

    def weight(self, edges: Iterable[int]) -> float:
        idx = np.fromiter(edges, dtype=np.int64)
        return float(self.w[idx].sum()) if idx.size else 0.0

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False)
class View:
    """A derived graph plus id maps back to its parent.

    ``vertex_map[old]`` is the new vertex (or -1 when dropped) and
    ``edge_map[new]`` the parent edge id (or -1 for edges with no parent).
    """

    graph: Graph
    vertex_map: np.ndarray
    edge_map: np.ndarray

    def lift_edges(self, edges: Iterable[int]) -> frozenset[int]:
        return frozenset(int(self.edge_map[e]) for e in edges if self.edge_map[e] >= 0)

    def vertices_of(self, old: Iterable[int]) -> frozenset[int]:
        return frozenset(int(self.vertex_map[v]) for v in old if self.vertex_map[v] >= 0)


def build_graph(n: int, edge_list: Sequence[tuple[int, int, float]]) -> Graph:
    """Build a graph; edge ids follow input order."""
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    eu = np.zeros(len(edge_list), dtype=np.int64)
    ev = np.zeros(len(edge_list), dtype=np.int64)
    w = np.zeros(len(edge_list), dtype=np.float64)
    for i, item in enumerate(edge_list):
        if len(item) == 2:
            a, b, c = item[0], item[1], 1.0
        else:
            a, b, c = item
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"edge {i}: endpoint out of range in ({a}, {b}) for n={n}")
        if a == b:
            raise GraphError(f"edge {i}: self-loop at vertex {a}")
        if not c >= 0:
            raise GraphError(f"edge {i}: negative or invalid weight {c}")
        eu[i], ev[i], w[i] = a, b, c
    for arr in (eu, ev, w):
        arr.setflags(write=False)
    return Graph(n, eu, ev, w)


def _as_set(G: Graph, A: Iterable[int], what: str = "vertex set") -> frozenset[int]:
    S = frozenset(int(a) for a in A)
    for a in S:
        if not 0 <= a < G.n:
            raise GraphError(f"{what} contains out-of-range vertex {a}")
    return S


def delta(G: Graph, A: Iterable[int]) -> frozenset[int]:
    """Edges with exactly one endpoint in ``A``."""
    S = _as_set(G, A)
    if not S or len(S) == G.n:
        raise GraphError("delta needs a nonempty proper vertex subset")
    return frozenset(e for e in range(G.m) if (int(G.eu[e]) in S) != (int(G.ev[e]) in S))


def cut_size(G: Graph, A: Iterable[int], edges: Iterable[int] | None = None) -> int:
    """``|delta(A)|``, optionally restricted to an edge subset; no emptiness check."""
    S = frozenset(A)
    pool = range(G.m) if edges is None else edges
    return sum(1 for e in pool if (int(G.eu[e]) in S) != (int(G.ev[e]) in S))


def induced_subgraph(G: Graph, A: Iterable[int]) -> View:
    S = sorted(_as_set(G, A))
    if not S:
        raise GraphError("induced subgraph of an empty vertex set")
    vmap = np.full(G.n, -1, dtype=np.int64)
    vmap[S] = np.arange(len(S))
    keep = [e for e in range(G.m) if vmap[G.eu[e]] >= 0 and vmap[G.ev[e]] >= 0]
    sub = build_graph(len(S), [(int(vmap[G.eu[e]]), int(vmap[G.ev[e]]), float(G.w[e])) for e in keep])
    return View(sub, vmap, np.asarray(keep, dtype=np.int64))


def edge_subgraph(G: Graph, edges: Iterable[int]) -> Graph:
    """Spanning subgraph on the given edges; edge ids are *not* preserved."""
    keep = sorted(set(edges))
    return build_graph(G.n, [(int(G.eu[e]), int(G.ev[e]), float(G.w[e])) for e in keep])


def contract(G: Graph, parts: Sequence[Iterable[int]]) -> View:
    """Shrink each part to one vertex, dropping the loops this creates.

    New vertex ids follow the smallest original member of each group, so
    the result does not depend on the order of ``parts``.
    """
    group = np.arange(G.n, dtype=np.int64)
    seen: set[int] = set()
    for p in parts:
        P = _as_set(G, p, "part")
        if P & seen:
            raise GraphError(f"contraction parts overlap on {sorted(P & seen)}")
        seen |= P
        if P:
            group[list(P)] = min(P)
    reps = sorted(set(group.tolist()))
    rank = {r: i for i, r in enumerate(reps)}
    vmap = np.array([rank[int(g)] for g in group], dtype=np.int64)
    keep = [e for e in range(G.m) if vmap[G.eu[e]] != vmap[G.ev[e]]]
    out = build_graph(len(reps), [(int(vmap[G.eu[e]]), int(vmap[G.ev[e]]), float(G.w[e])) for e in keep])
    return View(out, vmap, np.asarray(keep, dtype=np.int64))


def with_weights(G: Graph, w: np.ndarray) -> Graph:
    w = np.asarray(w, dtype=np.float64).copy()
    if w.shape != (G.m,) or (w < 0).any():
        raise GraphError("weight vector must be nonnegative with one entry per edge")
    w.setflags(write=False)
    return Graph(G.n, G.eu, G.ev, w)


def reachable(G: Graph, X: Iterable[int], removed: Iterable[int] = (), allowed: Iterable[int] | None = None) -> set[int]:
    """Vertices reachable from ``X`` using edges not in ``removed`` (and in ``allowed``)."""
    gone = set(removed)
    ok = None if allowed is None else set(allowed)
    seen = set(X)
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for e, y in G.adj[x]:
            if y in seen or e in gone or (ok is not None and e not in ok):
                continue
            seen.add(y)
            queue.append(y)
    return seen


def connected(G: Graph, X: Iterable[int], Y: Iterable[int], removed: Iterable[int] = ()) -> bool:
    """True iff some vertex of ``X`` reaches some vertex of ``Y`` avoiding ``removed``."""
    Xs, Ys = _as_set(G, X), _as_set(G, Y)
    if not Xs or not Ys:
        raise GraphError("connected() needs nonempty X and Y")
    return bool(reachable(G, Xs, removed) & Ys)


def components(G: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components, ordered by smallest member."""
    gone = set(removed)
    left = set(range(G.n))
    out = []
    for v in range(G.n):
        if v in left:
            comp = reachable(G, [v], gone)
            left -= comp
            out.append(frozenset(comp))
    return out


def bridges(G: Graph) -> frozenset[int]:
    """Bridge edge ids.  Parallel edges are never bridges since the DFS skips
    only the tree edge's own id, not every edge to the parent."""
    disc = [-1] * G.n
    low = [0] * G.n
    out: set[int] = set()
    timer = 0
    for root in range(G.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(G.adj[root]))]
        while stack:
            v, via, it = stack[-1]
            for e, y in it:
                if e == via:
                    continue
                if disc[y] < 0:
                    disc[y] = low[y] = timer
                    timer += 1
                    stack.append((y, e, iter(G.adj[y])))
                    break
                low[v] = min(low[v], disc[y])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        out.add(via)
    return frozenset(out)


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(reachable(G, [0])) == G.n


def is_2_edge_connected(G: Graph) -> tuple[bool, frozenset[int]]:
    """(connected and bridgeless, bridges)."""
    br = bridges(G)
    return (G.n >= 1 and is_connected(G) and not br), br


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


def parse_graph(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines of ``u v w``."""
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, p) for i, p in lines if p and not p[0].startswith("#")]
    if not lines:
        raise GraphError("empty graph file")
    lineno, head = lines[0]
    try:
        n, m = int(head[0]), int(head[1])
    except (ValueError, IndexError):
        raise GraphError(f"line {lineno}: expected 'n m' header") from None
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"header declares {m} edges but {len(body)} edge lines follow")
    edges = []
    for lineno, parts in body:
        if len(parts) != 3:
            raise GraphError(f"line {lineno}: expected 'u v w'")
        try:
            a, b, c = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise GraphError(f"line {lineno}: could not parse {' '.join(parts)!r}") from None
        if a == b:
            raise GraphError(f"line {lineno}: self-loop at vertex {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"line {lineno}: endpoint out of range for n={n}")
        if not c >= 0:
            raise GraphError(f"line {lineno}: negative weight {c}")
        edges.append((a, b, c))
    return build_graph(n, edges)


def format_graph(G: Graph) -> str:
    rows = [f"{G.n} {G.m}"] + [f"{a} {b} {c:g}" for a, b, c in G.edges()]
    return "\n".join(rows) + "\n"
