"""Unit-capacity max flow, min-cost flow and shortest paths on multigraphs.

Every undirected edge carries a signed flow in {-1, 0, +1}; +1 means the
direction ``eu -> ev``.  Residual capacity from ``a`` along edge ``e`` is
``1 - f[e]`` if ``a == eu[e]`` and ``1 + f[e]`` otherwise.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import Graph, GraphError, View, contract
from .model import Solution

_EPS = 1e-12


@dataclass(frozen=True)
class FlowResult:
    value: int
    edge_usage: dict[int, int]
    min_cut: frozenset[int]
    source_side: frozenset[int]
    edge_flow: dict[int, int]  # signed, in the orientation of the input graph


def _terminals(G: Graph, X: Iterable[int], Y: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    Xs, Ys = frozenset(int(x) for x in X), frozenset(int(y) for y in Y)
    if not Xs or not Ys:
        raise GraphError("flow terminals must be nonempty")
    if Xs & Ys:
        raise GraphError(f"source and sink sets overlap on {sorted(Xs & Ys)}")
    for v in Xs | Ys:
        if not 0 <= v < G.n:
            raise GraphError(f"terminal {v} out of range")
    return Xs, Ys


def _super_terminals(G: Graph, Xs, Ys) -> tuple[Graph, View | None, int, int]:
    if len(Xs) == 1 and len(Ys) == 1:
        return G, None, next(iter(Xs)), next(iter(Ys))
    view = contract(G, [Xs, Ys])
    return view.graph, view, int(view.vertex_map[min(Xs)]), int(view.vertex_map[min(Ys)])


def _residual(G: Graph, f: list[int], a: int, e: int) -> int:
    return 1 - f[e] if a == G.eu[e] else 1 + f[e]


def _augment_bfs(G: Graph, f: list[int], s: int, t: int, gone: set[int]) -> bool:
    prev: list[tuple[int, int] | None] = [None] * G.n
    seen = [False] * G.n
    seen[s] = True
    queue = deque([s])
    while queue:
        a = queue.popleft()
        for e, b in G.adj[a]:
            if seen[b] or e in gone or _residual(G, f, a, e) <= 0:
                continue
            seen[b] = True
            prev[b] = (a, e)
            if b == t:
                v = t
                while v != s:
                    a2, e2 = prev[v]
                    f[e2] += 1 if a2 == G.eu[e2] else -1
                    v = a2
                return True
            queue.append(b)
    return False


def _residual_side(G: Graph, f: list[int], s: int, gone: set[int]) -> set[int]:
    seen = {s}
    queue = deque([s])
    while queue:
        a = queue.popleft()
        for e, b in G.adj[a]:
            if b not in seen and e not in gone and _residual(G, f, a, e) > 0:
                seen.add(b)
                queue.append(b)
    return seen


def max_flow(G: Graph, X: Iterable[int], Y: Iterable[int], removed: Iterable[int] = (),
             limit: int | None = None) -> FlowResult:
    """Maximum number of edge-disjoint X-Y paths, with the min cut closest to X.

    With ``limit`` the search stops once that many paths are found; the
    returned cut is then only a certificate when ``value < limit``.
    """
    Xs, Ys = _terminals(G, X, Y)
    H, view, s, t = _super_terminals(G, Xs, Ys)
    gone_orig = set(removed)
    if view is None:
        gone = gone_orig
    else:
        gone = {e for e in range(H.m) if int(view.edge_map[e]) in gone_orig}
    f = [0] * H.m
    value = 0
    while (limit is None or value < limit) and _augment_bfs(H, f, s, t, gone):
        value += 1
    side = _residual_side(H, f, s, gone)
    cut = [e for e in range(H.m) if e not in gone and ((int(H.eu[e]) in side) != (int(H.ev[e]) in side))]
    if view is None:
        lift = lambda e: e  # noqa: E731
        src = frozenset(side)
    else:
        lift = lambda e: int(view.edge_map[e])  # noqa: E731
        src = frozenset(v for v in range(G.n) if int(view.vertex_map[v]) in side)
    flow = {lift(e): f[e] for e in range(H.m) if f[e]}
    return FlowResult(value, {e: abs(x) for e, x in flow.items()}, frozenset(lift(e) for e in cut), src, flow)


def edge_connectivity(G: Graph, X: Iterable[int], Y: Iterable[int], removed: Iterable[int] = (),
                      limit: int | None = None) -> int:
    return max_flow(G, X, Y, removed, limit).value


def decompose_paths(G: Graph, res: FlowResult, X: Iterable[int], Y: Iterable[int]) -> list[list[int]]:
    """Split a unit flow into ``res.value`` edge-disjoint paths (edge id lists)."""
    Xs, Ys = set(X), set(Y)
    out_arcs: dict[int, list[tuple[int, int]]] = {}
    for e, x in sorted(res.edge_flow.items()):
        a, b = G.endpoints(e)
        if x < 0:
            a, b = b, a
        out_arcs.setdefault(a, []).append((e, b))
    paths = []
    for _ in range(res.value):
        start = next((x for x in sorted(Xs) if out_arcs.get(x)), None)
        if start is None:
            break
        path, v = [], start
        while v not in Ys:
            e, b = out_arcs[v].pop(0)
            path.append(e)
            v = b
        paths.append(path)
    return paths


def max_flow_capacitated(G: Graph, s: int, t: int, cap: np.ndarray) -> tuple[float, frozenset[int]]:
    """Real-capacity max flow; returns (value, source side of the min cut)."""
    cap = np.asarray(cap, dtype=np.float64)
    f = np.zeros(G.m)
    value = 0.0

    def res(a, e):
        return cap[e] - f[e] if a == G.eu[e] else cap[e] + f[e]

    while True:
        prev: dict[int, tuple[int, int]] = {}
        seen = {s}
        queue = deque([s])
        found = False
        while queue and not found:
            a = queue.popleft()
            for e, b in G.adj[a]:
                if b in seen or res(a, e) <= 1e-10:
                    continue
                seen.add(b)
                prev[b] = (a, e)
                if b == t:
                    found = True
                    break
                queue.append(b)
        if not found:
            return value, frozenset(seen)
        push, v = np.inf, t
        while v != s:
            a, e = prev[v]
            push = min(push, res(a, e))
            v = a
        v = t
        while v != s:
            a, e = prev[v]
            f[e] += push if a == G.eu[e] else -push
            v = a
        value += push


def _dijkstra(G: Graph, s: int, cost_of, pot: list[float]):
    dist = [np.inf] * G.n
    prev: list[tuple[int, int] | None] = [None] * G.n
    dist[s] = 0.0
    heap = [(0.0, s)]
    done = [False] * G.n
    while heap:
        d, a = heapq.heappop(heap)
        if done[a]:
            continue
        done[a] = True
        for e, b in G.adj[a]:
            c = cost_of(a, e)
            if c is None or done[b]:
                continue
            nd = d + max(0.0, c + pot[a] - pot[b])
            if nd < dist[b] - _EPS:
                dist[b] = nd
                prev[b] = (a, e)
                heapq.heappush(heap, (nd, b))
    return dist, prev


def min_cost_flow(G: Graph, x: int | Iterable[int], y: int | Iterable[int], flow_value: int) -> Solution | None:
    """Cheapest integral flow of ``flow_value`` units (unit capacities, costs =
    weights) by successive shortest paths with potentials; None if λ is too small.

    Terminal sets are contracted first, so edges inside a terminal set are free
    and never used.
    """
    if flow_value < 1:
        raise GraphError("flow value must be at least 1")
    Xs, Ys = _terminals(G, [x] if isinstance(x, (int, np.integer)) else x,
                        [y] if isinstance(y, (int, np.integer)) else y)
    H, view, s, t = _super_terminals(G, Xs, Ys)
    f = [0] * H.m
    pot = [0.0] * H.n

    def cost_of(a, e):
        fwd = a == H.eu[e]
        if (fwd and f[e] == 1) or (not fwd and f[e] == -1):
            return None
        if f[e] == 0:
            return float(H.w[e])
        return -float(H.w[e])

    for _ in range(flow_value):
        dist, prev = _dijkstra(H, s, cost_of, pot)
        if dist[t] == np.inf:
            return None
        reach_max = max(d for d in dist if d < np.inf)
        for v in range(H.n):
            pot[v] += dist[v] if dist[v] < np.inf else reach_max
        v = t
        while v != s:
            a, e = prev[v]
            f[e] += 1 if a == H.eu[e] else -1
            v = a
    used = [e for e in range(H.m) if f[e]]
    if view is not None:
        used = [int(view.edge_map[e]) for e in used]
    return Solution.of(G, used)


def shortest_path(G: Graph, x: int | Iterable[int], y: int | Iterable[int]) -> Solution | None:
    """Minimum-weight x-y path as an edge set (None when disconnected)."""
    return min_cost_flow(G, x, y, 1)
