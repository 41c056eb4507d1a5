"""3-classes, the cactus of 2-cuts, st-chains and their component instances.

In a 2-edge-connected graph, shrinking each 3-class (maximal vertex set with
pairwise edge connectivity at least 3) leaves a cactus: every edge lies on
exactly one cycle, and two edges form a 2-cut of the graph iff they share a
cycle.  For a pair s, t in different classes, the cycles separating their
nodes form the st-chain; its edges are exactly the edges lying in some
2-element st-cut.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .flow import edge_connectivity
from .graph import (Graph, GraphError, View, bridges, build_graph, contract,
                    delta, induced_subgraph, is_2_edge_connected, is_connected,
                    reachable)
from .model import Demand, InternalError, OrdinaryDemand


def three_classes(G: Graph) -> list[frozenset[int]]:
    """Vertex classes of the relation ``lambda(u, v) >= 3``, ordered by smallest member."""
    if not is_connected(G):
        raise GraphError("three_classes needs a connected graph")
    reps: list[int] = []
    members: list[list[int]] = []
    for v in range(G.n):
        for i, r in enumerate(reps):
            if edge_connectivity(G, [r], [v], limit=3) >= 3:
                members[i].append(v)
                break
        else:
            reps.append(v)
            members.append([v])
    return [frozenset(m) for m in members]


@dataclass(frozen=True, eq=False)
class Cactus:
    G: Graph
    classes: list[frozenset[int]]
    node_for_vertex: np.ndarray
    view: View  # contraction of G onto the classes
    cycles: list[tuple[int, ...]]  # cactus edge ids in walking order
    cycle_nodes: list[tuple[int, ...]]
    cycle_of_edge: np.ndarray

    @property
    def graph(self) -> Graph:
        return self.view.graph

    @property
    def edge_origin(self) -> np.ndarray:
        return self.view.edge_map

    def original_cycles(self) -> list[tuple[int, ...]]:
        return [tuple(int(self.edge_origin[e]) for e in c) for c in self.cycles]

    def same_cycle_pairs(self) -> set[frozenset[int]]:
        out = set()
        for cyc in self.original_cycles():
            for a, b in combinations(cyc, 2):
                out.add(frozenset((a, b)))
        return out

    def to_json(self) -> dict:
        return {
            "classes": [sorted(c) for c in self.classes],
            "cycles": [list(c) for c in self.original_cycles()],
        }


def _walk_cycle(C: Graph, edges: set[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    first = min(edges)
    start, cur = C.endpoints(first)
    order, nodes = [first], [start]
    used = {first}
    while cur != start:
        nodes.append(cur)
        e, nxt = next((e, b) for e, b in C.adj[cur] if e in edges and e not in used)
        used.add(e)
        order.append(e)
        cur = nxt
    if used != edges:
        raise InternalError(f"cactus cycle through edge {first} is not simple")
    return tuple(order), tuple(nodes)


def build_cactus(G: Graph) -> Cactus:
    ok, br = is_2_edge_connected(G)
    if not ok:
        raise GraphError(f"graph is not 2-edge-connected (bridges: {sorted(br)})")
    classes = three_classes(G)
    view = contract(G, classes)
    C = view.graph
    cycle_of = np.full(C.m, -1, dtype=np.int64)
    cycles, nodes = [], []
    for e in range(C.m):
        if cycle_of[e] >= 0:
            continue
        rest = build_graph(C.n, [(a, b, 1.0) for i, (a, b, _) in enumerate(C.edges()) if i != e])
        # in a cactus, dropping e turns exactly the rest of its cycle into bridges
        lookup = [i for i in range(C.m) if i != e]
        members = {e} | {lookup[b] for b in bridges(rest)}
        order, cyc_nodes = _walk_cycle(C, members)
        for x in order:
            if cycle_of[x] >= 0:
                raise InternalError(f"cactus edge {x} lies on two cycles")
            cycle_of[x] = len(cycles)
        cycles.append(order)
        nodes.append(cyc_nodes)
    return Cactus(G, classes, view.vertex_map, view, cycles, nodes, cycle_of)


@dataclass(frozen=True)
class RelevantClass:
    members: frozenset[int]
    node: int
    attachment: frozenset[int]
    central: bool
    chain_edges: frozenset[int]  # original ids of chain-cycle edges at this class


@dataclass(frozen=True, eq=False)
class StChain:
    cactus: Cactus
    s: int
    t: int
    cycles: list[int]  # indices into cactus.cycles, ordered from s to t
    forced_edges: frozenset[int]
    relevant: list[RelevantClass]

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "chain_cycles": list(self.cycles),
            "forced_edges": sorted(self.forced_edges),
            "relevant_classes": [
                {"members": sorted(r.members), "attachment": sorted(r.attachment), "central": r.central}
                for r in self.relevant
            ],
        }


def st_chain(cactus: Cactus, s: int, t: int) -> StChain:
    if s == t:
        raise GraphError("s and t must differ")
    for v in (s, t):
        if not 0 <= v < cactus.G.n:
            raise GraphError(f"vertex {v} out of range")
    C = cactus.graph
    a, b = int(cactus.node_for_vertex[s]), int(cactus.node_for_vertex[t])
    if a == b:
        raise OrdinaryDemand(f"lambda({s},{t}) >= 3: s and t share a 3-class")
    entry_exit = {}
    for i, cyc in enumerate(cactus.cycles):
        side = reachable(C, [a], removed=cyc)
        if b in side:
            continue
        nodes = cactus.cycle_nodes[i]
        ins = [x for x in nodes if x in side]
        outs = [x for x in nodes if x in reachable(C, [b], removed=cyc)]
        if len(ins) != 1 or len(outs) != 1:
            raise InternalError(f"chain cycle {i} does not have a unique entry and exit")
        entry_exit[i] = (ins[0], outs[0])
    order, cur = [], a
    while cur != b:
        nxt = [i for i, (x, _) in entry_exit.items() if x == cur and i not in order]
        if len(nxt) != 1:
            raise InternalError("st-chain cycles do not form a path")
        order.append(nxt[0])
        cur = entry_exit[nxt[0]][1]
    if len(order) != len(entry_exit):
        raise InternalError("st-chain has cycles off the s-t path")
    chain_edges = {i: {int(cactus.edge_origin[e]) for e in cactus.cycles[i]} for i in order}
    forced = frozenset().union(*chain_edges.values())
    on_cycles: dict[int, list[int]] = {}
    for i in order:
        for x in cactus.cycle_nodes[i]:
            on_cycles.setdefault(x, []).append(i)
    relevant = []
    seen = set()
    for i in order:
        nodes = cactus.cycle_nodes[i]
        k = nodes.index(entry_exit[i][0])
        for x in nodes[k:] + nodes[:k]:
            if x in seen:
                continue
            seen.add(x)
            cls = cactus.classes[x]
            at = set(cls & {s, t})
            here = set()
            for j in on_cycles[x]:
                for e in chain_edges[j]:
                    u, v = cactus.G.endpoints(e)
                    if u in cls or v in cls:
                        here.add(e)
                        at |= {u, v} & cls
            central = bool(cls & {s, t}) or len(on_cycles[x]) >= 2
            relevant.append(RelevantClass(cls, x, frozenset(at), central, frozenset(here)))
    for r in relevant:
        if not 1 <= len(r.attachment) <= 4:
            raise InternalError(f"class {sorted(r.members)} has {len(r.attachment)} attachment nodes")
    return StChain(cactus, s, t, order, forced, relevant)


@dataclass(frozen=True, eq=False)
class ComponentInstance:
    """Subproblem of one st-relevant class.

    ``vertex_origin[i]`` / ``edge_origin[e]`` give original ids, ``-1`` for
    fresh terminals and the zero-weight edges attaching them.
    """

    graph: Graph
    kind: str  # "central" or "non_central"
    cls: frozenset[int]
    vertex_origin: np.ndarray
    edge_origin: np.ndarray
    s: int = -1
    t: int = -1
    R: frozenset[int] = field(default_factory=frozenset)
    attachment: tuple[int, ...] = ()  # instance ids of the attachment nodes

    def lift(self, edges) -> frozenset[int]:
        return frozenset(int(self.edge_origin[e]) for e in edges if self.edge_origin[e] >= 0)


def extract_components(G: Graph, chain: StChain) -> list[ComponentInstance]:
    out = []
    for rc in chain.relevant:
        cut = rc.chain_edges
        part = reachable(G, [min(rc.members)], removed=cut)
        if not rc.members <= part:
            raise InternalError(f"class {sorted(rc.members)} splits after removing its chain edges")
        if not rc.central:
            if len(cut) != 2:
                raise InternalError(f"non-central class {sorted(rc.members)} has {len(cut)} chain edges")
            view = induced_subgraph(G, part)
            vo = np.full(view.graph.n, -1, dtype=np.int64)
            for v in part:
                vo[view.vertex_map[v]] = v
            att = tuple(sorted(int(view.vertex_map[v]) for v in rc.attachment))
            out.append(ComponentInstance(view.graph, "non_central", rc.members, vo,
                                         np.asarray(view.edge_map), attachment=att))
            continue
        out.append(_central_instance(G, chain, rc, part))
    return out


def _central_instance(G: Graph, chain: StChain, rc: RelevantClass, part: set[int]) -> ComponentInstance:
    inside = sorted(part)
    local = {v: i for i, v in enumerate(inside)}
    rest = set(range(G.n)) - part
    s_side = reachable(G, [chain.s], allowed=[e for e in range(G.m) if e not in rc.chain_edges]) & rest
    t_side = reachable(G, [chain.t], allowed=[e for e in range(G.m) if e not in rc.chain_edges]) & rest
    if s_side | t_side != rest or s_side & t_side:
        raise InternalError(f"class {sorted(rc.members)}: outside splits into more than an s-side and t-side")
    n = len(inside)
    s_new, t_new = n, n + 1
    vo = list(inside) + [-1, -1]
    edges, origin = [], []
    for e in range(G.m):
        u, v = G.endpoints(e)
        a = local.get(u, s_new if u in s_side else t_new)
        b = local.get(v, s_new if v in s_side else t_new)
        if a == b:
            continue
        if u not in part and v not in part:  # pragma: no cover - sides never touch
            raise InternalError("edge between s-side and t-side")
        edges.append((a, b, float(G.w[e])))
        origin.append(e)
    for term, new in ((chain.s, s_new), (chain.t, t_new)):
        if term in part:
            edges += [(local[term], new, 0.0), (local[term], new, 0.0)]
            origin += [-1, -1]
    H = build_graph(n + 2, edges)
    R = frozenset(b for x in (s_new, t_new) for _, b in H.adj[x])
    att = tuple(sorted(local[v] for v in rc.attachment))
    return ComponentInstance(H, "central", rc.members, np.asarray(vo, dtype=np.int64),
                             np.asarray(origin, dtype=np.int64), s_new, t_new, R, att)


def audit_central(inst: ComponentInstance) -> list[str]:
    """Problems with the degree/2-cut properties of a central instance (empty if fine)."""
    H, s, t = inst.graph, inst.s, inst.t
    issues = []
    if H.degree(s) != 2 or H.degree(t) != 2:
        issues.append(f"deg(s)={H.degree(s)}, deg(t)={H.degree(t)}; both must be 2")
    if len(inst.R) > 4:
        issues.append(f"|R| = {len(inst.R)} > 4")
    ds, dt = delta(H, [s]), delta(H, [t])
    for e in range(H.m):
        if t not in reachable(H, [s], removed=[e]):
            issues.append(f"edge {e} alone separates s and t")
    for pair in combinations(range(H.m), 2):
        F = frozenset(pair)
        if F in (ds, dt):
            continue
        if t not in reachable(H, [s], removed=F):
            issues.append(f"2-cut {sorted(F)} separates s and t")
    return issues


def ordinary_demand_set(G: Graph, s: int, t: int, chain: StChain | None = None) -> list[Demand]:
    """A star of 3-demands on each relevant class's attachment nodes, centred at the smallest id."""
    chain = chain or st_chain(build_cactus(G), s, t)
    out = []
    for rc in chain.relevant:
        hub, *rest = sorted(rc.attachment)
        out += [Demand(hub, r, 3) for r in rest]
    return out


def decomposition_json(cactus: Cactus, chain: StChain | None = None) -> dict:
    out = {"schema": 1, "mode": "cactus", **cactus.to_json()}
    if chain is not None:
        out["chain"] = chain.to_json()
    return out
