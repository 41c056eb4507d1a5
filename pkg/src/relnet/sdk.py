"""Single-demand relative network design for general k via the chain hierarchy.

Every component of the hierarchy gets a family of group demands between
subsets of its left and right boundaries; a subgraph is feasible exactly
when it holds every separator edge and meets all of them.  The solver
meets each group demand with an exact routine (shortest path, min-cost
flow) or by recursing on a contracted copy of the component with a
smaller requirement.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .config import CapExceeded, Caps, default_caps
from .flow import edge_connectivity, min_cost_flow, shortest_path
from .graph import (Graph, GraphError, bridges, contract, induced_subgraph,
                    is_2_edge_connected, reachable)
from .model import InternalError, Solution
from .separators import Component, Hierarchy, build_hierarchy


@dataclass(frozen=True)
class GroupDemand:
    X: frozenset[int]
    Y: frozenset[int]
    d: int
    S_X: frozenset[int] = frozenset()
    S_Y: frozenset[int] = frozenset()
    kind: str = "pair"  # pair | flow | final


def ratio_bound(k: int) -> int:
    if k < 1:
        raise ValueError("k must be at least 1")
    T = 1
    for j in range(2, k + 1):
        T = (4 ** (j - 1) + 1) * T + 1
    return T


def _subsets(vs: Iterable[int]) -> list[frozenset[int]]:
    items = sorted(vs)
    return [frozenset(v for i, v in enumerate(items) if mask >> i & 1) for mask in range(1, 1 << len(items))]


def _incident(G: Graph, edges: frozenset[int], X: frozenset[int]) -> frozenset[int]:
    return frozenset(e for e in edges if G.eu[e] in X or G.ev[e] in X)


def component_demands(decomp: Hierarchy, comp: Component, k: int | None = None) -> list[GroupDemand]:
    """Group demands of one component: every boundary-subset pair with a
    positive requirement, then the ``h+1`` flow demand and the ``k-1`` demand
    between the full boundaries.  Pairs whose sides overlap are always met
    and are left out."""
    k = decomp.k if k is None else k
    G, h = decomp.G, comp.level
    out = []
    for X in _subsets(comp.left):
        for Y in _subsets(comp.right):
            if (X, Y) == (comp.left, comp.right) or X & Y:
                continue
            sx, sy = _incident(G, comp.left_sep, X), _incident(G, comp.right_sep, Y)
            d = max(0, k + len(sx) + len(sy) - len(comp.left_sep) - len(comp.right_sep))
            if d == 0:
                continue
            if d > k - 1:
                raise InternalError(f"group demand {d} >= k on a proper boundary pair")
            out.append(GroupDemand(X, Y, d, sx, sy, "pair"))
    if not comp.left & comp.right:
        out.append(GroupDemand(comp.left, comp.right, h + 1, kind="flow"))
        if k - 1 >= 1:
            out.append(GroupDemand(comp.left, comp.right, k - 1, kind="final"))
    return out


def group_demands(decomp: Hierarchy, level: int, index: int, k: int | None = None) -> list[GroupDemand]:
    return component_demands(decomp, decomp.levels[level][index], k)


def solve_sdk(G: Graph, s: int, t: int, k: int, peel_bridges: bool = True,
              caps: Caps | None = None, _root: bool = True) -> Solution:
    """Solution for the single relative demand ``(s, t, k)``.

    ``parts["breakdown"]`` records what each component contributed.  With
    ``peel_bridges`` off, recursive instances that have a bridge between
    their terminals are decomposed as they are, which can fail.
    """
    caps = caps or default_caps()
    if k < 1:
        raise GraphError("k must be at least 1")
    if k > caps.max_k:
        raise CapExceeded(f"k={k} exceeds cap {caps.max_k}")
    if s == t:
        raise GraphError("s and t must differ")
    if _root:
        ok, br = is_2_edge_connected(G)
        if not ok:
            raise GraphError(f"graph is not 2-edge-connected (bridges: {sorted(br)})")
    lam = edge_connectivity(G, [s], [t], limit=k)
    if lam == 0:
        return Solution.of(G, [], breakdown=[], method="disconnected")
    if k == 1:
        return _tag(shortest_path(G, s, t), "shortest_path")
    if lam >= k:
        return _tag(min_cost_flow(G, s, t, k), "min_cost_flow")
    if lam == 1 and peel_bridges:
        return _peel(G, s, t, k, caps)
    return _decompose(G, s, t, k, peel_bridges, caps)


def _tag(sol: Solution | None, method: str) -> Solution:
    if sol is None:  # pragma: no cover - callers check connectivity first
        raise InternalError(f"{method} found no solution")
    return Solution(sol.edges, sol.weight, {"breakdown": [], "method": method})


def _peel(G: Graph, s: int, t: int, k: int, caps: Caps) -> Solution:
    """Split at the bridges every s-t path uses and solve each piece."""
    cut = sorted(e for e in bridges(G) if t not in reachable(G, [s], removed=[e]))
    edges = set(cut)
    breakdown = [{"kind": "bridges", "edges": cut}]
    cur = s
    while True:
        piece = reachable(G, [cur], removed=cut)
        if t in piece:
            end = t
        else:
            e = next(e for e in cut if (G.eu[e] in piece) != (G.ev[e] in piece)
                     and t not in reachable(G, [cur], removed=[e]))
            end = int(G.eu[e]) if G.eu[e] in piece else int(G.ev[e])
        if end != cur:
            view = induced_subgraph(G, piece)
            sub = solve_sdk(view.graph, int(view.vertex_map[cur]), int(view.vertex_map[end]), k,
                            True, caps, _root=False)
            lifted = view.lift_edges(sub.edges)
            edges |= lifted
            breakdown.append({"kind": "piece", "vertices": sorted(piece), "edges": sorted(lifted)})
        if end == t:
            break
        cur = int(G.ev[e]) if end == G.eu[e] else int(G.eu[e])
    return Solution.of(G, edges, breakdown=breakdown, method="bridge_peel")


def _decompose(G: Graph, s: int, t: int, k: int, peel: bool, caps: Caps) -> Solution:
    decomp = build_hierarchy(G, s, t, k, caps)
    edges = set(decomp.separator_edges)
    breakdown = [{"kind": "separators", "edges": sorted(decomp.separator_edges)}]
    for comp in decomp.all_components():
        view = induced_subgraph(G, comp.vertices)
        sub = view.graph
        memo: dict[tuple[frozenset[int], frozenset[int], int], frozenset[int]] = {}
        for gd in component_demands(decomp, comp, k):
            key = (gd.X, gd.Y, gd.d if gd.kind != "flow" else -gd.d)
            if key in memo:
                continue
            X, Y = view.vertices_of(gd.X), view.vertices_of(gd.Y)
            if gd.kind == "flow":
                sol = min_cost_flow(sub, X, Y, gd.d)
                if sol is None:
                    raise InternalError(f"component {comp.level}/{comp.index} cannot carry flow {gd.d}")
                local = sol.edges
            elif gd.d == 1:
                if not reachable(sub, X) & Y:
                    memo[key] = frozenset()
                    continue
                local = shortest_path(sub, X, Y).edges
            else:
                if gd.d >= k:
                    raise InternalError(f"recursive demand {gd.d} is not below {k}")
                cview = contract(sub, [X, Y])
                x, y = int(cview.vertex_map[min(X)]), int(cview.vertex_map[min(Y)])
                rec = solve_sdk(cview.graph, x, y, gd.d, peel, caps, _root=False)
                local = cview.lift_edges(rec.edges)
            lifted = view.lift_edges(local)
            memo[key] = lifted
            edges |= lifted
            breakdown.append({
                "level": comp.level, "component": comp.index, "kind": gd.kind,
                "X": sorted(gd.X), "Y": sorted(gd.Y), "d": gd.d, "edges": sorted(lifted),
            })
    return Solution.of(G, edges, breakdown=breakdown, method="hierarchy", hierarchy=decomp)


def solution_json(G: Graph, sol: Solution, k: int) -> dict:
    out = {"schema": 1, **sol.to_json(), "ratio_bound": ratio_bound(k),
           "method": sol.parts.get("method")}
    out["breakdown"] = [
        {**b, "weight": round(G.weight(b["edges"]), 9)} for b in sol.parts.get("breakdown", [])
    ]
    if "hierarchy" in sol.parts:
        out["hierarchy"] = sol.parts["hierarchy"].to_json()
    return out
