"""Relative network design with requirements up to 3.

A relative 3-demand (``lambda_G(s,t) = 2``) is replaced by its forced edges
plus ordinary 3-demands inside the st-relevant classes; everything then goes
to one iterative-rounding call.  ``solve_sd3_componentwise`` handles a single
demand class by class instead and serves as an independent cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cactus import build_cactus, extract_components, ordinary_demand_set, st_chain
from .flow import edge_connectivity, min_cost_flow
from .graph import Graph, GraphError, is_2_edge_connected
from .model import Demand, InternalError, Solution
from .snd import solve_snd_jain


@dataclass(frozen=True)
class DemandClassification:
    demand: Demand
    connectivity: int
    kind: str  # "ordinary" | "relative"


def classify_demand(G: Graph, d: Demand) -> DemandClassification:
    if d.k > 3:
        raise GraphError(f"requirement {d.k} > 3; use the general-k solver")
    lam = edge_connectivity(G, [d.s], [d.t], limit=d.k)
    return DemandClassification(d, lam, "ordinary" if lam >= d.k else "relative")


def _require_2ec(G: Graph) -> None:
    ok, br = is_2_edge_connected(G)
    if not ok:
        raise GraphError(f"graph is not 2-edge-connected (bridges: {sorted(br)})")


def merge_demands(demands: Sequence[Demand]) -> list[Demand]:
    """One demand per unordered pair, keeping the largest requirement."""
    best: dict[tuple[int, int], int] = {}
    for d in demands:
        key = (min(d.s, d.t), max(d.s, d.t))
        best[key] = max(best.get(key, 0), d.k)
    return [Demand(a, b, k) for (a, b), k in sorted(best.items())]


def solve_3rsnd(G: Graph, demands: Sequence[Demand]) -> Solution:
    _require_2ec(G)
    forced: set[int] = set()
    reduced: list[Demand] = []
    kinds = []
    for d in merge_demands(demands):
        c = classify_demand(G, d)
        kinds.append(c)
        if c.kind == "ordinary":
            reduced.append(d)
            continue
        if d.k != 3:  # pragma: no cover - 2-edge-connectivity rules this out
            raise InternalError(f"relative demand {d} with k < 3 in a 2-edge-connected graph")
        chain = st_chain(build_cactus(G), d.s, d.t)
        forced |= chain.forced_edges
        reduced += ordinary_demand_set(G, d.s, d.t, chain)
    reduced = merge_demands(reduced)
    snd = solve_snd_jain(G, reduced, fixed=forced)
    return Solution.of(G, snd.edges, forced=sorted(forced), reduced_demands=reduced,
                       classification=kinds, rounds=snd.parts["rounds"])


def solve_sd3_componentwise(G: Graph, s: int, t: int) -> Solution:
    _require_2ec(G)
    if edge_connectivity(G, [s], [t], limit=3) >= 3:
        sol = min_cost_flow(G, s, t, 3)
        return Solution.of(G, sol.edges, method="min_cost_flow")
    chain = st_chain(build_cactus(G), s, t)
    edges = set(chain.forced_edges)
    parts = []
    for inst in extract_components(G, chain):
        H = inst.graph
        if inst.kind == "non_central":
            if len(inst.attachment) < 2:
                parts.append({"class": sorted(inst.cls), "edges": []})
                continue
            u, v = inst.attachment
            sol = min_cost_flow(H, u, v, 2)
            if sol is None:
                raise InternalError(f"class {sorted(inst.cls)}: no two disjoint attachment paths")
            local = sol.edges
        else:
            hub, *rest = sorted(inst.R)
            stubs = [e for e in range(H.m) if inst.s in H.endpoints(e) or inst.t in H.endpoints(e)]
            local = solve_snd_jain(H, [Demand(hub, r, 3) for r in rest], fixed=stubs).edges if rest else ()
        lifted = inst.lift(local)
        edges |= lifted
        parts.append({"class": sorted(inst.cls), "kind": inst.kind, "edges": sorted(lifted)})
    return Solution.of(G, edges, method="componentwise", components=parts,
                       forced=sorted(chain.forced_edges))
