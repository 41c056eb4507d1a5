"""Ground-truth checks by exhaustive enumeration.

Nothing here is clever on purpose: feasibility is decided by trying every
fault set (or every vertex cut), optima by trying every edge subset.  Caps
from :mod:`relnet.config` turn oversized requests into :class:`CapExceeded`
rather than sampling.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .config import CapExceeded, Caps, default_caps
from .graph import Graph, components, delta, reachable
from .model import Demand, SetDemand, Solution


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    witness: tuple[Demand | SetDemand, frozenset[int]] | None
    checked_fault_sets: int
    wall_time: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "feasible": self.feasible,
            "checked_fault_sets": self.checked_fault_sets,
            "witness": None,
        }
        if self.witness is not None:
            d, F = self.witness
            out["witness"] = {"demand": _demand_json(d), "faults": sorted(F)}
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out


def _demand_json(d) -> dict:
    if isinstance(d, Demand):
        return {"s": d.s, "t": d.t, "k": d.k}
    return {"X": sorted(d.X), "Y": sorted(d.Y), "k": d.k}


def _mask(n: int, members: Iterable[int]) -> np.ndarray:
    out = np.zeros(n, dtype=bool)
    out[list(members)] = True
    return out


def _edge_mask(G: Graph, H) -> np.ndarray:
    edges = H.edges if isinstance(H, Solution) else H
    out = np.zeros(G.m, dtype=bool)
    idx = [int(e) for e in edges]
    if idx and (min(idx) < 0 or max(idx) >= G.m):
        raise ValueError("solution refers to edges outside the graph")
    out[idx] = True
    return out


def fault_count(m: int, k: int) -> int:
    return sum(comb(m, j) for j in range(k))


def replay_witness(G: Graph, H, witness) -> bool:
    """True iff the witness really shows a violation (G∖F connected, H∖F not)."""
    d, F = witness
    d = SetDemand.of(d)
    hm = _edge_mask(G, H)
    if len(F) >= d.k:
        return False
    in_g = bool(reachable(G, d.X, removed=F) & d.Y)
    h_edges = [e for e in range(G.m) if hm[e]]
    in_h = bool(reachable(G, d.X, removed=F, allowed=h_edges) & d.Y)
    return in_g and not in_h


def feasible_by_fault_enumeration(G: Graph, H, demands: Sequence[Demand | SetDemand],
                                  caps: Caps | None = None, backend: str | None = None) -> FeasibilityReport:
    """Try every fault set ``F`` with ``|F| < k`` for every demand."""
    caps = caps or default_caps()
    t0 = time.perf_counter()
    hm = _edge_mask(G, H)
    checked = 0
    first_witness = K.kernel("first_witness", backend)
    for d in demands:
        sd = SetDemand.of(d)
        count = fault_count(G.m, sd.k)
        if count > caps.fault_sets:
            raise CapExceeded(f"{count} fault sets for k={sd.k}, m={G.m} exceeds cap {caps.fault_sets}")
        if not sd.X or not sd.Y or sd.X & sd.Y:
            continue
        rows = K.fault_rows(G.m, sd.k - 1)
        p = first_witness(G.n, G.eu, G.ev, hm, rows, _mask(G.n, sd.X), _mask(G.n, sd.Y))
        if p >= 0:
            F = frozenset(int(e) for e in rows[p] if e >= 0)
            return FeasibilityReport(False, (d, F), checked + p + 1, time.perf_counter() - t0)
        checked += rows.shape[0]
    return FeasibilityReport(True, None, checked, time.perf_counter() - t0)


def feasible_by_cut_cover(G: Graph, H, demand: Demand, caps: Caps | None = None,
                          backend: str | None = None) -> FeasibilityReport:
    """Check ``d_H(A) >= min(k, d_G(A))`` over G-minimal st-sets ``A``.

    G-minimal sets are those with both sides inducing connected subgraphs
    (inside the component holding ``s``; other components cannot matter).
    """
    caps = caps or default_caps()
    t0 = time.perf_counter()
    comp = next(c for c in components(G) if demand.s in c)
    if demand.t not in comp:
        return FeasibilityReport(True, None, 0, time.perf_counter() - t0)
    verts = sorted(comp)
    nn = len(verts)
    if nn > caps.vertex_subset_bits or nn > 62:
        raise CapExceeded(f"2^{nn} vertex subsets exceeds cap 2^{caps.vertex_subset_bits}")
    local = {v: i for i, v in enumerate(verts)}
    keep = [e for e in range(G.m) if int(G.eu[e]) in local]
    eu = np.array([local[int(G.eu[e])] for e in keep], dtype=np.int64)
    ev = np.array([local[int(G.ev[e])] for e in keep], dtype=np.int64)
    hm_full = _edge_mask(G, H)
    hm = hm_full[keep] if keep else np.zeros(0, dtype=bool)
    s, t = local[demand.s], local[demand.t]
    allmask = np.arange(1 << nn, dtype=np.int64)
    sets = allmask[((allmask >> s) & 1 == 1) & ((allmask >> t) & 1 == 0)]
    full = (1 << nn) - 1
    conn = K.kernel("induced_connected", backend)
    cutv = K.kernel("cut_values", backend)
    minimal = conn(nn, eu, ev, sets) & conn(nn, eu, ev, full ^ sets)
    sets = sets[minimal]
    dG = cutv(nn, eu, ev, np.ones(len(keep), dtype=bool), sets)
    dH = cutv(nn, eu, ev, hm, sets)
    bad = np.nonzero(dH < np.minimum(demand.k, dG))[0]
    if bad.size:
        A = int(sets[bad[0]])
        members = [verts[i] for i in range(nn) if (A >> i) & 1]
        F = frozenset(e for e in delta(G, members) if hm_full[e])
        return FeasibilityReport(False, (demand, F), int(bad[0]) + 1, time.perf_counter() - t0)
    return FeasibilityReport(True, None, int(sets.size), time.perf_counter() - t0)


def _check_rows(G: Graph, demands, caps: Caps, backend):
    """Fault rows (with their demand's terminal masks) that are connected in G."""
    rows_all, rx, ry = [], [], []
    width = max([SetDemand.of(d).k - 1 for d in demands] + [1])
    conn = K.kernel("xy_connected_rows", backend)
    for d in demands:
        sd = SetDemand.of(d)
        if not sd.X or not sd.Y or sd.X & sd.Y:
            continue
        count = fault_count(G.m, sd.k)
        if count > caps.fault_sets:
            raise CapExceeded(f"{count} fault sets for k={sd.k} exceeds cap {caps.fault_sets}")
        rows = K.fault_rows(G.m, sd.k - 1)
        xs, ys = _mask(G.n, sd.X), _mask(G.n, sd.Y)
        live = conn(G.n, G.eu, G.ev, np.ones(G.m, dtype=bool), rows, xs, ys)
        rows = rows[live]
        if rows.shape[1] < width:
            rows = np.hstack([rows, -np.ones((rows.shape[0], width - rows.shape[1]), dtype=np.int64)])
        rows_all.append(rows)
        rx.append(np.repeat(xs[None, :], rows.shape[0], axis=0))
        ry.append(np.repeat(ys[None, :], rows.shape[0], axis=0))
    if not rows_all:
        return (np.zeros((0, width), dtype=np.int64), np.zeros((0, G.n), dtype=bool),
                np.zeros((0, G.n), dtype=bool))
    return np.vstack(rows_all), np.vstack(rx), np.vstack(ry)


def feasible_many(G: Graph, candidates: np.ndarray, demands: Sequence[Demand | SetDemand],
                  caps: Caps | None = None, backend: str | None = None) -> np.ndarray:
    """Fault-enumeration verdict for each row of a boolean candidate matrix."""
    caps = caps or default_caps()
    rows, rx, ry = _check_rows(G, demands, caps, backend)
    cand = np.ascontiguousarray(candidates, dtype=bool).reshape(-1, G.m)
    return K.kernel("feasible_mask", backend)(G.n, G.eu, G.ev, cand, rows, rx, ry)


def supersets(m: int, base: Iterable[int], caps: Caps | None = None) -> np.ndarray:
    """Boolean matrix of every edge set containing ``base``."""
    caps = caps or default_caps()
    base = sorted(set(base))
    free = [e for e in range(m) if e not in set(base)]
    if len(free) > caps.edge_subset_bits:
        raise CapExceeded(f"2^{len(free)} supersets exceeds cap 2^{caps.edge_subset_bits}")
    masks = np.arange(1 << len(free), dtype=np.int64)
    out = np.zeros((masks.size, m), dtype=bool)
    out[:, base] = True
    if free:
        out[:, free] = ((masks[:, None] >> np.arange(len(free))[None, :]) & 1).astype(bool)
    return out


def exact_optimum(G: Graph, demands: Sequence[Demand | SetDemand], caps: Caps | None = None,
                  backend: str | None = None) -> Solution:
    """Minimum-weight feasible edge set by exhaustive weight-ordered search.

    Feasibility is monotone under adding edges, so an edge whose removal from
    ``E`` breaks feasibility is in every solution; the search runs over the
    remaining edges only, in nondecreasing total weight, and stops at the
    first feasible subset.
    """
    caps = caps or default_caps()
    rows, rx, ry = _check_rows(G, demands, caps, backend)
    first_feasible = K.kernel("first_feasible", backend)
    necessary = []
    for e in range(G.m):
        cand = np.ones((1, G.m), dtype=bool)
        cand[0, e] = False
        if first_feasible(G.n, G.eu, G.ev, cand, rows, rx, ry) < 0:
            necessary.append(e)
    free = [e for e in range(G.m) if e not in set(necessary)]
    if len(free) > caps.edge_subset_bits:
        raise CapExceeded(f"2^{len(free)} candidate subsets exceeds cap 2^{caps.edge_subset_bits}")
    nf = len(free)
    masks = np.arange(1 << nf, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(nf)[None, :]) & 1).astype(bool)
    wf = G.w[free] if nf else np.zeros(0)
    weights = np.round(bits.astype(np.float64) @ wf, 9)
    order = np.lexsort((masks, weights))
    cand = np.zeros((masks.size, G.m), dtype=bool)
    cand[:, necessary] = True
    if nf:
        cand[:, free] = bits
    cand = cand[order]
    idx = first_feasible(G.n, G.eu, G.ev, cand, rows, rx, ry)
    if idx < 0:  # pragma: no cover - E itself is always feasible
        raise RuntimeError("no feasible subset found")
    return Solution.of(G, np.nonzero(cand[idx])[0].tolist(), necessary=sorted(necessary))


def brute_force_important_separators(G: Graph, X: Iterable[int], Y: Iterable[int], d: int,
                                     caps: Caps | None = None):
    """Literal filter over every edge subset of size at most ``d``: keep the
    minimal separators for which no separator of no larger size has a strictly
    smaller set of vertices reachable from ``X``."""
    from .separators import ImportantSeparator

    caps = caps or default_caps()
    if G.m > caps.separator_edges or d > caps.separator_size:
        raise CapExceeded(f"brute-force separators limited to m <= {caps.separator_edges}, "
                          f"d <= {caps.separator_size}")
    Xs, Ys = frozenset(X), frozenset(Y)
    if Xs & Ys:
        raise ValueError("X and Y must be disjoint")
    seps: dict[frozenset[int], frozenset[int]] = {}
    for r in range(d + 1):
        for S in combinations(range(G.m), r):
            R = frozenset(reachable(G, Xs, removed=S))
            if not R & Ys:
                seps[frozenset(S)] = R
    out = []
    for S, R in seps.items():
        if any((S - {e}) in seps for e in S):
            continue
        if any(len(S2) <= len(S) and R2 < R for S2, R2 in seps.items()):
            continue
        out.append(ImportantSeparator(S, R))
    out.sort(key=lambda x: (len(x.edges), sorted(x.edges)))
    return out


def check_structure_theorem(G: Graph, H, s: int, t: int, k: int, decomp=None,
                            caps: Caps | None = None, backend: str | None = None) -> tuple[bool, bool]:
    """(relative feasibility of (s,t,k), the decomposition-based characterisation).

    The right side asks for every separator edge in ``H`` and, inside every
    component of every level, the group demands generated for it, each checked
    by fault enumeration on the component's induced subgraph.
    """
    lhs, rhs = structure_theorem_many(G, _edge_mask(G, H)[None, :], s, t, k, decomp, caps, backend)
    return bool(lhs[0]), bool(rhs[0])


def structure_theorem_many(G: Graph, candidates: np.ndarray, s: int, t: int, k: int, decomp=None,
                           caps: Caps | None = None, backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the characterisation for every row of a candidate matrix."""
    from .graph import induced_subgraph
    from .sdk import component_demands
    from .separators import build_hierarchy

    caps = caps or default_caps()
    cand = np.ascontiguousarray(candidates, dtype=bool).reshape(-1, G.m)
    lhs = feasible_many(G, cand, [Demand(s, t, k)], caps, backend)
    decomp = decomp or build_hierarchy(G, s, t, k, caps)
    sep = sorted(decomp.separator_edges)
    rhs = cand[:, sep].all(axis=1) if sep else np.ones(cand.shape[0], dtype=bool)
    for comp in decomp.all_components():
        view = induced_subgraph(G, comp.vertices)
        local = [SetDemand(view.vertices_of(gd.X), view.vertices_of(gd.Y), gd.d)
                 for gd in component_demands(decomp, comp, k)]
        if not local or view.graph.m == 0:
            continue
        sub = cand[:, view.edge_map]
        live = np.nonzero(rhs)[0]
        if live.size:
            rhs[live] = feasible_many(view.graph, sub[live], local, caps, backend)
    return lhs, rhs
