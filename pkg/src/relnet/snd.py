"""Iterative LP rounding for cut-covering problems.

Two requirement functions are covered: classical survivable network design
(``f(A)`` = largest demand separated by ``A``) and the all-pairs relative
version, where every cut must keep ``min(k, d_G(A))`` edges.  Each round
solves the cut LP by cutting planes, with a max-flow separation oracle,
then fixes every edge whose value reached one half.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from . import _kernels as K
from .flow import edge_connectivity, max_flow_capacitated
from .graph import Graph, GraphError, cut_size, is_connected
from .model import Demand, InternalError, Solution

ROUND_AT = 0.5 - 1e-7
_VIOLATION = 1e-7


def _lp(G: Graph, free: list[int], fixed: set[int], cuts: list[frozenset[int]],
        rhs_of: Callable[[frozenset[int]], float]) -> np.ndarray:
    col = {e: i for i, e in enumerate(free)}
    rows, b = [], []
    for A in cuts:
        need = rhs_of(A) - cut_size(G, A, fixed)
        if need <= 0:
            continue
        row = np.zeros(len(free))
        for e in free:
            if (int(G.eu[e]) in A) != (int(G.ev[e]) in A):
                row[col[e]] = 1.0
        rows.append(row)
        b.append(need)
    c = G.w[free].astype(np.float64)
    if not rows:
        return np.zeros(len(free))
    res = linprog(c, A_ub=-np.array(rows), b_ub=-np.array(b, dtype=np.float64),
                  bounds=[(0.0, 1.0)] * len(free), method="highs-ds")
    if res.status != 0:
        raise InternalError(f"cut LP could not be solved: {res.message}")
    return np.clip(res.x, 0.0, 1.0)


def iterative_rounding(G: Graph, fixed: Iterable[int], violated: Callable[[np.ndarray, set[int]], list[frozenset[int]]],
                       rhs_of: Callable[[frozenset[int]], float]) -> tuple[set[int], list[dict]]:
    """Round until the fixed set covers the requirement.

    ``violated(cap, F)`` returns the vertex sets whose cut capacity falls
    short (``cap`` is 1 on the fixed set ``F``, the LP value elsewhere).
    """
    F = set(fixed)
    log = []
    while True:
        cap = np.zeros(G.m)
        cap[list(F)] = 1.0
        cuts = violated(cap, F)
        if not cuts:
            return F, log
        free = [e for e in range(G.m) if e not in F]
        seen = set(cuts)
        while True:
            x = _lp(G, free, F, cuts, rhs_of)
            cap = np.zeros(G.m)
            cap[list(F)] = 1.0
            cap[free] = x
            new = [A for A in violated(cap, F) if A not in seen]
            if not new:
                break
            cuts += new
            seen.update(new)
        pick = [e for e, v in zip(free, x) if v >= ROUND_AT]
        if not pick:
            raise InternalError("no edge reached one half in an extreme LP solution")
        log.append({"fixed": sorted(pick), "lp_value": float(G.w[free] @ x), "cuts": len(cuts)})
        F |= set(pick)


def _check_ordinary(G: Graph, demands: Sequence[Demand]) -> None:
    for d in demands:
        if edge_connectivity(G, [d.s], [d.t], limit=d.k) < d.k:
            raise GraphError(f"demand {d} is relative: lambda_G({d.s},{d.t}) < {d.k}")


def solve_snd_jain(G: Graph, demands: Sequence[Demand], fixed: Iterable[int] = ()) -> Solution:
    """2-approximate survivable network design for ordinary demands.

    Edges in ``fixed`` are taken up front, which is the same as making
    them free of charge; reported weights still use the true costs.
    """
    demands = list(demands)
    _check_ordinary(G, demands)

    def rhs_of(A):
        return max([d.k for d in demands if (d.s in A) != (d.t in A)], default=0)

    def violated(cap, F):
        out = []
        for d in demands:
            value, side = max_flow_capacitated(G, d.s, d.t, cap)
            if value < d.k - _VIOLATION:
                out.append(side)
        return list(dict.fromkeys(out))

    F, log = iterative_rounding(G, fixed, violated, rhs_of)
    return Solution.of(G, F, rounds=log, fixed=sorted(set(fixed)))


def forced_edges_kefts(G: Graph, k: int, method: str = "auto") -> frozenset[int]:
    """Edges on some cut with at most ``k`` edges.

    ``flow``: edge uv is forced iff ``lambda(u, v) <= k``.  ``brute``: scan
    every vertex subset (needs ``n <= 20``).
    """
    if method == "auto":
        method = "brute" if G.n <= 12 else "flow"
    if method == "flow":
        return frozenset(e for e in range(G.m)
                         if edge_connectivity(G, [int(G.eu[e])], [int(G.ev[e])], limit=k + 1) <= k)
    if method != "brute":
        raise ValueError(f"unknown method {method!r}")
    if G.n > 20:
        raise GraphError("brute-force cut scan limited to n <= 20")
    if G.n < 2:
        return frozenset()
    sets = np.arange(1, 1 << (G.n - 1), dtype=np.int64)  # vertex n-1 always outside
    vals = K.kernel("cut_values")(G.n, G.eu, G.ev, np.ones(G.m, dtype=bool), sets)
    small = sets[vals <= k]
    out = set()
    for A in small:
        out |= {e for e in range(G.m) if ((int(A) >> int(G.eu[e])) & 1) != ((int(A) >> int(G.ev[e])) & 1)}
    return frozenset(out)


def solve_kefts(G: Graph, k: int) -> Solution:
    """2-approximate subgraph keeping ``min(k, d_G(A))`` edges on every cut."""
    if k < 1:
        raise GraphError("k must be at least 1")
    if not is_connected(G):
        raise GraphError("k-EFTS needs a connected graph")
    forced = forced_edges_kefts(G, k)

    def violated(cap, F):
        out = []
        for e in range(G.m):
            if e in F:
                continue
            value, side = max_flow_capacitated(G, int(G.eu[e]), int(G.ev[e]), cap)
            if value < k - _VIOLATION:
                out.append(side)
        return list(dict.fromkeys(out))

    def rhs_of(A):
        return min(k, cut_size(G, A))

    F, log = iterative_rounding(G, forced, violated, rhs_of)
    return Solution.of(G, F, forced=sorted(forced), rounds=log)


@dataclass(frozen=True, eq=False)
class CutRequirement:
    """A cut requirement ``f`` restricted to its family of sets.

    ``snd``: ``f(A)`` is the largest demand separated by ``A``, all proper
    nonempty sets.  ``kefts``: ``f(A) = k - d_F(A)`` on sets crossed by some
    edge outside ``F``.
    """

    G: Graph
    kind: str
    demands: tuple[Demand, ...] = ()
    k: int = 0
    F: frozenset[int] = frozenset()

    def in_family(self, A: frozenset[int]) -> bool:
        if not A or len(A) >= self.G.n:
            return False
        if self.kind == "snd":
            return True
        rest = [e for e in range(self.G.m) if e not in self.F]
        return cut_size(self.G, A, rest) >= 1

    def value(self, A: frozenset[int]) -> int:
        if self.kind == "snd":
            return max([d.k for d in self.demands if (d.s in A) != (d.t in A)], default=0)
        return self.k - cut_size(self.G, A, self.F)


def check_weak_supermodularity(req: CutRequirement, A: Iterable[int], B: Iterable[int]) -> str:
    """``"supermodular"``, ``"co-supermodular"`` or ``"violation"``.

    Covering requirements need ``f(A) + f(B) <= f(A∩B) + f(A∪B)`` (or the
    same with the two differences), with the sets on the right in the family.
    """
    A, B = frozenset(A), frozenset(B)
    if not (req.in_family(A) and req.in_family(B)):
        raise GraphError("both sets must belong to the requirement's family")
    f = req.value
    lhs = f(A) + f(B)
    i, u = A & B, A | B
    if req.in_family(i) and req.in_family(u) and lhs <= f(i) + f(u):
        return "supermodular"
    a, b = A - B, B - A
    if req.in_family(a) and req.in_family(b) and lhs <= f(a) + f(b):
        return "co-supermodular"
    return "violation"


def kefts_feasible(G: Graph, H: Iterable[int], k: int, backend: str | None = None) -> bool:
    """Every cut keeps ``min(k, d_G(A))`` edges of ``H`` (all vertex subsets scanned)."""
    if G.n > 20:
        raise GraphError("brute-force cut scan limited to n <= 20")
    hm = np.zeros(G.m, dtype=bool)
    hm[list(H)] = True
    sets = np.arange(1, 1 << (G.n - 1), dtype=np.int64)
    cut = K.kernel("cut_values", backend)
    dG = cut(G.n, G.eu, G.ev, np.ones(G.m, dtype=bool), sets)
    dH = cut(G.n, G.eu, G.ev, hm, sets)
    return bool((dH >= np.minimum(k, dG)).all())


def all_pair_demands(n: int, k: int) -> list[Demand]:
    return [Demand(a, b, k) for a, b in combinations(range(n), 2)]
