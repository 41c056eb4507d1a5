"""Important edge separators, (X,Y) h-chains and the nested chain hierarchy.

Orientation: an important (X,Y)-separator here is a minimal separator such
that no separator of the same or smaller size leaves a *strictly smaller*
set reachable from X.  For minimal separators the side not reachable from X
is exactly what Y reaches, so these are the usual "farthest from the source"
important separators with Y as the source; enumeration branches from Y.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .config import CapExceeded, Caps, default_caps
from .flow import edge_connectivity, max_flow
from .graph import Graph, GraphError, induced_subgraph, reachable


@dataclass(frozen=True)
class ImportantSeparator:
    edges: frozenset[int]
    reachable: frozenset[int]


def _sets(G: Graph, X, Y) -> tuple[frozenset[int], frozenset[int]]:
    Xs, Ys = frozenset(int(v) for v in X), frozenset(int(v) for v in Y)
    if not Xs or not Ys:
        raise GraphError("separator terminals must be nonempty")
    if Xs & Ys:
        raise GraphError(f"X and Y overlap on {sorted(Xs & Ys)}")
    return Xs, Ys


def is_important(G: Graph, X: Iterable[int], Y: Iterable[int], S: Iterable[int],
                 removed: Iterable[int] = ()) -> bool:
    """Direct test of the definition.

    A competitor with a strictly smaller reachable set exists iff some vertex
    v of ``R`` outside ``X`` can be cut off from ``X`` together with ``V∖R``
    by at most ``|S|`` edges.
    """
    Xs, Ys = _sets(G, X, Y)
    gone = set(removed)
    S = frozenset(S) - gone
    R = frozenset(reachable(G, Xs, removed=gone | S))
    if R & Ys:
        return False
    for e in S:
        if reachable(G, Xs, removed=(gone | S) - {e}) & Ys:
            continue
        return False  # e is redundant
    outside = frozenset(range(G.n)) - R
    for v in sorted(R - Xs):
        if edge_connectivity(G, Xs, outside | {v}, removed=gone, limit=len(S) + 1) <= len(S):
            return False
    return True


def enumerate_important_separators(G: Graph, X: Iterable[int], Y: Iterable[int], d: int,
                                   removed: Iterable[int] = ()) -> list[ImportantSeparator]:
    """All important (X,Y)-separators with at most ``d`` edges, sorted by (size, edge ids)."""
    Xs, Ys = _sets(G, X, Y)
    if d < 0:
        raise GraphError("separator size bound must be nonnegative")
    gone = frozenset(removed)
    found: set[frozenset[int]] = set()

    def grow(src: frozenset[int], cut: frozenset[int], budget: int) -> None:
        res = max_flow(G, Xs, src, removed=gone | cut, limit=budget + 1)
        if res.value > budget:
            return
        if res.value == 0:
            found.add(cut)
            return
        # res.source_side is the X-side of the min cut closest to X, so its
        # complement is the farthest min cut seen from src
        far = frozenset(range(G.n)) - res.source_side
        e = min(res.min_cut)
        a, b = G.endpoints(e)
        outer = b if a in far else a
        grow(far, cut | {e}, budget - 1)
        if outer not in Xs:
            grow(far | {outer}, cut, budget)

    grow(Ys, frozenset(), d)
    out = []
    for S in found:
        if is_important(G, Xs, Ys, S, gone):
            out.append(ImportantSeparator(S, frozenset(reachable(G, Xs, removed=gone | S))))
    out.sort(key=lambda s: (len(s.edges), sorted(s.edges)))
    return out


def find_important_separator(G: Graph, X: Iterable[int], Y: Iterable[int], d: int,
                             removed: Iterable[int] = ()) -> ImportantSeparator | None:
    """The lexicographically smallest important separator of size exactly ``d``."""
    Xs, Ys = _sets(G, X, Y)
    gone = frozenset(removed)
    lam = edge_connectivity(G, Xs, Ys, removed=gone, limit=d + 1)
    if lam > d:
        return None
    if lam == d:
        # a unique one: the min cut closest to X
        res = max_flow(G, Xs, Ys, removed=gone)
        return ImportantSeparator(res.min_cut, frozenset(reachable(G, Xs, removed=gone | res.min_cut)))
    exact = [s for s in enumerate_important_separators(G, Xs, Ys, d, gone) if len(s.edges) == d]
    return exact[0] if exact else None


@dataclass(frozen=True)
class HChain:
    level: int
    components: list[frozenset[int]]
    separators: list[frozenset[int]]
    left: list[frozenset[int]]
    right: list[frozenset[int]]


def _touching(G: Graph, edges: Iterable[int], side: frozenset[int]) -> frozenset[int]:
    out = set()
    for e in edges:
        out |= set(G.endpoints(e)) & side
    return frozenset(out)


def build_h_chain(G: Graph, X: Iterable[int], Y: Iterable[int], h: int) -> HChain:
    """Peel ``G`` from ``X`` towards ``Y`` with important separators of size ``h``."""
    Xs, Ys = _sets(G, X, Y)
    if h < 1:
        raise GraphError("chain level must be positive")
    lam = edge_connectivity(G, Xs, Ys, limit=h)
    if lam < h:
        raise GraphError(f"an (X,Y)-separator of size {lam} < {h} exists; the chain needs none")
    comps, seps, left, right = [], [], [Xs], []
    used: set[int] = set()
    cur = Xs
    while True:
        gone = {e for e in range(G.m) if G.eu[e] in used or G.ev[e] in used}
        if cur & Ys:
            break
        sep = find_important_separator(G, cur, Ys, h, removed=gone)
        if sep is None:
            break
        rest = frozenset(range(G.n)) - used - sep.reachable
        comps.append(sep.reachable)
        seps.append(sep.edges)
        right.append(_touching(G, sep.edges, sep.reachable))
        cur = _touching(G, sep.edges, rest)
        left.append(cur)
        used |= sep.reachable
    comps.append(frozenset(range(G.n)) - used)
    right.append(Ys)
    return HChain(h, comps, seps, left, right)


@dataclass(frozen=True)
class Component:
    level: int
    index: int
    vertices: frozenset[int]
    left: frozenset[int]
    right: frozenset[int]
    left_sep: frozenset[int]
    right_sep: frozenset[int]
    parent: int  # index at level - 1, or -1 for the root

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "vertices": sorted(self.vertices),
            "left_boundary": sorted(self.left),
            "right_boundary": sorted(self.right),
            "left_separator": sorted(self.left_sep),
            "right_separator": sorted(self.right_sep),
            "parent": self.parent,
        }


@dataclass(frozen=True, eq=False)
class Hierarchy:
    G: Graph
    s: int
    t: int
    k: int
    levels: dict[int, list[Component]] = field(default_factory=dict)

    @property
    def separator_edges(self) -> frozenset[int]:
        out: set[int] = set()
        for comps in self.levels.values():
            for c in comps:
                out |= c.left_sep | c.right_sep
        return frozenset(out)

    def all_components(self) -> list[Component]:
        return [c for h in sorted(self.levels) for c in self.levels[h]]

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "mode": "chain",
            "s": self.s,
            "t": self.t,
            "k": self.k,
            "separator_edges": sorted(self.separator_edges),
            "levels": [
                {"level": h, "components": [c.to_json() for c in self.levels[h]]}
                for h in sorted(self.levels)
            ],
        }


def build_hierarchy(G: Graph, s: int, t: int, k: int, caps: Caps | None = None) -> Hierarchy:
    """Level 1 is ``G`` itself; level ``h+1`` refines each level-``h`` component
    by its own (left boundary, right boundary) chain, up to level ``k-1``."""
    caps = caps or default_caps()
    if k < 2:
        raise GraphError("the chain hierarchy needs k >= 2")
    if k > caps.max_k:
        raise CapExceeded(f"k={k} exceeds cap {caps.max_k}")
    if s == t:
        raise GraphError("s and t must differ")
    root = Component(1, 0, frozenset(range(G.n)), frozenset([s]), frozenset([t]),
                     frozenset(), frozenset(), -1)
    levels = {1: [root]}
    for h in range(1, k - 1):
        nxt: list[Component] = []
        for comp in levels[h]:
            view = induced_subgraph(G, comp.vertices)
            back = sorted(comp.vertices)
            lift_v = lambda S: frozenset(back[v] for v in S)  # noqa: E731
            lift_e = lambda S: frozenset(int(view.edge_map[e]) for e in S)  # noqa: E731
            X, Y = view.vertices_of(comp.left), view.vertices_of(comp.right)
            if X & Y:
                chain = HChain(h + 1, [frozenset(range(view.graph.n))], [], [X], [Y])
            else:
                chain = build_h_chain(view.graph, X, Y, h + 1)
            p = len(chain.components)
            for j in range(p):
                nxt.append(Component(
                    h + 1, len(nxt), lift_v(chain.components[j]),
                    comp.left if j == 0 else lift_v(chain.left[j]),
                    comp.right if j == p - 1 else lift_v(chain.right[j]),
                    comp.left_sep if j == 0 else lift_e(chain.separators[j - 1]),
                    comp.right_sep if j == p - 1 else lift_e(chain.separators[j]),
                    comp.index,
                ))
        levels[h + 1] = nxt
    return Hierarchy(G, s, t, k, levels)


def audit_hierarchy(H: Hierarchy) -> list[str]:
    """Components whose boundaries can be split by at most ``h`` internal edges."""
    issues = []
    for h, comps in H.levels.items():
        for c in comps:
            if c.left & c.right:
                continue
            view = induced_subgraph(H.G, c.vertices)
            lam = edge_connectivity(view.graph, view.vertices_of(c.left), view.vertices_of(c.right),
                                    limit=h + 1)
            if lam < h + 1:
                issues.append(f"level {h} component {c.index}: internal boundary connectivity {lam} < {h + 1}")
    return issues
