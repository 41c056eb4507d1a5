"""Small value types shared across the solvers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph


@dataclass(frozen=True, order=True)
class Demand:
    """Connectivity requirement ``k`` between ``s`` and ``t``."""

    s: int
    t: int
    k: int

    def __post_init__(self):
        if self.s == self.t:
            raise ValueError(f"demand endpoints must differ, got s = t = {self.s}")
        if self.k < 1:
            raise ValueError(f"demand requirement must be >= 1, got {self.k}")


@dataclass(frozen=True)
class SetDemand:
    """Requirement between vertex groups: some ``X`` vertex must reach some ``Y``
    vertex after any fault set with fewer than ``k`` edges, whenever it can in the
    host graph.  A plain demand is the singleton case."""

    X: frozenset[int]
    Y: frozenset[int]
    k: int

    @classmethod
    def of(cls, d: "Demand | SetDemand") -> "SetDemand":
        if isinstance(d, SetDemand):
            return d
        return cls(frozenset([d.s]), frozenset([d.t]), d.k)


@dataclass(frozen=True)
class Solution:
    edges: frozenset[int]
    weight: float
    parts: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def of(cls, G: Graph, edges: Iterable[int], **parts) -> "Solution":
        E = frozenset(int(e) for e in edges)
        return cls(E, G.weight(sorted(E)), dict(parts))

    def to_json(self) -> dict:
        return {"edges": sorted(self.edges), "weight": round(self.weight, 9)}


class OrdinaryDemand(Exception):
    """Raised where a relative demand is required but ``lambda_G(s,t) >= k``."""


class InternalError(RuntimeError):
    """An invariant that the algorithms guarantee did not hold."""
