"""Hard enumeration limits for the brute-force oracles.

Override through ``RELNET_CAPS``, either JSON (``{"fault_sets": 10}``) or
``key=value`` pairs separated by commas.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace


class CapExceeded(RuntimeError):
    """An oracle refused to run because its enumeration would exceed a cap."""


@dataclass(frozen=True)
class Caps:
    fault_sets: int = 2_000_000  # per demand
    vertex_subset_bits: int = 18  # 2^n vertex subsets
    edge_subset_bits: int = 16  # 2^m candidate solutions
    separator_edges: int = 16
    separator_size: int = 4
    max_k: int = 6

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"cap {f.name} must be positive")


def parse_caps(text: str, base: Caps | None = None) -> Caps:
    base = base or Caps()
    text = text.strip()
    if not text:
        return base
    if text.startswith("{"):
        raw = json.loads(text)
    else:
        raw = dict(item.split("=", 1) for item in text.split(",") if item.strip())
    known = {f.name for f in fields(Caps)}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown cap(s): {sorted(unknown)}")
    return replace(base, **{k.strip(): int(v) for k, v in raw.items()})


def default_caps() -> Caps:
    return parse_caps(os.environ.get("RELNET_CAPS", ""))
