"""Hot loops of the brute-force oracles.

Each kernel has a numba version (``nb_*``) and a vectorised numpy version
(``np_*``) with identical results.  The numpy path is used when numba is
missing or when ``RELNET_NO_NUMBA=1`` is set; ``BACKEND`` records the choice.

Conventions: ``eu``/``ev`` int64 endpoint arrays, ``alive`` boolean edge
masks, fault rows are int64 arrays of edge ids padded with ``-1``, vertex
subsets passed to the cut kernels are int64 bitmasks (so ``n <= 62``).
"""
from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

USE_NUMBA = HAVE_NUMBA and os.environ.get("RELNET_NO_NUMBA", "") not in ("1", "true", "yes")
BACKEND = "numba" if USE_NUMBA else "numpy"


# --------------------------------------------------------------------- numba

@njit(cache=True)
def _find(parent, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


@njit(cache=True)
def _linked(n, eu, ev, alive, xs, ys):
    parent = np.arange(n)
    for e in range(eu.shape[0]):
        if alive[e]:
            ra = _find(parent, eu[e])
            rb = _find(parent, ev[e])
            if ra != rb:
                parent[ra] = rb
    mark = np.zeros(n, dtype=np.bool_)
    for v in range(n):
        if xs[v]:
            mark[_find(parent, v)] = True
    for v in range(n):
        if ys[v] and mark[_find(parent, v)]:
            return True
    return False


@njit(cache=True)
def nb_xy_connected_rows(n, eu, ev, alive, faults, xs, ys):
    P = faults.shape[0]
    out = np.zeros(P, dtype=np.bool_)
    row = alive.copy()
    for p in range(P):
        row[:] = alive
        for j in range(faults.shape[1]):
            if faults[p, j] >= 0:
                row[faults[p, j]] = False
        out[p] = _linked(n, eu, ev, row, xs, ys)
    return out


@njit(cache=True)
def nb_first_witness(n, eu, ev, halive, faults, xs, ys):
    m = eu.shape[0]
    g = np.ones(m, dtype=np.bool_)
    h = halive.copy()
    for p in range(faults.shape[0]):
        g[:] = True
        h[:] = halive
        for j in range(faults.shape[1]):
            f = faults[p, j]
            if f >= 0:
                g[f] = False
                h[f] = False
        if _linked(n, eu, ev, g, xs, ys) and not _linked(n, eu, ev, h, xs, ys):
            return p
    return -1


@njit(cache=True)
def nb_first_feasible(n, eu, ev, cand, faults, rxs, rys):
    P = faults.shape[0]
    order = np.arange(P)
    row = np.zeros(eu.shape[0], dtype=np.bool_)
    for c in range(cand.shape[0]):
        ok = True
        for q in range(P):
            p = order[q]
            row[:] = cand[c]
            for j in range(faults.shape[1]):
                if faults[p, j] >= 0:
                    row[faults[p, j]] = False
            if not _linked(n, eu, ev, row, rxs[p], rys[p]):
                ok = False
                # move the failing check to the front; it tends to fail again
                for r in range(q, 0, -1):
                    order[r] = order[r - 1]
                order[0] = p
                break
        if ok:
            return c
    return -1


@njit(cache=True)
def nb_feasible_mask(n, eu, ev, cand, faults, rxs, rys):
    out = np.ones(cand.shape[0], dtype=np.bool_)
    row = np.zeros(eu.shape[0], dtype=np.bool_)
    for c in range(cand.shape[0]):
        for p in range(faults.shape[0]):
            row[:] = cand[c]
            for j in range(faults.shape[1]):
                if faults[p, j] >= 0:
                    row[faults[p, j]] = False
            if not _linked(n, eu, ev, row, rxs[p], rys[p]):
                out[c] = False
                break
    return out


@njit(cache=True)
def nb_cut_values(n, eu, ev, alive, sets):
    out = np.zeros(sets.shape[0], dtype=np.int64)
    for i in range(sets.shape[0]):
        A = sets[i]
        c = 0
        for e in range(eu.shape[0]):
            if alive[e] and (((A >> eu[e]) & 1) != ((A >> ev[e]) & 1)):
                c += 1
        out[i] = c
    return out


@njit(cache=True)
def nb_induced_connected(n, eu, ev, sets):
    out = np.zeros(sets.shape[0], dtype=np.bool_)
    parent = np.arange(n)
    for i in range(sets.shape[0]):
        A = sets[i]
        for v in range(n):
            parent[v] = v
        first = -1
        for v in range(n):
            if (A >> v) & 1:
                first = v
                break
        if first < 0:
            continue
        for e in range(eu.shape[0]):
            if ((A >> eu[e]) & 1) and ((A >> ev[e]) & 1):
                ra = _find(parent, eu[e])
                rb = _find(parent, ev[e])
                if ra != rb:
                    parent[ra] = rb
        r0 = _find(parent, first)
        ok = True
        for v in range(n):
            if (A >> v) & 1 and _find(parent, v) != r0:
                ok = False
                break
        out[i] = ok
    return out


# --------------------------------------------------------------------- numpy

def _incidence(n, idx):
    M = np.zeros((idx.shape[0], n), dtype=np.float32)
    M[np.arange(idx.shape[0]), idx] = 1.0
    return M


def _np_reach(n, eu, ev, alive2d, start):
    """Rows of ``start`` flooded along the per-row live edges."""
    Iu, Iv = _incidence(n, eu), _incidence(n, ev)
    reach = start.copy()
    for _ in range(n):
        to_v = (reach[:, eu] & alive2d).astype(np.float32)
        to_u = (reach[:, ev] & alive2d).astype(np.float32)
        new = reach | (to_v @ Iv > 0) | (to_u @ Iu > 0)
        if np.array_equal(new, reach):
            break
        reach = new
    return reach


def _fault_masks(m, faults):
    F = np.zeros((faults.shape[0], m), dtype=bool)
    rows, cols = np.nonzero(faults >= 0)
    F[rows, faults[rows, cols]] = True
    return F


def np_xy_connected_rows(n, eu, ev, alive, faults, xs, ys):
    alive2d = alive[None, :] & ~_fault_masks(eu.shape[0], faults)
    start = np.repeat(xs[None, :], faults.shape[0], axis=0)
    return (_np_reach(n, eu, ev, alive2d, start) & ys[None, :]).any(axis=1)


def np_first_witness(n, eu, ev, halive, faults, xs, ys):
    g = np_xy_connected_rows(n, eu, ev, np.ones(eu.shape[0], dtype=bool), faults, xs, ys)
    h = np_xy_connected_rows(n, eu, ev, halive, faults, xs, ys)
    bad = np.nonzero(g & ~h)[0]
    return int(bad[0]) if bad.size else -1


def np_first_feasible(n, eu, ev, cand, faults, rxs, rys, chunk=4096):
    F = _fault_masks(eu.shape[0], faults)
    for lo in range(0, cand.shape[0], chunk):
        block = cand[lo:lo + chunk]
        live = np.arange(block.shape[0])
        for p in range(faults.shape[0]):
            if live.size == 0:
                break
            alive2d = block[live] & ~F[p][None, :]
            start = np.repeat(rxs[p][None, :], live.size, axis=0)
            ok = (_np_reach(n, eu, ev, alive2d, start) & rys[p][None, :]).any(axis=1)
            live = live[ok]
        if live.size:
            return lo + int(live[0])
    return -1


def np_feasible_mask(n, eu, ev, cand, faults, rxs, rys):
    F = _fault_masks(eu.shape[0], faults)
    ok = np.ones(cand.shape[0], dtype=bool)
    for p in range(faults.shape[0]):
        live = np.nonzero(ok)[0]
        if live.size == 0:
            break
        alive2d = cand[live] & ~F[p][None, :]
        start = np.repeat(rxs[p][None, :], live.size, axis=0)
        ok[live] = (_np_reach(n, eu, ev, alive2d, start) & rys[p][None, :]).any(axis=1)
    return ok


def np_cut_values(n, eu, ev, alive, sets):
    bu = (sets[:, None] >> eu[None, :]) & 1
    bv = (sets[:, None] >> ev[None, :]) & 1
    return ((bu != bv) & alive[None, :]).sum(axis=1).astype(np.int64)


def np_induced_connected(n, eu, ev, sets):
    bits = ((sets[:, None] >> np.arange(n)[None, :]) & 1).astype(bool)
    inside = bits[:, eu] & bits[:, ev]
    first = np.argmax(bits, axis=1)
    start = np.zeros_like(bits)
    start[np.arange(sets.shape[0]), first] = True
    start &= bits
    reach = _np_reach(n, eu, ev, inside, start)
    return bits.any(axis=1) & (reach == bits).all(axis=1)


NUMBA = {
    "xy_connected_rows": nb_xy_connected_rows,
    "first_witness": nb_first_witness,
    "first_feasible": nb_first_feasible,
    "feasible_mask": nb_feasible_mask,
    "cut_values": nb_cut_values,
    "induced_connected": nb_induced_connected,
}
NUMPY = {
    "xy_connected_rows": np_xy_connected_rows,
    "first_witness": np_first_witness,
    "first_feasible": np_first_feasible,
    "feasible_mask": np_feasible_mask,
    "cut_values": np_cut_values,
    "induced_connected": np_induced_connected,
}
ACTIVE = NUMBA if USE_NUMBA else NUMPY


def kernel(name: str, backend: str | None = None):
    table = {"numba": NUMBA, "numpy": NUMPY}.get(backend or BACKEND)
    if table is None:
        raise ValueError(f"unknown backend {backend!r}")
    return table[name]


def fault_rows(m: int, max_size: int, pool=None) -> np.ndarray:
    """All edge subsets of size ``0..max_size`` of ``pool`` (default all edges),
    as a ``-1``-padded int64 matrix in size-then-lexicographic order."""
    from itertools import combinations

    pool = list(range(m)) if pool is None else sorted(pool)
    width = max(max_size, 1)
    rows = []
    for r in range(max_size + 1):
        for combo in combinations(pool, r):
            rows.append(list(combo) + [-1] * (width - r))
    return np.asarray(rows, dtype=np.int64).reshape(-1, width)
