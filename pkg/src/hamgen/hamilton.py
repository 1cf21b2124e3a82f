"""Exact hamiltonian cycle and path counting.

All counts are of cycles (paths) as edge sets, so rotations and reversals
are not counted twice. The searches extend a single path with bit-mask
bookkeeping and prune on

* an unvisited vertex with too few usable neighbours,
* two unvisited vertices that both force the next step,
* an unvisited region that is no longer connected to the path end.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from ._bits import U0, U1, bit, component_of, ctz, full_mask, popcount
from .graph import Graph

UNCAPPED = 1 << 62

# recording modes for _extend
_COUNT, _STORE, _INCIDENCE = 0, 1, 2


@njit(cache=True)
def _record(path, n, close, mode, store, slot, inc):
    if mode == _STORE:
        for i in range(n):
            store[slot, i] = U0
        for i in range(n - 1):
            u, v = path[i], path[i + 1]
            store[slot, u] |= bit(v)
            store[slot, v] |= bit(u)
        if close >= 0:
            u = path[n - 1]
            store[slot, u] |= bit(close)
            store[slot, close] |= bit(u)
    elif mode == _INCIDENCE:
        for i in range(n - 1):
            u, v = path[i], path[i + 1]
            inc[u, v] += 1
            inc[v, u] += 1
        if close >= 0:
            u = path[n - 1]
            inc[u, close] += 1
            inc[close, u] += 1


@njit(cache=True)
def _extend(adj, n, vis, depth, ends, close, cap, cnt, path, mode, store, inc):
    """Count hamiltonian paths continuing ``path[:depth]`` whose last vertex
    lies in ``ends``. ``cnt[0]`` accumulates, capped at ``cap``."""
    base = depth
    full = full_mask(n)
    VIS = np.empty(n + 1, np.uint64)
    NXT = np.zeros(n + 1, np.uint64)
    VIS[depth] = vis
    d = depth
    enter = True
    while True:
        if enter:
            enter = False
            NXT[d] = U0
            cur = path[d - 1]
            unv = full & ~VIS[d]
            if unv == U0:
                if (ends >> np.uint64(cur)) & U1:
                    _record(path, n, close, mode, store, cnt[0], inc)
                    cnt[0] += 1
            elif unv & ends != U0:
                usable = unv | bit(cur)
                forced = -1
                dead = False
                rest = unv
                nun = popcount(unv)
                while rest:
                    u = ctz(rest)
                    rest &= rest - U1
                    need = 2
                    if (ends >> np.uint64(u)) & U1:
                        need = 1
                    avail = adj[u] & usable
                    c = popcount(avail)
                    if c < need:
                        dead = True
                        break
                    if c == need and (avail >> np.uint64(cur)) & U1:
                        if (need == 1 and nun > 1) or forced >= 0:
                            dead = True
                            break
                        forced = u
                if not dead and d % 4 == 0 and nun > 3:
                    if component_of(adj, cur, usable) != usable:
                        dead = True
                if not dead:
                    if forced >= 0:
                        NXT[d] = bit(forced)
                    else:
                        NXT[d] = adj[cur] & unv
        if NXT[d] == U0 or cnt[0] >= cap:
            if d == base:
                return
            d -= 1
            continue
        u = ctz(NXT[d])
        NXT[d] &= NXT[d] - U1
        path[d] = u
        VIS[d + 1] = VIS[d] | bit(u)
        d += 1
        enter = True


@njit(cache=True)
def hc_kernel(adj, n, cap, mode, store, inc):
    """Number of hamiltonian cycles, saturating at ``cap``.

    The search is anchored at a minimum-degree vertex ``s``; a cycle
    ``s, f, ..., l`` is counted only when ``f < l``.
    """
    cnt = np.zeros(1, np.int64)
    if n < 3:
        return 0
    s = 0
    for v in range(n):
        if popcount(adj[v]) < popcount(adj[s]):
            s = v
    if popcount(adj[s]) < 2:
        return 0
    path = np.empty(n, np.int64)
    path[0] = s
    firsts = adj[s]
    while firsts:
        f = ctz(firsts)
        firsts &= firsts - U1
        ends = adj[s] & ~((bit(f) << U1) - U1)
        if ends == U0:
            continue
        path[1] = f
        _extend(adj, n, bit(s) | bit(f), 2, ends, s, cap, cnt, path, mode, store, inc)
        if cnt[0] >= cap:
            break
    return cnt[0]


@njit(cache=True)
def ab_path_kernel(adj, n, a, b, cap, mode, store):
    """Hamiltonian paths from ``a`` to ``b``; stored entries close the edge ``ab``."""
    cnt = np.zeros(1, np.int64)
    inc = np.zeros((1, 1), np.int64)
    path = np.empty(n, np.int64)
    path[0] = a
    if n == 1:
        return 0
    _extend(adj, n, bit(a), 1, bit(b), a if mode == _STORE else -1, cap, cnt, path, mode, store, inc)
    return cnt[0]


@njit(cache=True)
def hp_kernel(adj, n, cap):
    """Hamiltonian paths with free endpoints, each counted once."""
    cnt = np.zeros(1, np.int64)
    store = np.zeros((1, 1), np.uint64)
    inc = np.zeros((1, 1), np.int64)
    if n == 1:
        return 1
    path = np.empty(n, np.int64)
    for s in range(n - 1):
        ends = full_mask(n) & ~((bit(s) << U1) - U1)
        path[0] = s
        _extend(adj, n, bit(s), 1, ends, -1, cap, cnt, path, _COUNT, store, inc)
        if cnt[0] >= cap:
            break
    return cnt[0]


@njit(cache=True)
def cycles_of_length_kernel(adj, n, length, cap):
    """Cycles with exactly ``length`` vertices, anchored at their least vertex."""
    cnt = np.zeros(1, np.int64)
    path = np.empty(n + 1, np.int64)
    VIS = np.zeros(n + 2, np.uint64)
    NXT = np.zeros(n + 2, np.uint64)
    for s in range(n):
        allowed = full_mask(n) & ~((bit(s) << U1) - U1)
        firsts = adj[s] & allowed
        while firsts:
            f = ctz(firsts)
            firsts &= firsts - U1
            # depth-first over simple paths s, f, ... of the given length
            path[0] = s
            path[1] = f
            VIS[2] = bit(s) | bit(f)
            NXT[2] = adj[f] & allowed & ~VIS[2] if length > 2 else U0
            d = 2
            while d >= 2:
                if d == length:
                    cur = path[d - 1]
                    if (adj[cur] >> np.uint64(s)) & U1 and cur > f:
                        cnt[0] += 1
                        if cnt[0] >= cap:
                            return cnt[0]
                    d -= 1
                    continue
                if NXT[d] == U0:
                    d -= 1
                    continue
                u = ctz(NXT[d])
                NXT[d] &= NXT[d] - U1
                path[d] = u
                VIS[d + 1] = VIS[d] | bit(u)
                if d + 1 < length:
                    NXT[d + 1] = adj[u] & allowed & ~VIS[d + 1]
                d += 1
    return cnt[0]


# -- public API -------------------------------------------------------------


@dataclass(frozen=True)
class HamReport:
    count: int
    saturated: bool

    def __int__(self) -> int:
        return self.count


def _cap(cap: Optional[int]) -> int:
    if cap is None:
        return UNCAPPED
    if cap < 1:
        raise ValueError("cap must be at least 1")
    return cap


def _dummy():
    return np.zeros((1, 1), np.uint64), np.zeros((1, 1), np.int64)


def count_hc(g: Graph, cap: Optional[int] = None) -> HamReport:
    """Number of hamiltonian cycles of ``g``, saturating at ``cap``."""
    if g.n < 3:
        raise ValueError("hamiltonian cycles need at least 3 vertices")
    c = _cap(cap)
    store, inc = _dummy()
    k = int(hc_kernel(g.masks(), g.n, c, _COUNT, store, inc))
    return HamReport(k, k >= c)


def h(g: Graph) -> int:
    """Exact hamiltonian cycle count."""
    return count_hc(g).count


def hamiltonian_cycles(g: Graph, cap: int = 1000) -> list[list[int]]:
    """Up to ``cap`` hamiltonian cycles as vertex sequences starting at the anchor."""
    if g.n < 3:
        return []
    store = np.zeros((cap, g.n), np.uint64)
    _, inc = _dummy()
    k = int(hc_kernel(g.masks(), g.n, cap, _STORE, store, inc))
    return [_walk(store[i], g.n) for i in range(k)]


def _walk(masks, n) -> list[int]:
    seq = [0]
    prev = -1
    cur = 0
    for _ in range(n - 1):
        nb = [v for v in range(n) if int(masks[cur]) >> v & 1 and v != prev]
        prev, cur = cur, nb[0]
        seq.append(cur)
    return seq


def count_hp(g: Graph, cap: Optional[int] = None) -> HamReport:
    """Number of hamiltonian paths (free endpoints, up to reversal)."""
    if g.n < 2:
        raise ValueError("hamiltonian paths need at least 2 vertices")
    c = _cap(cap)
    k = int(hp_kernel(g.masks(), g.n, c))
    return HamReport(k, k >= c)


def count_hp_between(g: Graph, a: int, b: int, cap: Optional[int] = None) -> HamReport:
    c = _cap(cap)
    store, _ = _dummy()
    k = int(ab_path_kernel(g.masks(), g.n, a, b, c, _COUNT, store))
    return HamReport(k, k >= c)


def count_cycles_of_length(g: Graph, length: int, cap: Optional[int] = None) -> HamReport:
    if not 3 <= length <= g.n:
        raise ValueError(f"cycle length {length} outside [3, {g.n}]")
    c = _cap(cap)
    k = int(cycles_of_length_kernel(g.masks(), g.n, length, c))
    return HamReport(k, k >= c)


def hc_edge_incidence(g: Graph) -> dict[tuple[int, int], int]:
    """For every edge, the number of hamiltonian cycles through it."""
    if g.n < 3:
        raise ValueError("hamiltonian cycles need at least 3 vertices")
    store, _ = _dummy()
    inc = np.zeros((g.n, g.n), np.int64)
    hc_kernel(g.masks(), g.n, UNCAPPED, _INCIDENCE, store, inc)
    return {(u, v): int(inc[u, v]) for u, v in g.edges()}


def is_hamiltonian(g: Graph) -> bool:
    return g.n >= 3 and count_hc(g, 1).count == 1


def is_uniquely_hamiltonian(g: Graph) -> bool:
    return g.n >= 3 and count_hc(g, 2).count == 1


def thomassen_edge(g: Graph) -> Optional[tuple[int, int]]:
    """An edge ``e`` with both ``g - e`` and ``g / e`` hamiltonian, or None.

    Raises ValueError for non-hamiltonian input.
    """
    if g.n < 4:
        raise ValueError("need at least 4 vertices")
    if not is_hamiltonian(g):
        raise ValueError("graph is not hamiltonian")
    for u, v in g.edges():
        minus = g.copy().remove_edge(u, v)
        if not is_hamiltonian(minus):
            continue
        if is_hamiltonian(g.contract_edge(u, v)):
            return (u, v)
    return None


def thomassen_edge_exists(g: Graph) -> tuple[bool, Optional[tuple[int, int]]]:
    e = thomassen_edge(g)
    return e is not None, e
