"""Simple graphs on at most 64 vertices stored as adjacency bit masks."""
from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Optional

import numpy as np

MAX_ORDER = 64


class OrderError(ValueError):
    """Requested order or label lies outside what a Graph can hold."""


class EdgeStateError(ValueError):
    """An edge operation was called on a pair in the wrong state (caller bug)."""


class Graph6Error(ValueError):
    """Input is not a well-formed graph6 string."""


def _check_order(n: int, low: int) -> None:
    if not low <= n <= MAX_ORDER:
        raise OrderError(f"order {n} outside [{low}, {MAX_ORDER}]")


class Graph:
    """Mutable simple graph over vertices ``0..n-1``.

    ``adj[v]`` is an int whose bit ``u`` is set iff ``uv`` is an edge.
    """

    __slots__ = ("n", "adj", "m")

    def __init__(self, n: int, adj: Optional[Iterable[int]] = None):
        _check_order(n, 1)
        self.n = n
        if adj is None:
            self.adj = [0] * n
            self.m = 0
        else:
            self.adj = [int(x) for x in adj]
            if len(self.adj) != n:
                raise ValueError("adjacency length does not match order")
            self.m = sum(x.bit_count() for x in self.adj) // 2
            self._check()

    # -- construction -------------------------------------------------------

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        _check_order(n, 3)
        g = cls(n)
        for i in range(n):
            g.add_edge(i, (i + 1) % n)
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << v) for v in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        g = cls(n)
        for i in range(n - 1):
            g.add_edge(i, i + 1)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    @classmethod
    def from_masks(cls, masks) -> "Graph":
        """Build from a sequence of masks without re-validating symmetry."""
        g = cls.__new__(cls)
        g.n = len(masks)
        g.adj = [int(x) for x in masks]
        g.m = sum(x.bit_count() for x in g.adj) // 2
        return g

    def copy(self) -> "Graph":
        g = Graph.__new__(Graph)
        g.n, g.adj, g.m = self.n, list(self.adj), self.m
        return g

    # -- queries ------------------------------------------------------------

    def _label(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise OrderError(f"vertex {v} outside 0..{self.n - 1}")

    def has_edge(self, u: int, v: int) -> bool:
        self._label(u)
        self._label(v)
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        self._label(v)
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [x.bit_count() for x in self.adj]

    def degree_profile(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees(), reverse=True))

    def neighbours(self, v: int) -> list[int]:
        self._label(v)
        return _bits_of(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in _bits_of(self.adj[u] >> (u + 1)):
                yield u, u + 1 + v

    def non_edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if not self.adj[u] >> v & 1:
                    yield u, v

    def distance(self, u: int, v: int) -> Optional[int]:
        """Hop count between ``u`` and ``v``, or None when unreachable."""
        self._label(u)
        self._label(v)
        seen = reach = 1 << u
        d = 0
        while not reach >> v & 1:
            nxt = 0
            for w in _bits_of(reach):
                nxt |= self.adj[w]
            nxt &= ~seen
            if not nxt:
                return None
            seen |= nxt
            reach = nxt
            d += 1
        return d

    def girth(self) -> Optional[int]:
        """Length of a shortest cycle; None for forests."""
        best = None
        for s in range(self.n):
            dist = {s: 0}
            parent = {s: -1}
            queue = deque([s])
            while queue:
                x = queue.popleft()
                if best is not None and 2 * dist[x] + 1 >= best:
                    break
                for y in _bits_of(self.adj[x]):
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        parent[y] = x
                        queue.append(y)
                    elif parent[x] != y:
                        length = dist[x] + dist[y] + 1
                        if best is None or length < best:
                            best = length
        return best

    def is_connected(self) -> bool:
        seen = frontier = 1
        while frontier:
            nxt = 0
            for w in _bits_of(frontier):
                nxt |= self.adj[w]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def is_regular(self, r: Optional[int] = None) -> bool:
        d = set(self.degrees())
        return len(d) == 1 and (r is None or d == {r})

    def triangle_count(self) -> int:
        return sum((self.adj[u] & self.adj[v]).bit_count() for u, v in self.edges()) // 3

    # -- mutation -----------------------------------------------------------

    def add_edge(self, u: int, v: int) -> "Graph":
        self._label(u)
        self._label(v)
        if u == v:
            raise EdgeStateError("loops are not allowed")
        if self.adj[u] >> v & 1:
            raise EdgeStateError(f"edge {u}-{v} already present")
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u
        self.m += 1
        return self

    def remove_edge(self, u: int, v: int) -> "Graph":
        self._label(u)
        self._label(v)
        if u == v or not self.adj[u] >> v & 1:
            raise EdgeStateError(f"edge {u}-{v} not present")
        self.adj[u] &= ~(1 << v)
        self.adj[v] &= ~(1 << u)
        self.m -= 1
        return self

    # -- derived graphs -----------------------------------------------------

    def delete_vertex(self, v: int) -> "Graph":
        """Copy with ``v`` removed; higher labels shift down by one."""
        self._label(v)
        if self.n < 2:
            raise OrderError("cannot delete the only vertex")
        low = (1 << v) - 1
        rows = []
        for u in range(self.n):
            if u == v:
                continue
            x = self.adj[u]
            rows.append((x & low) | ((x >> (v + 1)) << v))
        return Graph(self.n - 1, rows)

    def contract_edge(self, u: int, v: int) -> "Graph":
        """Copy with edge ``uv`` contracted; multi-edges and loops are dropped.

        The merged vertex takes the label min(u, v); the larger label is deleted.
        """
        if not self.has_edge(u, v):
            raise EdgeStateError(f"edge {u}-{v} not present")
        keep, gone = min(u, v), max(u, v)
        g = self.copy()
        merged = (g.adj[keep] | g.adj[gone]) & ~((1 << keep) | (1 << gone))
        for w in _bits_of(g.adj[gone]):
            g.adj[w] &= ~(1 << gone)
        g.adj[gone] = 0
        for w in _bits_of(merged):
            g.adj[w] |= 1 << keep
        g.adj[keep] = merged
        g.m = sum(x.bit_count() for x in g.adj) // 2
        return g.delete_vertex(gone)

    def subdivide_edge(self, u: int, v: int) -> "Graph":
        """Copy with a new vertex ``n`` placed on edge ``uv``."""
        if not self.has_edge(u, v):
            raise EdgeStateError(f"edge {u}-{v} not present")
        if self.n >= MAX_ORDER:
            raise OrderError("subdivision would exceed the maximum order")
        g = Graph(self.n + 1, self.adj + [0])
        g.remove_edge(u, v)
        g.add_edge(u, self.n)
        g.add_edge(v, self.n)
        return g

    def relabel(self, perm) -> "Graph":
        """Graph whose vertex ``perm[v]`` plays the role of ``v``."""
        rows = [0] * self.n
        for v in range(self.n):
            x = 0
            for w in _bits_of(self.adj[v]):
                x |= 1 << perm[w]
            rows[perm[v]] = x
        return Graph.from_masks(rows)

    def disjoint_union(self, other: "Graph") -> "Graph":
        if self.n + other.n > MAX_ORDER:
            raise OrderError("union would exceed the maximum order")
        return Graph(self.n + other.n, self.adj + [x << self.n for x in other.adj])

    # -- interop ------------------------------------------------------------

    def masks(self) -> np.ndarray:
        return np.array(self.adj, dtype=np.uint64)

    def to_graph6(self) -> bytes:
        return graph6_encode(self)

    @classmethod
    def from_graph6(cls, data) -> "Graph":
        return graph6_decode(data)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, g6={self.to_graph6().decode()!r})"

    def _check(self) -> None:
        for v in range(self.n):
            x = self.adj[v]
            if x >> v & 1:
                raise ValueError(f"loop at {v}")
            if x >> self.n:
                raise ValueError(f"neighbour of {v} outside the vertex range")
            for w in _bits_of(x):
                if not self.adj[w] >> v & 1:
                    raise ValueError(f"asymmetric adjacency {v}-{w}")


def _bits_of(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


# -- graph6 -----------------------------------------------------------------


def graph6_encode(g: Graph) -> bytes:
    n = g.n
    if n <= 62:
        out = bytearray([n + 63])
    else:
        out = bytearray([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    acc = nbits = 0
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def graph6_decode(data) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = bytes(data).rstrip(b"\r\n")
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise Graph6Error("empty graph6 string")
    if any(c < 63 or c > 126 for c in data):
        raise Graph6Error("character outside the graph6 range")
    if data[0] != 126:
        n, body = data[0] - 63, data[1:]
    else:
        if len(data) < 4 or data[1] == 126:
            raise Graph6Error("unsupported or truncated order header")
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        body = data[4:]
    if not 1 <= n <= MAX_ORDER:
        raise Graph6Error(f"order {n} not supported")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"body length {len(body)} does not match order {n}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] - 63) >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    pad = (6 - nbits % 6) % 6
    if pad and (body[-1] - 63) & ((1 << pad) - 1):
        raise Graph6Error("non-zero padding bits")
    return Graph.from_masks(adj)
