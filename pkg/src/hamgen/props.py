"""Named constructions and verifiers for conjectures about hamiltonian cycles.

Constructions: generalised Petersen graphs, tups (graphs with three 2-valent
ports and exactly one hamiltonian path between any two ports), their
extensions and merges, and triangle replacement.

Verifiers consume graph streams (usually from :mod:`hamgen.generate`) and
return the list of offending graphs, so an empty list means "holds".
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from numba import njit

from .canon import canonical_form, canonical_report
from .generate import GenConfig, Mode, OutputFilters, iter_graphs, mode_predicate
from .graph import MAX_ORDER, Graph
from .hamilton import count_hc, count_hp, count_hp_between, hc_edge_incidence, thomassen_edge
from .planarity import is_planar


class ConstructionError(ValueError):
    """A construction was given arguments outside its domain."""


class RevalidationError(ValueError):
    """A verifier received a graph outside the class it checks."""


# -- generalised Petersen graphs ---------------------------------------------


def gp(n: int, k: int) -> Graph:
    """GP(n, k): outer cycle ``0..n-1``, inner vertices ``n+i``, spokes ``i, n+i``."""
    if n < 3 or not 1 <= k < n / 2 or 2 * n > MAX_ORDER:
        raise ConstructionError(f"GP({n},{k}) needs n >= 3, 1 <= k < n/2 and 2n <= {MAX_ORDER}")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((i, n + i))
        edges.append((n + i, n + (i + k) % n))
    return Graph.from_edges(2 * n, edges)


# -- tups ----------------------------------------------------------------------

Port = Union[int, str]


@dataclass(frozen=True)
class Tup:
    """A graph with three ports of degree 2 and all other vertices cubic.

    ``names`` maps symbolic vertex names (``x``, ``v1``, ...) to labels so that
    the literal extensions and merge pairings can refer to them.
    """

    graph: Graph
    ports: tuple[int, int, int]
    names: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        problem = tup_problem(self.graph, self.ports)
        if problem:
            raise ConstructionError(f"not a tup: {problem}")

    @property
    def n(self) -> int:
        return self.graph.n

    def label(self, p: Port) -> int:
        if isinstance(p, str):
            if p not in self.names:
                raise ConstructionError(f"unknown vertex name {p!r}")
            return self.names[p]
        return p


def tup_problem(g: Graph, ports: Sequence[int]) -> Optional[str]:
    """Why ``(g, ports)`` fails to be a tup, or None if it is one."""
    if len(set(ports)) != 3:
        raise ConstructionError("a tup has exactly three ports")
    deg = g.degrees()
    if sorted(v for v in range(g.n) if deg[v] == 2) != sorted(ports):
        return "ports must be exactly the degree-2 vertices"
    if any(d not in (2, 3) for d in deg):
        return "non-port vertices must be cubic"
    a, b, c = ports
    for s, t in ((a, b), (a, c), (b, c)):
        k = count_hp_between(g, s, t, 2).count
        if k != 1:
            return f"{k} hamiltonian paths between ports {s} and {t}"
    return None


def make_tup(g: Graph, v: int) -> Tup:
    """Delete ``v`` from a cubic graph with exactly three hamiltonian cycles."""
    if not g.is_regular(3):
        raise ConstructionError("graph is not cubic")
    if count_hc(g, 4).count != 3:
        raise ConstructionError("graph does not have exactly three hamiltonian cycles")
    ports = tuple(u if u < v else u - 1 for u in sorted(g.neighbours(v)))
    return Tup(g.delete_vertex(v), ports, dict(zip("xyz", ports)))


# style -> (port joined to the first new vertex, port joined to the second,
#           names of the two new vertices)
_STYLES = {
    "G2": ("x", "y", ("v1", "v2")),
    "G3": ("v2", "z", ("v3", "v4")),
    "G4": ("v4", "v1", ("v5", "v6")),
}


def extend_tup(t: Tup, style: str) -> Tup:
    """Attach a path ``a - p - q - b`` between two ports ``a`` and ``b``.

    The styles chain: ``G2`` applies to a tup made by :func:`make_tup`, ``G3``
    to the output of ``G2``, ``G4`` to the output of ``G3``.
    """
    if style not in _STYLES:
        raise ConstructionError(f"unknown extension style {style!r}")
    sa, sb, (np_, nq) = _STYLES[style]
    a, b = t.label(sa), t.label(sb)
    if a not in t.ports or b not in t.ports:
        raise ConstructionError(f"style {style} needs {sa} and {sb} to be ports")
    n = t.n
    if n + 2 > MAX_ORDER:
        raise ConstructionError("extension would exceed the maximum order")
    g = Graph(n + 2, t.graph.adj + [0, 0])
    g.add_edge(a, n).add_edge(n, n + 1).add_edge(n + 1, b)
    (rest,) = [p for p in t.ports if p not in (a, b)]
    names = dict(t.names)
    names[np_], names[nq] = n, n + 1
    return Tup(g, tuple(sorted((rest, n, n + 1))), names)


def merge(t1: Tup, t2: Tup, pairing: Iterable[tuple[Port, Port]]) -> Graph:
    """Join the ports of ``t1`` to the ports of ``t2`` along ``pairing``.

    The labels of ``t2`` are shifted by ``t1.n``.
    """
    pairs = [(t1.label(p), t2.label(q)) for p, q in pairing]
    if sorted(p for p, _ in pairs) != sorted(t1.ports) or sorted(q for _, q in pairs) != sorted(t2.ports):
        raise ConstructionError("pairing must be a bijection between the two port sets")
    g = t1.graph.disjoint_union(t2.graph)
    for p, q in pairs:
        g.add_edge(p, t1.n + q)
    return g


def merge_vertex(t: Tup) -> Graph:
    """Add one vertex adjacent to the three ports."""
    if t.n + 1 > MAX_ORDER:
        raise ConstructionError("merge would exceed the maximum order")
    g = Graph(t.n + 1, t.graph.adj + [0])
    for p in t.ports:
        g.add_edge(p, t.n)
    return g


def girth5_tup_chain() -> list[Tup]:
    """The tups of orders 17, 19, 21, 23 grown from GP(9,2) minus vertex 0."""
    chain = [make_tup(gp(9, 2), 0)]
    for style in ("G2", "G3", "G4"):
        chain.append(extend_tup(chain[-1], style))
    return chain


def girth5_three_cycle_graphs() -> dict[int, Graph]:
    """Cubic girth-5 graphs with exactly three hamiltonian cycles, by order.

    Orders 34 to 40 merge the first tup with each member of the chain using
    the port order; 44 and 46 use the pairings that keep adjacent ports apart.
    """
    t1, t2, t3, t4 = girth5_tup_chain()
    out = {}
    for t in (t1, t2, t3, t4):
        out[t1.n + t.n] = merge(t1, t, zip(t1.ports, t.ports))
    out[44] = merge(t3, t4, [("v1", "v6"), ("v3", "v3"), ("v4", "v5")])
    out[46] = merge(t4, t4, [("v3", "v5"), ("v5", "v3"), ("v6", "v6")])
    return out


def triangle_replace(g: Graph, v: int) -> Graph:
    """Replace the cubic vertex ``v`` by a triangle ``v, n, n+1``."""
    if g.degree(v) != 3:
        raise ConstructionError(f"vertex {v} is not cubic")
    if g.n + 2 > MAX_ORDER:
        raise ConstructionError("replacement would exceed the maximum order")
    _, b, c = sorted(g.neighbours(v))
    n = g.n
    h = Graph(n + 2, g.adj + [0, 0])
    h.remove_edge(v, b).remove_edge(v, c)
    h.add_edge(b, n).add_edge(c, n + 1)
    h.add_edge(v, n).add_edge(v, n + 1).add_edge(n, n + 1)
    return h


# -- verifiers -------------------------------------------------------------------


def degree2_count(g: Graph) -> int:
    return sum(1 for d in g.degrees() if d == 2)


def verify_bondy_jackson(stream: Iterable[Graph]) -> list[Graph]:
    """Planar uniquely hamiltonian graphs with fewer than two degree-2 vertices."""
    bad = []
    for g in stream:
        if count_hc(g, 2).count != 1 or not is_planar(g, certificate=False).planar:
            raise RevalidationError(f"{g.to_graph6().decode()} is not planar and uniquely hamiltonian")
        if degree2_count(g) < 2:
            bad.append(g)
    return bad


def uh_with_few_degree2(n: int, most: int = 1) -> list[Graph]:
    """Uniquely hamiltonian graphs of order ``n`` with at most ``most`` degree-2 vertices."""
    cfg = GenConfig(n, Mode.EXACTLY_ONE, filters=OutputFilters(max_degree2=most))
    return [g for g, _ in iter_graphs(cfg)]


def verify_thomassen(stream: Iterable[Graph]) -> list[Graph]:
    """Hamiltonian graphs with no edge ``e`` making both ``G - e`` and ``G / e`` hamiltonian."""
    return [g for g in stream if thomassen_edge(g) is None]


def verify_even_degree_floor(stream: Iterable) -> list[Graph]:
    """Graphs with h in {1, 2} and fewer than ``3 - h`` even-degree vertices.

    Items are graphs or ``(graph, h)`` pairs.
    """
    bad = []
    for item in stream:
        g, hv = item if isinstance(item, tuple) else (item, None)
        if hv is None:
            hv = count_hc(g, 3).count
        if hv not in (1, 2):
            raise RevalidationError(f"{g.to_graph6().decode()} has h = {hv}, expected 1 or 2")
        if sum(1 for d in g.degrees() if d % 2 == 0) < 3 - hv:
            bad.append(g)
    return bad


def verify_cubic_parity(graphs: Iterable[Graph]) -> list[Graph]:
    """Cubic graphs where some edge lies on an odd number of hamiltonian
    cycles, or where deleting a vertex changes the parity of h."""
    bad = []
    for g in graphs:
        if not g.is_regular(3):
            raise RevalidationError(f"{g.to_graph6().decode()} is not cubic")
        total = count_hc(g).count
        if any(c % 2 for c in hc_edge_incidence(g).values()):
            bad.append(g)
            continue
        if any(count_hc(g.delete_vertex(v)).count % 2 != total % 2 for v in range(g.n)):
            bad.append(g)
    return bad


def cubic_graphs(n: int, connected: bool = False) -> list[Graph]:
    """All cubic graphs of order ``n`` up to isomorphism."""
    cfg = GenConfig(n, Mode.UNRESTRICTED, max_degree=3,
                    filters=OutputFilters(regular=3, connected=connected))
    return [g for g, _ in iter_graphs(cfg)]


def schwenk_table(lo: int = 5, hi: int = 15) -> dict[int, int]:
    """h(GP(n, 2)) for ``lo <= n <= hi``."""
    return {n: count_hc(gp(n, 2)).count for n in range(lo, hi + 1)}


def scan_regular_min_hc(n: int, r: int) -> tuple[Optional[int], int]:
    """Least nonzero h over ``r``-regular graphs of order ``n`` and how many attain it."""
    if r < 1 or r >= n or (n * r) % 2:
        raise ConstructionError(f"no {r}-regular graph of order {n}")
    cfg = GenConfig(n, Mode.UNRESTRICTED, max_degree=r, filters=OutputFilters(regular=r))
    counts = [count_hc(g).count for g, _ in iter_graphs(cfg)]
    nonzero = [c for c in counts if c]
    if not nonzero:
        return None, 0
    best = min(nonzero)
    return best, nonzero.count(best)


def regular_uh(n: int, r: int) -> list[Graph]:
    """Uniquely hamiltonian ``r``-regular graphs of order ``n``."""
    cfg = GenConfig(n, Mode.EXACTLY_ONE, max_degree=r, filters=OutputFilters(regular=r))
    return [g for g, _ in iter_graphs(cfg)]


@dataclass
class CantoniReport:
    order: int
    cubic_three_cycles: int
    planar: int
    triangle_free_planar: list[Graph]


def cantoni_scan(n: int) -> CantoniReport:
    """Cubic graphs with exactly three hamiltonian cycles; flags planar
    triangle-free members."""
    if n % 2:
        raise ConstructionError("cubic graphs have even order")
    cfg = GenConfig(n, Mode.AT_MOST, k=3, max_degree=3, filters=OutputFilters(regular=3, h_min=3))
    graphs = [g for g, _ in iter_graphs(cfg)]
    planar = [g for g in graphs if is_planar(g, certificate=False).planar]
    return CantoniReport(n, len(graphs), len(planar), [g for g in planar if g.triangle_count() == 0])


# -- extremal families -----------------------------------------------------------


@dataclass
class ExtremalRecord:
    order: int
    kind: str
    bound: int
    size: Optional[int]
    count: int
    graphs: list[Graph] = field(default_factory=list, repr=False)


def uh_size_bound(n: int) -> int:
    return n * n // 4 + 1


def ut_size_bound(n: int) -> int:
    return (n - 1) ** 2 // 4 + 1


def _largest(graphs: list[Graph]) -> list[Graph]:
    if not graphs:
        return []
    top = max(g.m for g in graphs)
    return [g for g in graphs if g.m == top]


def extremal_uh(n: int) -> list[Graph]:
    """Uniquely hamiltonian graphs of order ``n`` with the most edges."""
    cfg = GenConfig(n, Mode.EXACTLY_ONE, filters=OutputFilters(edges=uh_size_bound(n)))
    graphs = [g for g, _ in iter_graphs(cfg)]
    if graphs:
        return graphs
    return _largest([g for g, _ in iter_graphs(GenConfig(n, Mode.EXACTLY_ONE))])


def split_degree2_vertex(g: Graph, w: int) -> Graph:
    """Replace the degree-2 vertex ``w`` by two leaves, one per neighbour."""
    if g.degree(w) != 2:
        raise ConstructionError(f"vertex {w} does not have degree 2")
    _, q = g.neighbours(w)
    h = Graph(g.n + 1, g.adj + [0])
    h.remove_edge(w, q).add_edge(g.n, q)
    return h


def extremal_ut_constructed(n: int) -> list[Graph]:
    """Maximum-size uniquely traceable graphs of order ``n``, obtained by
    splitting a degree-2 vertex of each maximum-size uniquely hamiltonian
    graph of order ``n - 1``."""
    seen: dict[bytes, Graph] = {}
    for g in extremal_uh(n - 1):
        for w in range(g.n):
            if g.degree(w) == 2:
                h = split_degree2_vertex(g, w)
                if count_hp(h, 2).count == 1:
                    seen.setdefault(canonical_form(h), h)
    return _largest(list(seen.values()))


def extremal_ut_bruteforce(n: int) -> list[Graph]:
    """Maximum-size uniquely traceable graphs found by testing every graph of order ``n``."""
    if n > 8:
        raise ConstructionError("exhaustive search is limited to order 8")
    cfg = GenConfig(n, Mode.UNRESTRICTED, filters=OutputFilters(connected=True))
    return _largest([g for g, _ in iter_graphs(cfg) if count_hp(g, 2).count == 1])


def extremal_counts(n: int, kind: str, method: str = "construct") -> ExtremalRecord:
    """Maximum size and number of extremal graphs; ``kind`` is ``UH`` or ``UT``."""
    if kind == "UH":
        if not 3 <= n <= 12:
            raise ConstructionError("UH extremal search supports 3 <= n <= 12")
        graphs, bound = extremal_uh(n), uh_size_bound(n)
    elif kind == "UT":
        if not 4 <= n <= 13:
            raise ConstructionError("UT extremal search supports 4 <= n <= 13")
        if method == "construct":
            graphs = extremal_ut_constructed(n)
        elif method == "bruteforce":
            graphs = extremal_ut_bruteforce(n)
        else:
            raise ConstructionError(f"unknown method {method!r}")
        bound = ut_size_bound(n)
    else:
        raise ConstructionError(f"unknown kind {kind!r}")
    size = graphs[0].m if graphs else None
    return ExtremalRecord(n, kind, bound, size, len(graphs), graphs)


def uh_extremal_formula(n: int) -> int:
    return 2 ** (math.ceil(n / 2) - 4)


def ut_extremal_formula(n: int) -> int:
    return max(1, 2 ** (math.ceil((n - 1) / 2) - 3)) if n >= 4 else 1


# -- labelled-count oracle ---------------------------------------------------------


@njit(cache=True)
def _plain_hc(adj, n, cap):
    # unpruned DFS from vertex 0; every cycle is met once per direction
    if n < 3:
        return 0
    path = np.zeros(n, np.int64)
    nxt = np.zeros(n + 1, np.int64)
    used = np.zeros(n, np.bool_)
    used[0] = True
    depth = 1
    nxt[1] = 1
    found = 0
    while depth >= 1:
        if depth == n:
            if adj[path[n - 1]] & 1:
                found += 1
                if found >= 2 * cap:
                    return cap
            depth -= 1
            used[path[depth]] = False
            continue
        last = path[depth - 1]
        w = nxt[depth]
        while w < n and (used[w] or not (adj[last] >> w & 1)):
            w += 1
        if w == n:
            depth -= 1
            if depth >= 1:
                used[path[depth]] = False
            continue
        nxt[depth] = w + 1
        path[depth] = w
        used[w] = True
        depth += 1
        nxt[depth] = 1
    return found // 2


@njit(cache=True)
def _labelled_count(n, mode, k, pu, pv):
    npairs = pu.shape[0]
    adj = np.zeros(n, np.int64)
    total = 0
    for code in range(1 << npairs):
        for v in range(n):
            adj[v] = 0
        for i in range(npairs):
            if code >> i & 1:
                adj[pu[i]] |= 1 << pv[i]
                adj[pv[i]] |= 1 << pu[i]
        if mode == 3:
            total += 1
            continue
        c = _plain_hc(adj, n, k + 1)
        if mode == 0:
            ok = c == 1
        elif mode == 1:
            ok = 1 <= c <= k
        else:
            ok = c == 0
        if ok:
            total += 1
    return total


def labelled_count(n: int, mode: Mode, k: int = 1) -> int:
    """Number of labelled graphs on ``n`` vertices in the class of ``mode``,
    by testing every one of the ``2^(n choose 2)`` edge sets."""
    if n > 7:
        raise ConstructionError("labelled enumeration is limited to order 7")
    pairs = [(u, v) for v in range(n) for u in range(v)]
    pu = np.array([p[0] for p in pairs], np.int64)
    pv = np.array([p[1] for p in pairs], np.int64)
    kk = 1 if mode == Mode.EXACTLY_ONE else k
    return int(_labelled_count(n, int(mode), kk, pu, pv))


@dataclass
class OracleResult:
    n: int
    mode: Mode
    k: int
    emitted: int
    duplicates: int
    outside_class: int
    labelled_from_generator: int
    labelled_bruteforce: int

    @property
    def ok(self) -> bool:
        return (self.duplicates == 0 and self.outside_class == 0
                and self.labelled_from_generator == self.labelled_bruteforce)


def oracle_check(n: int, mode: Mode, k: int = 1) -> OracleResult:
    """Compare a generation run against exhaustive labelled enumeration.

    The generator's classes are expanded to labelled graphs by the orbit
    formula ``n! / |Aut(G)|``. Equal totals, pairwise distinct canonical
    forms and class membership of every output mean every class was emitted
    exactly once.
    """
    member = mode_predicate(mode, k)
    forms = set()
    dup = 0
    outside = 0
    total = 0
    emitted = 0
    for g, _ in iter_graphs(GenConfig(n, mode, k=k)):
        rep = canonical_report(g)
        if rep.form in forms:
            dup += 1
        forms.add(rep.form)
        outside += not member(g)
        total += math.factorial(n) // rep.group_order()
        emitted += 1
    return OracleResult(n, mode, k, emitted, dup, outside, total, labelled_count(n, mode, k))
