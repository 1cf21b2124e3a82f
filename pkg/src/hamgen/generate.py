"""Isomorph-free generation by canonical edge insertion.

A search node is a graph; its children add one edge between a pair of
non-adjacent vertices, one pair per orbit of the automorphism group. A child
is accepted only when the inserted edge is a canonical reducible edge of the
child, which makes every isomorphism class appear exactly once.

Modes and their roots:

* ``Mode.EXACTLY_ONE``: cycle root; graphs whose only hamiltonian cycle is the
  root cycle. Reducible edges are the chords.
* ``Mode.AT_MOST``: cycle root; hamiltonian graphs with at most ``k`` cycles.
  An edge is reducible when deleting it leaves the graph hamiltonian.
* ``Mode.NON_HAMILTONIAN``: empty root; every edge is reducible.
* ``Mode.UNRESTRICTED``: empty root; all graphs.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field, replace
from typing import Callable, Iterator, Optional

import numpy as np

from . import _engine as E
from .canon import canonical_report, edge_orbits
from .graph import Graph
from .hamilton import count_hc, is_hamiltonian

NO_LIMIT = 1 << 50


class Mode(enum.IntEnum):
    EXACTLY_ONE = E.EXACTLY_ONE
    AT_MOST = E.AT_MOST
    NON_HAMILTONIAN = E.NON_HAM
    UNRESTRICTED = E.UNRESTRICTED


class ConfigError(ValueError):
    """Inconsistent or out-of-range generation settings."""


@dataclass(frozen=True)
class OutputFilters:
    """Predicates applied to emitted graphs only; they never prune the search."""

    connected: bool = False
    min_degree: int = 0
    regular: Optional[int] = None
    nearly_cubic: bool = False
    triangle_free: bool = False
    no_n_minus_1_cycle: bool = False
    h_min: int = 0
    h_max: Optional[int] = None
    max_degree2: Optional[int] = None
    edges: Optional[int] = None


@dataclass(frozen=True)
class GenConfig:
    n: int
    mode: Mode = Mode.EXACTLY_ONE
    k: int = 1
    girth_min: Optional[int] = None
    planar: bool = False
    max_degree: Optional[int] = None
    nearly_cubic: bool = False
    filters: OutputFilters = field(default_factory=OutputFilters)
    # infrastructure
    res: int = 0
    mod: int = 1
    split_depth: Optional[int] = None
    lookahead: bool = True
    check_cascade: bool = False
    cycle_canon: bool = True
    hc_cap: int = 0

    def validate(self) -> None:
        cyc = self.mode in (Mode.EXACTLY_ONE, Mode.AT_MOST)
        if not (3 if cyc else 1) <= self.n <= 64:
            raise ConfigError(f"order {self.n} not supported in {self.mode.name}")
        if self.mode == Mode.AT_MOST and self.k < 1:
            raise ConfigError("at-most mode needs k >= 1")
        if self.girth_min is not None:
            if self.girth_min < 3:
                raise ConfigError("girth bound must be at least 3")
            if self.girth_min > self.n:
                raise ConfigError("girth bound exceeds the order")
        if self.max_degree is not None and self.max_degree < (2 if cyc else 0):
            raise ConfigError("maximum degree too small for the root graph")
        if not 0 <= self.res < self.mod:
            raise ConfigError(f"invalid residue {self.res}/{self.mod}")
        f = self.filters
        if f.h_max is not None and f.h_max < f.h_min:
            raise ConfigError("empty cycle-count window")


def split(config: GenConfig, res: int, mod: int) -> GenConfig:
    """The part ``res`` of ``mod`` disjoint parts of the search."""
    out = replace(config, res=res, mod=mod)
    out.validate()
    return out


@dataclass
class RunStats:
    nodes: int = 0
    emitted: int = 0
    aut_calls: int = 0
    tiebreak_calls: int = 0
    cascade_mismatches: int = 0
    rejected: dict = field(default_factory=dict)
    h_histogram: dict = field(default_factory=dict)

    def merge(self, other: "RunStats") -> None:
        self.nodes += other.nodes
        self.emitted += other.emitted
        self.aut_calls += other.aut_calls
        self.tiebreak_calls += other.tiebreak_calls
        self.cascade_mismatches += other.cascade_mismatches
        for d_self, d_other in ((self.rejected, other.rejected), (self.h_histogram, other.h_histogram)):
            for key, val in d_other.items():
                d_self[key] = d_self.get(key, 0) + val


_REJECT_NAMES = {
    E.S_GIRTH: "girth",
    E.S_DEGREE: "degree",
    E.S_LOOKAHEAD: "lookahead",
    E.S_PLANAR: "planar",
    E.S_MODE: "cycle-count",
    E.S_NONCANON: "non-canonical",
    E.S_FILTERED: "output-filter",
}


def _cfg_array(c: GenConfig) -> np.ndarray:
    cyc = c.mode in (Mode.EXACTLY_ONE, Mode.AT_MOST)
    f = c.filters
    a = np.zeros(E.C_SIZE, np.int64)
    a[E.C_MODE] = int(c.mode)
    a[E.C_N] = c.n
    a[E.C_K] = c.k if c.mode == Mode.AT_MOST else 0
    a[E.C_GIRTH] = c.girth_min or 0
    a[E.C_PLANAR] = c.planar
    a[E.C_MAXDEG] = c.n if c.max_degree is None else c.max_degree
    a[E.C_NEARLY_CUBIC] = c.nearly_cubic
    if c.split_depth is not None:
        # the split level must not lie above the root
        a[E.C_SPLIT_M] = max(c.split_depth, c.n if cyc else 0)
    else:
        a[E.C_SPLIT_M] = c.n + 3 if cyc else 6
    a[E.C_MOD] = c.mod
    a[E.C_RES] = c.res
    a[E.C_LOOKAHEAD] = c.lookahead
    a[E.C_CHECK] = c.check_cascade
    a[E.C_CYCLE_CANON] = c.cycle_canon and c.mode == Mode.EXACTLY_ONE
    a[E.C_CONNECTED] = f.connected
    a[E.C_MINDEG] = f.min_degree
    a[E.C_REGULAR] = -1 if f.regular is None else f.regular
    a[E.C_OUT_NEARLY_CUBIC] = f.nearly_cubic
    a[E.C_TRIANGLE_FREE] = f.triangle_free
    a[E.C_NO_NM1] = f.no_n_minus_1_cycle
    a[E.C_HMIN] = f.h_min
    a[E.C_HMAX] = NO_LIMIT if f.h_max is None else f.h_max
    a[E.C_MAX_DEG2] = -1 if f.max_degree2 is None else f.max_degree2
    a[E.C_EDGES] = -1 if f.edges is None else f.edges
    a[E.C_HCAP] = c.hc_cap
    return a


def _max_edges(c: GenConfig) -> int:
    n = c.n
    m = n * (n - 1) // 2
    if c.max_degree is not None:
        m = min(m, n * c.max_degree // 2)
    if c.nearly_cubic:
        m = min(m, (3 * n + 2) // 2)
    if c.planar and n >= 3:
        m = min(m, 3 * n - 6)
    return m


class _Search:
    """Resumable kernel state for one configuration."""

    def __init__(self, c: GenConfig, buffer: int):
        c.validate()
        n = c.n
        root = Graph.cycle(n) if c.mode in (Mode.EXACTLY_ONE, Mode.AT_MOST) else Graph.empty(n)
        L = max(_max_edges(c) - root.m, 0) + 1
        K = c.k if c.mode == Mode.AT_MOST else 0
        P = max(n * (n - 1) // 2, 1)
        self.n = n
        self.cfg = _cfg_array(c)
        self.stats = np.zeros(E.S_SIZE, np.int64)
        self.state = np.zeros(4, np.int64)
        self.ADJ = np.zeros((L, n), np.uint64)
        self.DEG = np.zeros((L, n), np.int64)
        self.ADJ[0] = root.masks()
        self.DEG[0] = root.degrees()
        self.CU = np.zeros((L, P), np.int64)
        self.CV = np.zeros((L, P), np.int64)
        self.NCAND = np.zeros(L, np.int64)
        self.CI = np.zeros(L, np.int64)
        self.PHASE = np.zeros(L, np.int64)
        self.HC = np.zeros((L, K + 1, n), np.uint64)
        self.HN = np.zeros(L, np.int64)
        self.INTER = np.zeros((L, n), np.uint64)
        if c.mode == Mode.AT_MOST:
            self.HC[0, 0] = root.masks()
            self.HN[0] = 1
            self.INTER[0] = root.masks()
        elif c.mode == Mode.EXACTLY_ONE:
            self.HN[0] = 1
        self.out = np.zeros((buffer, n), np.uint64)
        self.outh = np.zeros(buffer, np.int64)

    def batches(self) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        while True:
            self.state[E.T_OUT] = 0
            more = E.run_kernel(
                self.cfg, self.stats, self.state, self.ADJ, self.DEG, self.CU, self.CV,
                self.NCAND, self.CI, self.PHASE, self.HC, self.HN, self.INTER, self.out, self.outh,
            )
            k = int(self.state[E.T_OUT])
            if k:
                yield self.out[:k], self.outh[:k]
            if not more:
                return

    def run_stats(self) -> RunStats:
        s = self.stats
        return RunStats(
            nodes=int(s[E.S_NODES]),
            emitted=int(s[E.S_EMITTED]),
            aut_calls=int(s[E.S_AUT]),
            tiebreak_calls=int(s[E.S_TIEBREAK]),
            cascade_mismatches=int(s[E.S_MISMATCH]),
            rejected={name: int(s[i]) for i, name in _REJECT_NAMES.items()},
        )


Visitor = Callable[[Graph], None]


def generate(config: GenConfig, visitor: Optional[Visitor] = None, buffer: int = 1 << 14) -> RunStats:
    """Run the search, calling ``visitor`` on every emitted graph."""
    search = _Search(config, buffer)
    hist: dict[int, int] = {}
    for rows, hs in search.batches():
        vals, counts = np.unique(hs, return_counts=True)
        for v, c in zip(vals.tolist(), counts.tolist()):
            hist[v] = hist.get(v, 0) + c
        if visitor is not None:
            for row in rows:
                visitor(Graph.from_masks(row))
    stats = search.run_stats()
    stats.h_histogram = {k: v for k, v in hist.items() if k >= 0}
    return stats


def iter_graphs(config: GenConfig, buffer: int = 1 << 12) -> Iterator[tuple[Graph, Optional[int]]]:
    """Yield ``(graph, h)`` pairs; ``h`` is None when the run does not know it."""
    search = _Search(config, buffer)
    for rows, hs in search.batches():
        for row, hv in zip(rows, hs.tolist()):
            yield Graph.from_masks(row), (hv if hv >= 0 else None)


def count(config: GenConfig) -> int:
    return generate(config).emitted


def _worker(args) -> tuple[RunStats, list[bytes]]:
    config, collect = args
    out: list[bytes] = []
    st = generate(config, (lambda g: out.append(g.to_graph6())) if collect else None)
    return st, out


def generate_parallel(config: GenConfig, workers: Optional[int] = None, parts: Optional[int] = None,
                      collect: bool = False) -> tuple[RunStats, list[bytes]]:
    """Split the search into ``parts`` residues and run them on a process pool.

    The worker count defaults to the ``HAMGEN_WORKERS`` environment variable.
    """
    if workers is None:
        workers = int(os.environ.get("HAMGEN_WORKERS", "1"))
    workers = max(1, workers)
    parts = parts or workers
    jobs = [(split(config, r, parts), collect) for r in range(parts)]
    total = RunStats()
    lines: list[bytes] = []
    if workers == 1:
        results = map(_worker, jobs)
    else:
        import multiprocessing as mp

        pool = mp.get_context("spawn").Pool(workers)
        results = pool.map(_worker, jobs)
        pool.close()
    for st, out in results:
        total.merge(st)
        lines.extend(out)
    return total, lines


# -- reference (uncompiled) definitions -------------------------------------


def reducible_edges(g: Graph, mode: Mode) -> list[tuple[int, int]]:
    """Reducible edges of a node in ``mode`` (anchor cycle 0, 1, ..., n-1)."""
    n = g.n
    out = []
    for u, v in g.edges():
        if mode == Mode.EXACTLY_ONE:
            if v - u in (1, n - 1):
                continue
        elif mode == Mode.AT_MOST:
            if not is_hamiltonian(g.copy().remove_edge(u, v)):
                continue
        out.append((u, v))
    return out


def _ball2(g: Graph, v: int) -> int:
    b = g.adj[v] | 1 << v
    for w in g.neighbours(v):
        b |= g.adj[w]
    return b


def edge_tuple(g: Graph, e: tuple[int, int], mode: Mode, report=None) -> tuple[int, ...]:
    """Invariant tuple of edge ``e``; the anchor-based components are
    present only in exactly-one mode."""
    a, b = e
    n = g.n
    da, db = g.degree(a), g.degree(b)
    deg_hi, deg_lo = max(da, db), min(da, db)
    common = (g.adj[a] & g.adj[b]).bit_count()
    ball = -(_ball2(g, a) | _ball2(g, b)).bit_count()
    rep = report or canonical_report(g)
    orbit_id = edge_orbits(g, rep.generators)
    lab = rep.labeling
    mine = orbit_id[(min(a, b), max(a, b))]
    label_hi, label_lo = max(
        (max(lab[u], lab[v]), min(lab[u], lab[v])) for (u, v), o in orbit_id.items() if o == mine
    )
    if mode != Mode.EXACTLY_ONE:
        return (deg_hi, deg_lo, common, ball, label_hi, label_lo)
    dist = abs(a - b)
    gap = -min(dist, n - dist)
    s = [g.degree((v - 1) % n) + g.degree((v + 1) % n) for v in (a, b)]
    return (deg_hi, deg_lo, gap, -max(s), -min(s), common, ball, label_hi, label_lo)


def is_canonical_expansion(g: Graph, e_last: tuple[int, int], mode: Mode) -> bool:
    """Whether ``e_last`` carries the maximal tuple among reducible edges."""
    red = reducible_edges(g, mode)
    rep = canonical_report(g)
    tuples = {e: edge_tuple(g, e, mode, rep) for e in red}
    key = (min(e_last), max(e_last))
    return key in tuples and tuples[key] == max(tuples.values())


def mode_predicate(mode: Mode, k: int = 1) -> Callable[[Graph], bool]:
    """Membership test for the class a mode enumerates."""
    if mode == Mode.EXACTLY_ONE:
        return lambda g: g.n >= 3 and count_hc(g, 2).count == 1
    if mode == Mode.AT_MOST:
        return lambda g: g.n >= 3 and 1 <= count_hc(g, k + 1).count <= k
    if mode == Mode.NON_HAMILTONIAN:
        return lambda g: g.n < 3 or count_hc(g, 1).count == 0
    return lambda g: True
