"""Canonical labelling and automorphism groups by individualisation-refinement.

The search tree is the usual one: a node is an equitable ordered partition,
children individualise one vertex of the first smallest non-singleton cell.
Leaves are compared on (trace invariants along the path, relabelled
adjacency) and the maximum is the canonical leaf. Automorphisms are found as
pairs of equal leaves and are used to prune children at nodes of the first
path, and to jump back to the common ancestor.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numba import njit

from ._bits import U0, U1, bit, ctz, popcount
from .graph import Graph, graph6_encode

_M1 = np.uint64(0x9E3779B97F4A7C15)
_M2 = np.uint64(0xBF58476D1CE4E5B9)
_M3 = np.uint64(0x94D049BB133111EB)


@njit(inline="always")
def _mix(h, x):
    z = h + _M1 + np.uint64(x)
    z = (z ^ (z >> np.uint64(30))) * _M2
    z = (z ^ (z >> np.uint64(27))) * _M3
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def _refine(adj, n, lab, cend, queue, inq, cnt, h, first_splitter, ncells):
    """Make the partition (lab, cend) equitable; returns (trace hash, cells)."""
    for i in range(n):
        inq[i] = False
    head = 0
    size = 1
    queue[0] = first_splitter
    inq[first_splitter] = True
    while size > 0 and ncells < n:
        w = queue[head]
        head = (head + 1) % n
        size -= 1
        inq[w] = False
        wmask = U0
        for p in range(w, cend[w]):
            wmask |= bit(lab[p])
        i = 0
        while i < n:
            e = cend[i]
            if e - i > 1:
                lo = 1 << 30
                hi = -1
                for p in range(i, e):
                    c = popcount(adj[lab[p]] & wmask)
                    cnt[p] = c
                    if c < lo:
                        lo = c
                    if c > hi:
                        hi = c
                if lo != hi:
                    for p in range(i + 1, e):
                        c = cnt[p]
                        v = lab[p]
                        q = p - 1
                        while q >= i and cnt[q] > c:
                            cnt[q + 1] = cnt[q]
                            lab[q + 1] = lab[q]
                            q -= 1
                        cnt[q + 1] = c
                        lab[q + 1] = v
                    p = i
                    groups = 0
                    while p < e:
                        q = p
                        c = cnt[p]
                        while q < e and cnt[q] == c:
                            q += 1
                        cend[p] = q
                        h = _mix(h, p * 4099 + c * 257 + (q - p))
                        if not inq[p]:
                            inq[p] = True
                            queue[(head + size) % n] = p
                            size += 1
                        groups += 1
                        p = q
                    ncells += groups - 1
            i = e
    h = _mix(h, ncells * 65537 + 17)
    return h, ncells


@njit(cache=True)
def _uf_find(par, x):
    while par[x] != x:
        par[x] = par[par[x]]
        x = par[x]
    return x


@njit(cache=True)
def _leaf_graph(adj, n, lab, pos, out):
    for p in range(n):
        pos[lab[p]] = p
    for p in range(n):
        x = adj[lab[p]]
        y = U0
        while x:
            w = ctz(x)
            x &= x - U1
            y |= bit(pos[w])
        out[p] = y


@njit(cache=True)
def _cmp_graph(a, b, n):
    for i in range(n):
        if a[i] != b[i]:
            return 1 if a[i] > b[i] else -1
    return 0


@njit(cache=True)
def canon_kernel(adj, n, bestlab, bestg, gens):
    """Fill ``bestlab`` (position -> vertex), ``bestg`` (canonical adjacency)
    and the first rows of ``gens``; returns the number of generators."""
    LAB = np.empty((n + 1, n), np.int64)
    CEND = np.empty((n + 1, n), np.int64)
    NC = np.zeros(n + 1, np.int64)
    INV = np.zeros(n + 1, np.uint64)
    PV = np.zeros(n + 1, np.int64)
    TC = np.zeros(n + 1, np.int64)
    TE = np.zeros(n + 1, np.int64)
    CI = np.zeros(n + 1, np.int64)
    EQF = np.zeros(n + 1, np.bool_)
    CMPB = np.zeros(n + 1, np.int64)
    ONF = np.zeros(n + 1, np.bool_)
    ONB = np.zeros(n + 1, np.bool_)
    FINV = np.zeros(n + 1, np.uint64)
    FPV = np.zeros(n + 1, np.int64)
    BINV = np.zeros(n + 1, np.uint64)
    BPV = np.zeros(n + 1, np.int64)
    firstlab = np.empty(n, np.int64)
    firstg = np.empty(n, np.uint64)
    cg = np.empty(n, np.uint64)
    pos = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    inq = np.empty(n, np.bool_)
    cnt = np.empty(n, np.int64)
    par = np.empty(n, np.int64)
    maxg = gens.shape[0]
    ng = 0
    flen = -1
    blen = -1

    for v in range(n):
        LAB[0, v] = v
    CEND[0, 0] = n
    h, nc = _refine(adj, n, LAB[0], CEND[0], queue, inq, cnt, np.uint64(n), 0, 1)
    INV[0] = h
    NC[0] = nc
    EQF[0] = True
    ONF[0] = True
    ONB[0] = True
    d = 0
    fresh = True  # node at level d just created
    while d >= 0:
        if fresh:
            fresh = False
            if NC[d] == n:
                _leaf_graph(adj, n, LAB[d], pos, cg)
                jump = -1
                if flen < 0:
                    flen = d
                    blen = d
                    for i in range(d + 1):
                        FINV[i] = INV[i]
                        BINV[i] = INV[i]
                        ONF[i] = True
                        ONB[i] = True
                        CMPB[i] = 0
                    for i in range(d):
                        FPV[i] = PV[i]
                        BPV[i] = PV[i]
                    for i in range(n):
                        firstlab[i] = LAB[d, i]
                        bestlab[i] = LAB[d, i]
                        firstg[i] = cg[i]
                        bestg[i] = cg[i]
                else:
                    c = 2
                    if EQF[d] and d == flen and _cmp_graph(cg, firstg, n) == 0:
                        if ng >= maxg:
                            raise RuntimeError("generator capacity exceeded")
                        for p in range(n):
                            gens[ng, firstlab[p]] = LAB[d, p]
                        ng += 1
                        for i in range(d, -1, -1):
                            if ONF[i]:
                                jump = i
                                break
                    elif CMPB[d] > 0:
                        c = 1
                    elif CMPB[d] == 0:
                        c = _cmp_graph(cg, bestg, n)
                        if c == 0:
                            if ng >= maxg:
                                raise RuntimeError("generator capacity exceeded")
                            for p in range(n):
                                gens[ng, bestlab[p]] = LAB[d, p]
                            ng += 1
                            for i in range(d, -1, -1):
                                if ONB[i]:
                                    jump = i
                                    break
                    if c == 1:
                        blen = d
                        for i in range(d + 1):
                            BINV[i] = INV[i]
                            ONB[i] = True
                            CMPB[i] = 0
                        for i in range(d):
                            BPV[i] = PV[i]
                        for i in range(n):
                            bestlab[i] = LAB[d, i]
                            bestg[i] = cg[i]
                if jump >= 0:
                    d = jump
                else:
                    d -= 1
                continue
            # choose the first smallest non-singleton cell
            best = n + 1
            i = 0
            while i < n:
                e = CEND[d, i]
                if 1 < e - i < best:
                    best = e - i
                    TC[d] = i
                i = e
            TE[d] = TC[d] + best
            CI[d] = TC[d]
        if CI[d] >= TE[d]:
            d -= 1
            continue
        v = LAB[d, CI[d]]
        CI[d] += 1
        if ONF[d] and flen >= 0 and CI[d] - 1 > TC[d]:
            # skip v if an automorphism fixing the first-path prefix maps it
            # onto an earlier child of this node
            for x in range(n):
                par[x] = x
            for g in range(ng):
                ok = True
                for i in range(d):
                    if gens[g, FPV[i]] != FPV[i]:
                        ok = False
                        break
                if not ok:
                    continue
                for x in range(n):
                    ra = _uf_find(par, x)
                    rb = _uf_find(par, gens[g, x])
                    if ra != rb:
                        par[ra] = rb
            rv = _uf_find(par, v)
            dup = False
            for p in range(TC[d], CI[d] - 1):
                if _uf_find(par, LAB[d, p]) == rv:
                    dup = True
                    break
            if dup:
                continue
        k = d + 1
        for i in range(n):
            LAB[k, i] = LAB[d, i]
            CEND[k, i] = CEND[d, i]
        t = TC[d]
        e = TE[d]
        for p in range(t, e):
            if LAB[k, p] == v:
                LAB[k, p] = LAB[k, t]
                LAB[k, t] = v
                break
        CEND[k, t] = t + 1
        CEND[k, t + 1] = e
        h, nc = _refine(adj, n, LAB[k], CEND[k], queue, inq, cnt, _mix(INV[d], t), t, NC[d] + 1)
        PV[d] = v
        eqf = flen < 0 or (EQF[d] and k <= flen and h == FINV[k])
        cmpb = CMPB[d]
        if flen >= 0 and cmpb == 0:
            if k > blen:
                cmpb = 1
            elif h > BINV[k]:
                cmpb = 1
            elif h < BINV[k]:
                cmpb = -1
        if flen >= 0 and not eqf and cmpb < 0:
            continue
        INV[k] = h
        NC[k] = nc
        EQF[k] = eqf
        CMPB[k] = cmpb
        ONF[k] = flen < 0 or (ONF[d] and d < flen and v == FPV[d])
        ONB[k] = flen < 0 or (ONB[d] and d < blen and v == BPV[d])
        d = k
        fresh = True
    return ng


@njit(cache=True)
def canon_label(adj, n):
    """Convenience wrapper returning (bestlab, bestg, gens[:ng])."""
    bestlab = np.empty(n, np.int64)
    bestg = np.empty(n, np.uint64)
    gens = np.empty((4 * n + 8, n), np.int64)
    ng = canon_kernel(adj, n, bestlab, bestg, gens)
    return bestlab, bestg, gens[:ng].copy()


# -- public API -------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalReport:
    """``labeling[v]`` is the canonical label of input vertex ``v``."""

    labeling: tuple[int, ...]
    form: bytes
    generators: tuple[tuple[int, ...], ...]

    def group_order(self) -> int:
        return group_order(len(self.labeling), self.generators)


def canonical_report(g: Graph) -> CanonicalReport:
    bestlab, bestg, gens = canon_label(g.masks(), g.n)
    labeling = [0] * g.n
    for p, v in enumerate(bestlab):
        labeling[int(v)] = p
    form = graph6_encode(Graph.from_masks(bestg))
    return CanonicalReport(tuple(labeling), form, tuple(tuple(int(x) for x in row) for row in gens))


def canonical_form(g: Graph) -> bytes:
    return canonical_report(g).form


def automorphism_generators(g: Graph) -> list[tuple[int, ...]]:
    return list(canonical_report(g).generators)


def _orbits(elements: list, act, generators) -> dict:
    parent = {x: x for x in elements}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in generators:
        for x in elements:
            a, b = find(x), find(act(gamma, x))
            if a != b:
                parent[a] = b
    roots: dict = {}
    out = {}
    for x in elements:
        out[x] = roots.setdefault(find(x), len(roots))
    return out


def vertex_orbits(g: Graph, generators=None) -> dict[int, int]:
    """Map vertex -> orbit id (ids numbered by first appearance)."""
    gens = automorphism_generators(g) if generators is None else generators
    return _orbits(list(range(g.n)), lambda p, v: p[v], gens)


def _act_pair(p, e):
    a, b = p[e[0]], p[e[1]]
    return (a, b) if a < b else (b, a)


def edge_orbits(g: Graph, generators=None) -> dict[tuple[int, int], int]:
    gens = automorphism_generators(g) if generators is None else generators
    return _orbits(list(g.edges()), _act_pair, gens)


def nonadjacent_pair_orbits(g: Graph, generators=None) -> list[tuple[int, int]]:
    """One representative (the first in lexicographic order) per orbit of non-edges."""
    gens = automorphism_generators(g) if generators is None else generators
    orb = _orbits(list(g.non_edges()), _act_pair, gens)
    reps: dict[int, tuple[int, int]] = {}
    for pair, o in orb.items():
        reps.setdefault(o, pair)
    return list(reps.values())


def group_order(n: int, generators: Iterable[tuple[int, ...]]) -> int:
    """|<generators>| via a Schreier-Sims style stabiliser chain."""
    gens = [tuple(p) for p in generators]
    order = 1
    fixed: list[int] = []
    for base in range(n):
        if not gens:
            break
        # orbit of base with transversal
        trans = {base: tuple(range(n))}
        queue = [base]
        while queue:
            x = queue.pop()
            for p in gens:
                y = p[x]
                if y not in trans:
                    trans[y] = tuple(p[t] for t in trans[x])
                    queue.append(y)
        order *= len(trans)
        # Schreier generators of the stabiliser
        inv = {y: _inverse(t) for y, t in trans.items()}
        new = set()
        for x, t in trans.items():
            for p in gens:
                pt = tuple(p[t[i]] for i in range(n))
                y = pt[base]
                s = tuple(inv[y][pt[i]] for i in range(n))
                if any(s[i] != i for i in range(n)):
                    new.add(s)
        gens = _sift_reduce(list(new), n)
        fixed.append(base)
    return order


def _inverse(p):
    q = [0] * len(p)
    for i, x in enumerate(p):
        q[x] = i
    return tuple(q)


def _sift_reduce(gens, n, limit=64):
    # keep a bounded generating set: greedily drop generators already in the
    # span is too costly here; deduplicate and cap by distinct action instead
    seen = []
    keys = set()
    for p in gens:
        if p not in keys:
            keys.add(p)
            seen.append(p)
    return seen
