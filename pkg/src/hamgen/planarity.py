"""Planarity testing with certificates.

Each block (maximal 2-connected piece) is embedded by repeatedly routing a
path of some not-yet-embedded fragment through a face that contains all of
the fragment's attachment vertices, always preferring a fragment with a
single admissible face. A fragment without any admissible face proves the
block non-planar. The faces of every block are kept as oriented vertex
cycles so that a rotation system can be read off as a certificate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numba import njit

from ._bits import U0, U1, bit, ctz, popcount
from .graph import Graph


@njit(cache=True)
def _blocks(adj, n, out):
    """Vertex masks of the blocks with at least 3 vertices; returns count."""
    disc = np.full(n, -1, np.int64)
    low = np.zeros(n, np.int64)
    parent = np.full(n, -1, np.int64)
    todo = np.zeros(n, np.uint64)
    call = np.empty(n, np.int64)
    vst = np.empty(n, np.int64)
    t = 0
    nb = 0
    for r in range(n):
        if disc[r] >= 0:
            continue
        disc[r] = low[r] = t
        t += 1
        todo[r] = adj[r]
        cs = 0
        call[cs] = r
        cs += 1
        vs = 0
        vst[vs] = r
        vs += 1
        while cs > 0:
            v = call[cs - 1]
            if todo[v]:
                w = ctz(todo[v])
                todo[v] &= todo[v] - U1
                if disc[w] < 0:
                    parent[w] = v
                    disc[w] = low[w] = t
                    t += 1
                    todo[w] = adj[w]
                    call[cs] = w
                    cs += 1
                    vst[vs] = w
                    vs += 1
                elif w != parent[v] and disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                cs -= 1
                p = parent[v]
                if p < 0:
                    continue
                if low[v] < low[p]:
                    low[p] = low[v]
                if low[v] >= disc[p]:
                    m = bit(p)
                    while True:
                        vs -= 1
                        x = vst[vs]
                        m |= bit(x)
                        if x == v:
                            break
                    if popcount(m) >= 3:
                        out[nb] = m
                        nb += 1
    return nb


@njit(cache=True)
def _split_face(faces, flen, fmask, nf, f, path, plen):
    """Route ``path`` (ends on face ``f``, interior new) through face ``f``."""
    k = flen[f]
    a = path[0]
    b = path[plen - 1]
    i = -1
    j = -1
    for p in range(k):
        if faces[f, p] == a:
            i = p
        if faces[f, p] == b:
            j = p
    old = faces[f, :k].copy()
    # face f: a .. b along the boundary, then back along the path
    c = 0
    p = i
    while True:
        faces[f, c] = old[p]
        c += 1
        if p == j:
            break
        p = (p + 1) % k
    for q in range(plen - 2, 0, -1):
        faces[f, c] = path[q]
        c += 1
    flen[f] = c
    m = U0
    for q in range(c):
        m |= bit(faces[f, q])
    fmask[f] = m
    # new face: b .. a along the boundary, then forward along the path
    c = 0
    p = j
    while True:
        faces[nf, c] = old[p]
        c += 1
        if p == i:
            break
        p = (p + 1) % k
    for q in range(1, plen - 1):
        faces[nf, c] = path[q]
        c += 1
    flen[nf] = c
    m = U0
    for q in range(c):
        m |= bit(faces[nf, q])
    fmask[nf] = m


@njit(cache=True)
def _embed_block(adj, n, B, faces, flen, fmask):
    """Embed the 2-connected block ``B``; returns face count or -1 if non-planar."""
    nv = popcount(B)
    ne = 0
    rest = B
    while rest:
        v = ctz(rest)
        rest &= rest - U1
        ne += popcount(adj[v] & B)
    ne //= 2
    if ne > 3 * nv - 6:
        return -1
    # initial cycle: an edge u-v plus a shortest u..v path avoiding it
    u = ctz(B)
    v = ctz(adj[u] & B)
    prev = np.full(n, -1, np.int64)
    prev[u] = u
    queue = np.empty(n, np.int64)
    qh = 0
    qt = 1
    queue[0] = u
    while qh < qt:
        x = queue[qh]
        qh += 1
        nx = adj[x] & B
        while nx:
            y = ctz(nx)
            nx &= nx - U1
            if prev[y] >= 0 or (x == u and y == v):
                continue
            prev[y] = x
            queue[qt] = y
            qt += 1
    path = np.empty(n, np.int64)
    c = 0
    x = v
    while x != u:
        path[c] = x
        c += 1
        x = prev[x]
    path[c] = u
    c += 1
    emb = np.zeros(n, np.uint64)
    H = U0
    for q in range(c):
        faces[0, q] = path[q]
        faces[1, c - 1 - q] = path[q]
        H |= bit(path[q])
        w = path[(q + 1) % c]
        emb[path[q]] |= bit(w)
        emb[w] |= bit(path[q])
    flen[0] = c
    flen[1] = c
    fmask[0] = H
    fmask[1] = H
    nf = 2
    done = c
    prev2 = np.empty(n, np.int64)
    while done < ne:
        best_cnt = 1 << 30
        best_face = -1
        best_kind = 0  # 1: chord, 2: component
        best_a = -1
        best_b = -1
        best_comp = U0
        best_att = U0
        # chords between embedded vertices
        rest = H
        while rest and best_cnt > 1:
            x = ctz(rest)
            rest &= rest - U1
            pend = adj[x] & B & H & ~emb[x] & ~((bit(x) << U1) - U1)
            while pend:
                y = ctz(pend)
                pend &= pend - U1
                att = bit(x) | bit(y)
                cnt = 0
                ff = -1
                for f in range(nf):
                    if att & fmask[f] == att:
                        cnt += 1
                        if ff < 0:
                            ff = f
                if cnt < best_cnt:
                    best_cnt = cnt
                    best_face = ff
                    best_kind = 1
                    best_a = x
                    best_b = y
                    if cnt <= 1:
                        break
        # components of B - H
        left = B & ~H
        while left and best_cnt > 1:
            s = ctz(left)
            comp = bit(s)
            front = comp
            while front:
                nx = U0
                f2 = front
                while f2:
                    y = ctz(f2)
                    f2 &= f2 - U1
                    nx |= adj[y]
                front = nx & left & ~comp
                comp |= front
            left &= ~comp
            att = U0
            f2 = comp
            while f2:
                y = ctz(f2)
                f2 &= f2 - U1
                att |= adj[y]
            att &= H
            cnt = 0
            ff = -1
            for f in range(nf):
                if att & fmask[f] == att:
                    cnt += 1
                    if ff < 0:
                        ff = f
            if cnt < best_cnt:
                best_cnt = cnt
                best_face = ff
                best_kind = 2
                best_comp = comp
                best_att = att
        if best_cnt == 0:
            return -1
        if best_kind == 1:
            path[0] = best_a
            path[1] = best_b
            plen = 2
        else:
            a = ctz(best_att)
            x0 = ctz(adj[a] & best_comp)
            for q in range(n):
                prev2[q] = -1
            prev2[x0] = x0
            qh = 0
            qt = 1
            queue[0] = x0
            end = -1
            b = -1
            while qh < qt:
                x = queue[qh]
                qh += 1
                tgt = adj[x] & best_att & ~bit(a)
                if tgt:
                    end = x
                    b = ctz(tgt)
                    break
                nx = adj[x] & best_comp
                while nx:
                    y = ctz(nx)
                    nx &= nx - U1
                    if prev2[y] < 0:
                        prev2[y] = x
                        queue[qt] = y
                        qt += 1
            # path a, x0 .. end, b
            c = 0
            x = end
            while True:
                queue[c] = x
                c += 1
                if x == x0:
                    break
                x = prev2[x]
            path[0] = a
            for q in range(c):
                path[1 + q] = queue[c - 1 - q]
            path[c + 1] = b
            plen = c + 2
        _split_face(faces, flen, fmask, nf, best_face, path, plen)
        nf += 1
        for q in range(plen - 1):
            x = path[q]
            y = path[q + 1]
            emb[x] |= bit(y)
            emb[y] |= bit(x)
            H |= bit(x) | bit(y)
        done += plen - 1
    return nf


@njit(cache=True)
def is_planar_masks(adj, n):
    """Boolean planarity test usable from other compiled kernels."""
    m = 0
    for v in range(n):
        m += popcount(adj[v])
    m //= 2
    if n <= 4:
        return True
    if m > 3 * n - 6:
        return False
    blocks = np.empty(n, np.uint64)
    nb = _blocks(adj, n, blocks)
    faces = np.empty((2 * n, n), np.int64)
    flen = np.empty(2 * n, np.int64)
    fmask = np.empty(2 * n, np.uint64)
    for i in range(nb):
        if popcount(blocks[i]) <= 4:
            continue
        if _embed_block(adj, n, blocks[i], faces, flen, fmask) < 0:
            return False
    return True


@njit(cache=True)
def planar_faces_kernel(adj, n, out, olen, oblock):
    """Embed every block, writing all faces; returns face count or -1."""
    blocks = np.empty(n, np.uint64)
    nb = _blocks(adj, n, blocks)
    faces = np.empty((2 * n, n), np.int64)
    flen = np.empty(2 * n, np.int64)
    fmask = np.empty(2 * n, np.uint64)
    tot = 0
    for i in range(nb):
        k = _embed_block(adj, n, blocks[i], faces, flen, fmask)
        if k < 0:
            return -1
        for f in range(k):
            for q in range(flen[f]):
                out[tot, q] = faces[f, q]
            olen[tot] = flen[f]
            oblock[tot] = i
            tot += 1
    return tot


# -- public API -------------------------------------------------------------


@dataclass(frozen=True)
class PlanarityVerdict:
    """``rotation[v]`` lists the neighbours of ``v`` in cyclic order when
    planar; ``kuratowski`` holds the edges of a minimal non-planar subgraph
    otherwise."""

    planar: bool
    rotation: Optional[tuple[tuple[int, ...], ...]] = None
    kuratowski: Optional[tuple[tuple[int, int], ...]] = field(default=None)

    def __bool__(self) -> bool:
        return self.planar


def is_planar(g: Graph, certificate: bool = True) -> PlanarityVerdict:
    if not certificate:
        return PlanarityVerdict(bool(is_planar_masks(g.masks(), g.n)))
    if is_planar_masks(g.masks(), g.n):
        return PlanarityVerdict(True, rotation=_rotation_system(g))
    return PlanarityVerdict(False, kuratowski=_kuratowski(g))


def _rotation_system(g: Graph) -> tuple[tuple[int, ...], ...]:
    n = g.n
    out = np.empty((2 * n + 2, n), np.int64)
    olen = np.empty(2 * n + 2, np.int64)
    oblock = np.empty(2 * n + 2, np.int64)
    k = planar_faces_kernel(g.masks(), n, out, olen, oblock)
    if k < 0:
        raise RuntimeError("embedding failed on a graph that tested planar")
    # per block and vertex: successor map u -> w from face walks u, v, w
    succ: dict[tuple[int, int], dict[int, int]] = {}
    for f in range(k):
        seq = [int(x) for x in out[f, : olen[f]]]
        L = len(seq)
        for i in range(L):
            u, v, w = seq[i - 1], seq[i], seq[(i + 1) % L]
            succ.setdefault((int(oblock[f]), v), {})[u] = w
    rot: list[list[int]] = [[] for _ in range(n)]
    covered = [0] * n
    for (_, v), mp in sorted(succ.items()):
        start = min(mp)
        cyc = [start]
        x = mp[start]
        while x != start:
            cyc.append(x)
            x = mp[x]
        rot[v].extend(cyc)
        for x in cyc:
            covered[v] |= 1 << x
    # edges outside every block of size >= 3 are bridges; append them anywhere
    for v in range(n):
        for w in g.neighbours(v):
            if not covered[v] >> w & 1:
                rot[v].append(w)
    return tuple(tuple(r) for r in rot)


def _kuratowski(g: Graph) -> tuple[tuple[int, int], ...]:
    h = g.copy()
    for u, v in list(g.edges()):
        h.remove_edge(u, v)
        if is_planar_masks(h.masks(), h.n):
            h.add_edge(u, v)
    return tuple(h.edges())


def rotation_faces(g: Graph, rotation) -> Optional[int]:
    """Number of faces traced by ``rotation``; None if it is not a rotation
    system of ``g``. Isolated vertices count one face each."""
    nxt: dict[tuple[int, int], int] = {}
    for v in range(g.n):
        r = list(rotation[v])
        if sorted(r) != g.neighbours(v):
            return None
        for i, u in enumerate(r):
            nxt[(v, u)] = r[(i + 1) % len(r)]
    seen = set()
    faces = sum(1 for v in range(g.n) if g.degree(v) == 0)
    for dart in nxt:
        if dart in seen:
            continue
        faces += 1
        d = dart
        while d not in seen:
            seen.add(d)
            v, u = d
            # arriving at u from v, leave along the successor of v at u
            d = (u, nxt[(u, v)])
    return faces


def check_certificate(g: Graph, verdict: PlanarityVerdict) -> bool:
    """Independently validate a verdict's certificate."""
    if verdict.planar:
        if verdict.rotation is None:
            return False
        f = rotation_faces(g, verdict.rotation)
        if f is None:
            return False
        comps = _components(g)
        return g.n - g.m + f == 2 * comps
    if verdict.kuratowski is None:
        return False
    edges = verdict.kuratowski
    if any(not g.has_edge(u, v) for u, v in edges):
        return False
    return _is_kuratowski_subdivision(g.n, edges)


def _components(g: Graph) -> int:
    seen = 0
    c = 0
    for s in range(g.n):
        if seen >> s & 1:
            continue
        c += 1
        front = 1 << s
        seen |= front
        while front:
            nx = 0
            for w in range(g.n):
                if front >> w & 1:
                    nx |= g.adj[w]
            front = nx & ~seen
            seen |= front
    return c


def _is_kuratowski_subdivision(n: int, edges) -> bool:
    """True iff ``edges`` form a subdivision of K5 or K3,3."""
    nb: dict[int, set[int]] = {}
    for u, v in edges:
        nb.setdefault(u, set()).add(v)
        nb.setdefault(v, set()).add(u)
    if any(len(s) < 2 for s in nb.values()):
        return False
    branch = [v for v, s in nb.items() if len(s) > 2]
    if any(len(s) not in (2, 3, 4) for s in nb.values()):
        return False
    # contract every path of degree-2 vertices into one branch edge
    bset = set(branch)
    links: set[frozenset] = set()
    walked = 0
    for b in branch:
        for w in nb[b]:
            prev, cur = b, w
            walked += 1
            while cur not in bset:
                a, c = nb[cur]
                prev, cur = cur, (c if a == prev else a)
                walked += 1
            if cur == b:
                return False
            links.add(frozenset((b, cur)))
    # every edge lies on a branch path and no two paths join the same pair
    if walked != 2 * len(edges):
        return False
    ecount = sum(len(nb[b]) for b in branch) // 2
    if ecount != len(links):
        return False
    if len(branch) == 5 and ecount == 10:
        return all(len(nb[b]) == 4 for b in branch)
    if len(branch) == 6 and ecount == 9 and all(len(nb[b]) == 3 for b in branch):
        adjb = {b: {c for k in links if b in k for c in k if c != b} for b in branch}
        side = {branch[0]: 0}
        stack = [branch[0]]
        while stack:
            x = stack.pop()
            for y in adjb[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    stack.append(y)
                elif side[y] == side[x]:
                    return False
        return len(side) == 6 and sum(side.values()) == 3
    return False
