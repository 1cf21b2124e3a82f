"""Compiled search kernel for the canonical edge-insertion generator.

The recursion of the construction is unrolled into per-level arrays so the
kernel can pause when its output buffer fills and be resumed later. All
tuple invariants are packed into integer keys whose natural order equals
the lexicographic order of the invariant components they encode.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from ._bits import U0, U1, bit, ctz, full_mask, popcount
from .canon import canon_label
from .hamilton import ab_path_kernel, cycles_of_length_kernel, hc_kernel
from .planarity import is_planar_masks

EXACTLY_ONE, AT_MOST, NON_HAM, UNRESTRICTED = 0, 1, 2, 3

# configuration slots
C_MODE = 0
C_N = 1
C_K = 2
C_GIRTH = 3
C_PLANAR = 4
C_MAXDEG = 5
C_NEARLY_CUBIC = 6
C_SPLIT_M = 7
C_MOD = 8
C_RES = 9
C_LOOKAHEAD = 10
C_CHECK = 11
C_CYCLE_CANON = 12
C_CONNECTED = 13
C_MINDEG = 14
C_REGULAR = 15
C_OUT_NEARLY_CUBIC = 16
C_TRIANGLE_FREE = 17
C_NO_NM1 = 18
C_HMIN = 19
C_HMAX = 20
C_MAX_DEG2 = 21
C_EDGES = 22
C_HCAP = 23
C_SIZE = 24

# statistics slots
S_NODES = 0
S_EMITTED = 1
S_AUT = 2
S_TIEBREAK = 3
S_MISMATCH = 4
S_GIRTH = 5
S_DEGREE = 6
S_LOOKAHEAD = 7
S_PLANAR = 8
S_MODE = 9
S_NONCANON = 10
S_FILTERED = 11
S_CHILDREN = 12
S_ORBITS = 13
S_SKIPPED = 14
S_SIZE = 16

# state slots
T_LEVEL = 0
T_COUNTER = 1
T_OUT = 2
T_STARTED = 3


@njit(inline="always")
def _pair_key(u, v):
    if u > v:
        return u * 64 + v
    return v * 64 + u


# -- dihedral symmetry of the anchor cycle ---------------------------------


@njit(inline="always")
def _dmap(code, v, n):
    r = code >> 1
    if code & 1:
        return (r - v) % n
    return (v + r) % n


@njit(inline="always")
def _dinv(code, p, n):
    r = code >> 1
    if code & 1:
        return (r - p) % n
    return (p - r) % n


@njit(cache=True)
def _drow(adj, code, v, n):
    x = adj[v]
    y = U0
    while x:
        w = ctz(x)
        x &= x - U1
        y |= bit(_dmap(code, w, n))
    return y


@njit(cache=True)
def dihedral_automorphisms(adj, deg, n, out):
    """Codes ``2r + reflect`` of the anchor symmetries that fix the graph."""
    k = 0
    for code in range(2 * n):
        ok = True
        for v in range(n):
            if deg[_dmap(code, v, n)] != deg[v]:
                ok = False
                break
        if ok:
            for v in range(n):
                if _drow(adj, code, v, n) != adj[_dmap(code, v, n)]:
                    ok = False
                    break
        if ok:
            out[k] = code
            k += 1
    return k


@njit(cache=True)
def dihedral_canon(adj, deg, n, S, tmp, best, bdeg):
    """Maximise (degree sequence, rows) over the anchor symmetries.

    Leaves the maximal form in ``best`` and every symmetry attaining it in
    ``S``; returns how many there are.
    """
    ns = 0
    for code in range(2 * n):
        cmp = 1 if ns == 0 else 0
        if cmp == 0:
            for p in range(n):
                dd = deg[_dinv(code, p, n)]
                if dd != bdeg[p]:
                    cmp = 1 if dd > bdeg[p] else -1
                    break
            if cmp < 0:
                continue
        for p in range(n):
            row = _drow(adj, code, _dinv(code, p, n), n)
            tmp[p] = row
            if cmp == 0 and row != best[p]:
                if row < best[p]:
                    cmp = -1
                    break
                cmp = 1
        if cmp < 0:
            continue
        if cmp > 0:
            for p in range(n):
                best[p] = tmp[p]
                bdeg[p] = deg[_dinv(code, p, n)]
            ns = 0
        S[ns] = code
        ns += 1
    return ns


# -- invariant stages ------------------------------------------------------


@njit(inline="always")
def _ball2(adj, v):
    b = adj[v] | bit(v)
    x = adj[v]
    while x:
        w = ctz(x)
        x &= x - U1
        b |= adj[w]
    return b


@njit(cache=True)
def _stage_key(stage, adj, deg, n, u, v):
    if stage == 0:
        a = deg[u]
        b = deg[v]
        if a < b:
            a, b = b, a
        return a * 128 + b
    if stage == 1:
        d = abs(u - v)
        if n - d < d:
            d = n - d
        return -d
    if stage == 2:
        su = deg[(u - 1) % n] + deg[(u + 1) % n]
        sv = deg[(v - 1) % n] + deg[(v + 1) % n]
        if su < sv:
            su, sv = sv, su
        return -su * 1024 - sv
    if stage == 3:
        return popcount(adj[u] & adj[v])
    return -popcount(_ball2(adj, u) | _ball2(adj, v))


@njit(cache=True)
def _stages_for(mode):
    if mode == EXACTLY_ONE:
        return np.array([0, 1, 2, 3, 4], np.int64)
    return np.array([0, 3, 4], np.int64)


@njit(cache=True)
def _label_tiebreak_dihedral(adj, deg, n, su, sv, ns, a, b):
    S = np.empty(2 * n, np.int64)
    tmp = np.empty(n, np.uint64)
    best = np.empty(n, np.uint64)
    bdeg = np.empty(n, np.int64)
    k = dihedral_canon(adj, deg, n, S, tmp, best, bdeg)
    c0 = S[0]
    top = -1
    for i in range(ns):
        key = _pair_key(_dmap(c0, su[i], n), _dmap(c0, sv[i], n))
        if key > top:
            top = key
    for j in range(k):
        if _pair_key(_dmap(S[j], a, n), _dmap(S[j], b, n)) == top:
            return True
    return False


@njit(cache=True)
def _label_tiebreak_general(adj, n, su, sv, ns, a, b):
    bestlab, bestg, gens = canon_label(adj, n)
    lab = np.empty(n, np.int64)
    for p in range(n):
        lab[bestlab[p]] = p
    top = -1
    for i in range(ns):
        key = _pair_key(lab[su[i]], lab[sv[i]])
        if key > top:
            top = key
    # orbit of ab under the generators
    seen = np.zeros(n * 64, np.bool_)
    qu = np.empty(n * n, np.int64)
    qv = np.empty(n * n, np.int64)
    seen[_pair_key(a, b)] = True
    qu[0] = a
    qv[0] = b
    qh = 0
    qt = 1
    while qh < qt:
        u = qu[qh]
        v = qv[qh]
        qh += 1
        if _pair_key(lab[u], lab[v]) == top:
            return True
        for g in range(gens.shape[0]):
            x = gens[g, u]
            y = gens[g, v]
            kk = _pair_key(x, y)
            if not seen[kk]:
                seen[kk] = True
                qu[qt] = x
                qv[qt] = y
                qt += 1
    return False


@njit(cache=True)
def lazy_canonical(adj, deg, n, mode, ru, rv, nr, a, b, cycle_canon, stats):
    """Staged test that the new edge ab is a canonical reducible edge."""
    su = ru[:nr].copy()
    sv = rv[:nr].copy()
    ns = nr
    keys = np.empty(nr, np.int64)
    stages = _stages_for(mode)
    for s in range(stages.shape[0]):
        st = stages[s]
        top = -(1 << 62)
        for i in range(ns):
            k = _stage_key(st, adj, deg, n, su[i], sv[i])
            keys[i] = k
            if k > top:
                top = k
        c = 0
        found = False
        for i in range(ns):
            if keys[i] == top:
                su[c] = su[i]
                sv[c] = sv[i]
                if (su[i] == a and sv[i] == b) or (su[i] == b and sv[i] == a):
                    found = True
                c += 1
        ns = c
        if not found:
            return False
        if ns == 1:
            return True
    stats[S_TIEBREAK] += 1
    if cycle_canon:
        return _label_tiebreak_dihedral(adj, deg, n, su, sv, ns, a, b)
    return _label_tiebreak_general(adj, n, su, sv, ns, a, b)


@njit(cache=True)
def full_canonical(adj, deg, n, mode, ru, rv, nr, a, b, cycle_canon):
    """Reference test: full tuples of every reducible edge, then compare."""
    stages = _stages_for(mode)
    ncomp = stages.shape[0] + 1
    T = np.empty((nr, ncomp), np.int64)
    for i in range(nr):
        for s in range(stages.shape[0]):
            T[i, s] = _stage_key(stages[s], adj, deg, n, ru[i], rv[i])
    label_key = np.full(nr, -1, np.int64)
    if cycle_canon:
        S = np.empty(2 * n, np.int64)
        tmp = np.empty(n, np.uint64)
        best = np.empty(n, np.uint64)
        bdeg = np.empty(n, np.int64)
        k = dihedral_canon(adj, deg, n, S, tmp, best, bdeg)
        for i in range(nr):
            for j in range(k):
                key = _pair_key(_dmap(S[j], ru[i], n), _dmap(S[j], rv[i], n))
                if key > label_key[i]:
                    label_key[i] = key
    else:
        bestlab, bestg, gens = canon_label(adj, n)
        lab = np.empty(n, np.int64)
        for p in range(n):
            lab[bestlab[p]] = p
        par = np.arange(n * 64)
        for i in range(nr):
            for g in range(gens.shape[0]):
                x = _find(par, _pair_key(ru[i], rv[i]))
                y = _find(par, _pair_key(gens[g, ru[i]], gens[g, rv[i]]))
                if x != y:
                    par[x] = y
        top = np.full(n * 64, -1, np.int64)
        for i in range(nr):
            r = _find(par, _pair_key(ru[i], rv[i]))
            key = _pair_key(lab[ru[i]], lab[rv[i]])
            if key > top[r]:
                top[r] = key
        for i in range(nr):
            label_key[i] = top[_find(par, _pair_key(ru[i], rv[i]))]
    for i in range(nr):
        T[i, ncomp - 1] = label_key[i]
    best_i = 0
    mine = -1
    for i in range(nr):
        if (ru[i] == a and rv[i] == b) or (ru[i] == b and rv[i] == a):
            mine = i
        if i > 0:
            for s in range(ncomp):
                if T[i, s] != T[best_i, s]:
                    if T[i, s] > T[best_i, s]:
                        best_i = i
                    break
    for s in range(ncomp):
        if T[mine, s] != T[best_i, s]:
            return False
    return True


@njit(inline="always")
def _find(par, x):
    while par[x] != x:
        par[x] = par[par[x]]
        x = par[x]
    return x


# -- reducible edges -------------------------------------------------------


@njit(cache=True)
def reducible(adj, n, mode, inter, ru, rv):
    """Fill (ru, rv) with the reducible edges; ``inter`` is the per-vertex
    mask of edges lying on every hamiltonian cycle (AtMost mode)."""
    c = 0
    for u in range(n):
        x = adj[u] & ~((bit(u) << U1) - U1)
        while x:
            v = ctz(x)
            x &= x - U1
            if mode == EXACTLY_ONE:
                if v == u + 1 or (u == 0 and v == n - 1):
                    continue
            elif mode == AT_MOST:
                if (inter[u] >> np.uint64(v)) & U1:
                    continue
            ru[c] = u
            rv[c] = v
            c += 1
    return c


@njit(cache=True)
def _sure_key(adj, deg, n, mode, inter):
    """Largest (max, min) endpoint-degree key among edges that stay reducible
    in every child."""
    top = -1
    for u in range(n):
        x = adj[u] & ~((bit(u) << U1) - U1)
        while x:
            v = ctz(x)
            x &= x - U1
            if mode == EXACTLY_ONE:
                if v == u + 1 or (u == 0 and v == n - 1):
                    continue
            elif mode == AT_MOST:
                if (inter[u] >> np.uint64(v)) & U1:
                    continue
            a = deg[u]
            b = deg[v]
            if a < b:
                a, b = b, a
            k = a * 128 + b
            if k > top:
                top = k
    return top


# -- output filters --------------------------------------------------------


@njit(cache=True)
def _passes(adj, deg, n, m, cfg, hval):
    if cfg[C_EDGES] >= 0 and m != cfg[C_EDGES]:
        return False
    if cfg[C_MINDEG] > 0 or cfg[C_REGULAR] >= 0 or cfg[C_OUT_NEARLY_CUBIC] or cfg[C_MAX_DEG2] >= 0:
        mn = 1 << 30
        mx = -1
        n4 = 0
        n2 = 0
        for v in range(n):
            if deg[v] < mn:
                mn = deg[v]
            if deg[v] > mx:
                mx = deg[v]
            if deg[v] == 4:
                n4 += 1
            if deg[v] == 2:
                n2 += 1
        if mn < cfg[C_MINDEG]:
            return False
        if cfg[C_REGULAR] >= 0 and (mn != cfg[C_REGULAR] or mx != cfg[C_REGULAR]):
            return False
        if cfg[C_OUT_NEARLY_CUBIC] and (n4 != 2 or mn != 3 or mx != 4):
            return False
        if cfg[C_MAX_DEG2] >= 0 and n2 > cfg[C_MAX_DEG2]:
            return False
    if cfg[C_CONNECTED]:
        seen = U1
        front = U1
        while front:
            nx = U0
            while front:
                w = ctz(front)
                front &= front - U1
                nx |= adj[w]
            front = nx & ~seen
            seen |= front
        if seen != full_mask(n):
            return False
    if cfg[C_TRIANGLE_FREE]:
        for u in range(n):
            x = adj[u] & ~((bit(u) << U1) - U1)
            while x:
                v = ctz(x)
                x &= x - U1
                if adj[u] & adj[v]:
                    return False
    if cfg[C_NO_NM1] and n >= 4:
        if cycles_of_length_kernel(adj, n, n - 1, 1) > 0:
            return False
    if hval >= 0 and (hval < cfg[C_HMIN] or hval > cfg[C_HMAX]):
        return False
    return True


@njit(cache=True)
def _hval(adj, n, mode, cfg, hn):
    """Hamiltonian cycle count of an emitted graph (capped), or -1."""
    if mode == EXACTLY_ONE:
        return 1
    if mode == AT_MOST:
        return hn
    if mode == NON_HAM:
        return 0
    if cfg[C_HCAP] > 0 or cfg[C_HMIN] > 0 or cfg[C_HMAX] < (1 << 40):
        if n < 3:
            return 0
        cap = cfg[C_HCAP]
        if cap <= 0 or (cfg[C_HMAX] < (1 << 40) and cfg[C_HMAX] + 1 > cap):
            cap = cfg[C_HMAX] + 1 if cfg[C_HMAX] < (1 << 40) else 1 << 62
        store = np.zeros((1, 1), np.uint64)
        inc = np.zeros((1, 1), np.int64)
        return hc_kernel(adj, n, cap, 0, store, inc)
    return -1


# -- orbit representatives of candidate pairs ------------------------------


@njit(cache=True)
def _orbit_reps(adj, deg, n, cfg, cu, cv, nc, stats):
    """Keep one candidate pair per orbit of Aut(G); returns the new count."""
    if nc <= 1:
        return nc
    stats[S_AUT] += 1
    keep = 0
    if cfg[C_MODE] == EXACTLY_ONE and cfg[C_CYCLE_CANON]:
        auts = np.empty(2 * n, np.int64)
        na = dihedral_automorphisms(adj, deg, n, auts)
        for i in range(nc):
            k = _pair_key(cu[i], cv[i])
            rep = True
            for j in range(na):
                if _pair_key(_dmap(auts[j], cu[i], n), _dmap(auts[j], cv[i], n)) < k:
                    rep = False
                    break
            if rep:
                cu[keep] = cu[i]
                cv[keep] = cv[i]
                keep += 1
        return keep
    bestlab, bestg, gens = canon_label(adj, n)
    if gens.shape[0] == 0:
        return nc
    par = np.arange(n * 64)
    for i in range(nc):
        for g in range(gens.shape[0]):
            x = _find(par, _pair_key(cu[i], cv[i]))
            y = _find(par, _pair_key(gens[g, cu[i]], gens[g, cv[i]]))
            if x < y:
                par[y] = x
            elif y < x:
                par[x] = y
    for i in range(nc):
        k = _pair_key(cu[i], cv[i])
        if _find(par, k) == k:
            cu[keep] = cu[i]
            cv[keep] = cv[i]
            keep += 1
    return keep


# -- the search ------------------------------------------------------------


@njit(cache=True)
def run_kernel(cfg, stats, state, ADJ, DEG, CU, CV, NCAND, CI, PHASE, HC, HN, INTER, out, outh):
    """Advance the search; returns 1 when ``out`` is full, 0 when finished."""
    n = cfg[C_N]
    mode = cfg[C_MODE]
    K = cfg[C_K]
    girth = cfg[C_GIRTH]
    maxdeg = cfg[C_MAXDEG]
    mod = cfg[C_MOD]
    res = cfg[C_RES]
    split_m = cfg[C_SPLIT_M]
    L = ADJ.shape[0]
    root_m = 0
    for v in range(n):
        root_m += DEG[0, v]
    root_m //= 2
    cap_out = out.shape[0]
    ru = np.empty(n * n, np.int64)
    rv = np.empty(n * n, np.int64)
    tmp_store = np.zeros((K + 2, n), np.uint64)
    d = state[T_LEVEL]
    while d >= 0:
        adj = ADJ[d]
        deg = DEG[d]
        m = root_m + d
        if PHASE[d] == 0:
            if state[T_OUT] >= cap_out:
                state[T_LEVEL] = d
                return 1
            explore = True
            emit = True
            if mod > 1:
                if m == split_m:
                    c = state[T_COUNTER]
                    state[T_COUNTER] = c + 1
                    if c % mod != res:
                        explore = False
                elif m < split_m and res != 0:
                    emit = False
            if not explore:
                stats[S_SKIPPED] += 1
                d -= 1
                continue
            stats[S_NODES] += 1
            if emit:
                hval = _hval(adj, n, mode, cfg, HN[d])
                if _passes(adj, deg, n, m, cfg, hval):
                    o = state[T_OUT]
                    for v in range(n):
                        out[o, v] = adj[v]
                    outh[o] = hval
                    state[T_OUT] = o + 1
                    stats[S_EMITTED] += 1
                else:
                    stats[S_FILTERED] += 1
            PHASE[d] = 1
            NCAND[d] = 0
            CI[d] = 0
            if d + 1 < L:
                # candidate non-adjacent pairs passing the structural filters
                sure = -1
                if cfg[C_LOOKAHEAD]:
                    sure = _sure_key(adj, deg, n, mode, INTER[d])
                planar_room = (not cfg[C_PLANAR]) or n < 3 or m + 1 <= 3 * n - 6
                nc = 0
                n4 = 0
                if cfg[C_NEARLY_CUBIC]:
                    for v in range(n):
                        if deg[v] >= 4:
                            n4 += 1
                if planar_room:
                    for a in range(n):
                        if deg[a] >= maxdeg:
                            continue
                        ball = bit(a)
                        if girth > 3:
                            front = ball
                            for _ in range(girth - 2):
                                nx = U0
                                while front:
                                    w = ctz(front)
                                    front &= front - U1
                                    nx |= adj[w]
                                front = nx & ~ball
                                ball |= front
                        x = full_mask(n) & ~adj[a] & ~((bit(a) << U1) - U1)
                        while x:
                            b = ctz(x)
                            x &= x - U1
                            if deg[b] >= maxdeg:
                                stats[S_DEGREE] += 1
                                continue
                            if (ball >> np.uint64(b)) & U1:
                                stats[S_GIRTH] += 1
                                continue
                            if cfg[C_NEARLY_CUBIC]:
                                extra = 0
                                if deg[a] == 3:
                                    extra += 1
                                if deg[b] == 3:
                                    extra += 1
                                if deg[a] >= 4 or deg[b] >= 4 or n4 + extra > 2:
                                    stats[S_DEGREE] += 1
                                    continue
                            if sure >= 0:
                                da = deg[a] + 1
                                db = deg[b] + 1
                                if da < db:
                                    da, db = db, da
                                if da * 128 + db < sure:
                                    stats[S_LOOKAHEAD] += 1
                                    continue
                            CU[d, nc] = a
                            CV[d, nc] = b
                            nc += 1
                if nc > 0:
                    nc = _orbit_reps(adj, deg, n, cfg, CU[d], CV[d], nc, stats)
                stats[S_ORBITS] += nc
                NCAND[d] = nc
        if CI[d] >= NCAND[d]:
            PHASE[d] = 0
            d -= 1
            continue
        i = CI[d]
        CI[d] = i + 1
        a = CU[d, i]
        b = CV[d, i]
        stats[S_CHILDREN] += 1
        k = d + 1
        cadj = ADJ[k]
        cdeg = DEG[k]
        for v in range(n):
            cadj[v] = adj[v]
            cdeg[v] = deg[v]
        cadj[a] |= bit(b)
        cadj[b] |= bit(a)
        cdeg[a] += 1
        cdeg[b] += 1
        # AtMost: the new cycles are the hamiltonian a-b paths of the parent
        if mode == AT_MOST:
            room = K - HN[d]
            new = ab_path_kernel(adj, n, a, b, room + 1, 1, tmp_store)
            if new > room:
                stats[S_MODE] += 1
                continue
            h0 = HN[d]
            for c in range(h0):
                for v in range(n):
                    HC[k, c, v] = HC[d, c, v]
            for v in range(n):
                INTER[k, v] = INTER[d, v]
            for c in range(new):
                for v in range(n):
                    HC[k, h0 + c, v] = tmp_store[c, v]
                    INTER[k, v] &= tmp_store[c, v]
            HN[k] = h0 + new
        nr = reducible(cadj, n, mode, INTER[k], ru, rv)
        ok = lazy_canonical(cadj, cdeg, n, mode, ru, rv, nr, a, b, cfg[C_CYCLE_CANON], stats)
        if cfg[C_CHECK]:
            if ok != full_canonical(cadj, cdeg, n, mode, ru, rv, nr, a, b, cfg[C_CYCLE_CANON]):
                stats[S_MISMATCH] += 1
        if not ok:
            stats[S_NONCANON] += 1
            continue
        if cfg[C_PLANAR] and not is_planar_masks(cadj, n):
            stats[S_PLANAR] += 1
            continue
        if (mode == EXACTLY_ONE or mode == NON_HAM) and n >= 3:
            if ab_path_kernel(adj, n, a, b, 1, 0, tmp_store) > 0:
                stats[S_MODE] += 1
                continue
        if mode == EXACTLY_ONE:
            HN[k] = 1
        PHASE[k] = 0
        d = k
    state[T_LEVEL] = -1
    return 0
