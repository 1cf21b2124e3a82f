"""Word-level bit helpers shared by the compiled kernels.

Adjacency rows are ``uint64`` masks; every kernel in the package relies on
these to stay in native integer instructions.
"""
from __future__ import annotations

import numpy as np
from llvmlite import ir
from numba import njit, types
from numba.extending import intrinsic

U0 = np.uint64(0)
U1 = np.uint64(1)
ALL = np.uint64(0xFFFFFFFFFFFFFFFF)


@intrinsic
def popcount(typingctx, x):
    sig = types.int64(types.uint64)

    def codegen(context, builder, signature, args):
        return builder.ctpop(args[0])

    return sig, codegen


@intrinsic
def ctz(typingctx, x):
    """Index of the lowest set bit (undefined for 0)."""
    sig = types.int64(types.uint64)

    def codegen(context, builder, signature, args):
        return builder.cttz(args[0], ir.Constant(ir.IntType(1), 0))

    return sig, codegen


@njit(inline="always")
def bit(v):
    return U1 << np.uint64(v)


@njit(inline="always")
def full_mask(n):
    if n >= 64:
        return ALL
    return (U1 << np.uint64(n)) - U1


@njit(inline="always")
def has(mask, v):
    return ((mask >> np.uint64(v)) & U1) != U0


@njit(cache=True)
def neighbourhood(adj, mask):
    """Union of the neighbourhoods of the vertices in ``mask``."""
    out = U0
    while mask:
        v = ctz(mask)
        mask &= mask - U1
        out |= adj[v]
    return out


@njit(cache=True)
def component_of(adj, start, within):
    """Vertices reachable from ``start`` using only vertices in ``within``."""
    seen = bit(start)
    frontier = seen
    while frontier:
        nxt = neighbourhood(adj, frontier) & within & ~seen
        seen |= nxt
        frontier = nxt
    return seen
