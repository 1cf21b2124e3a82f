from __future__ import annotations

import itertools
import re
import random

import pytest
from hypothesis import strategies as st

from hamgen.graph import Graph


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


def brute_hc(g: Graph) -> int:
    """Hamiltonian cycles by trying every cyclic vertex sequence through 0."""
    n = g.n
    if n < 3:
        return 0
    total = 0
    for rest in itertools.permutations(range(1, n)):
        if rest[0] > rest[-1]:
            continue
        seq = (0,) + rest
        if all(g.has_edge(seq[i], seq[(i + 1) % n]) for i in range(n)):
            total += 1
    return total


def brute_hp(g: Graph) -> int:
    total = 0
    for seq in itertools.permutations(range(g.n)):
        if g.n > 1 and seq[0] > seq[-1]:
            continue
        if all(g.has_edge(seq[i], seq[i + 1]) for i in range(g.n - 1)):
            total += 1
    return total


def brute_automorphisms(g: Graph) -> list[tuple[int, ...]]:
    edges = set(g.edges())
    out = []
    for p in itertools.permutations(range(g.n)):
        if all((min(p[u], p[v]), max(p[u], p[v])) in edges for u, v in edges):
            out.append(p)
    return out


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240917)


# -- acceptance reporting ------------------------------------------------------

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def record(key: str, ok: bool, detail: str) -> None:
    ACCEPTANCE[key] = (ok, detail)
    print(f"[{'PASS' if ok else 'FAIL'}] {key}: {detail}")


def _natural(key: str) -> list:
    return [(0, int(p), "") if p.isdigit() else (1, 0, p) for p in re.findall(r"\d+|\D+", key)]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=_natural):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
