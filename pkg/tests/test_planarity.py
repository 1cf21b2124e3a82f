from __future__ import annotations

from functools import lru_cache

import networkx as nx
import pytest
from hypothesis import given, settings

from hamgen.canon import canonical_form
from hamgen.graph import Graph
from hamgen.planarity import _is_kuratowski_subdivision, check_certificate, is_planar
from hamgen.props import gp

from conftest import graphs, random_graph

K5 = Graph.complete(5)
K33 = Graph.from_edges(6, [(u, v) for u in range(3) for v in range(3, 6)])
_TARGETS = {canonical_form(K5), canonical_form(K33)}


def _reduce(g: Graph) -> Graph:
    """Drop vertices of degree at most 1 and smooth degree-2 vertices."""
    edges = {frozenset(e) for e in g.edges()}
    alive = set(range(g.n))
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            nb = [u for u in alive if frozenset((u, v)) in edges]
            if len(nb) <= 1 or len(nb) == 2:
                for u in nb:
                    edges.discard(frozenset((u, v)))
                if len(nb) == 2:
                    edges.add(frozenset(nb))
                alive.discard(v)
                changed = True
    idx = {v: i for i, v in enumerate(sorted(alive))}
    return Graph.from_edges(len(alive) or 1, [tuple(idx[x] for x in e) for e in edges]) if alive else Graph.empty(1)


@lru_cache(maxsize=None)
def _has_subdivision(form: bytes) -> bool:
    g = Graph.from_graph6(form)
    if form in _TARGETS:
        return True
    if g.n < 5:
        return False
    for u, v in list(g.edges()):
        h = _reduce(g.copy().remove_edge(u, v))
        if _has_subdivision(canonical_form(h)):
            return True
    return False


def brute_planar(g: Graph) -> bool:
    """Planar iff no subgraph is a subdivision of K5 or K3,3, by exhaustive edge deletion."""
    return not _has_subdivision(canonical_form(_reduce(g)))


def test_base_cases():
    assert is_planar(Graph.complete(4)).planar
    for g in (K5, K33):
        v = is_planar(g)
        assert not v.planar and check_certificate(g, v)
        assert _is_kuratowski_subdivision(g.n, v.kuratowski)


def test_named():
    assert not is_planar(gp(5, 2)).planar
    assert is_planar(gp(6, 1)).planar  # prism over a hexagon
    assert is_planar(Graph.empty(7)).planar
    assert is_planar(Graph.cycle(30)).planar


def test_against_subdivision_search(rng):
    for _ in range(1000):
        n = rng.randint(5, 10)
        g = random_graph(rng, n, rng.choice([0.3, 0.4, 0.5]))
        v = is_planar(g)
        assert v.planar == brute_planar(g)
        assert check_certificate(g, v)


def test_against_networkx(rng):
    for _ in range(3000):
        n = rng.randint(1, 30)
        g = random_graph(rng, n, rng.choice([0.1, 0.15, 0.2, 0.3]))
        ng = nx.Graph()
        ng.add_nodes_from(range(n))
        ng.add_edges_from(g.edges())
        v = is_planar(g)
        assert v.planar == nx.check_planarity(ng)[0]
        assert check_certificate(g, v)


def test_edge_bound_and_monotone(rng):
    for _ in range(300):
        g = random_graph(rng, rng.randint(3, 14), 0.35)
        if is_planar(g, certificate=False).planar:
            assert g.m <= 3 * g.n - 6
            for u, v in list(g.edges())[:5]:
                assert is_planar(g.copy().remove_edge(u, v), certificate=False).planar


def test_certificate_rejects_wrong_claims():
    assert not check_certificate(K5, is_planar(Graph.cycle(5)))
    assert not check_certificate(Graph.complete(5).remove_edge(0, 1), is_planar(K5))


@given(graphs(max_n=12))
@settings(max_examples=300, deadline=None)
def test_certificates_valid(g):
    v = is_planar(g)
    assert check_certificate(g, v)
    if v.planar:
        assert v.rotation is not None
    else:
        assert v.kuratowski
