from __future__ import annotations

import itertools

import networkx as nx
import pytest

from hamgen.canon import canonical_form
from hamgen.generate import GenConfig, Mode, OutputFilters, iter_graphs
from hamgen.graph import Graph
from hamgen.hamilton import count_hc, count_hp, count_hp_between
from hamgen.planarity import is_planar
from hamgen.props import (ConstructionError, RevalidationError, Tup, cantoni_scan, cubic_graphs,
                          extend_tup, extremal_counts, extremal_ut_bruteforce, girth5_three_cycle_graphs,
                          girth5_tup_chain, gp, labelled_count, make_tup, merge, merge_vertex,
                          oracle_check, regular_uh, scan_regular_min_hc, split_degree2_vertex,
                          triangle_replace, uh_with_few_degree2, ut_extremal_formula,
                          uh_extremal_formula, verify_bondy_jackson, verify_cubic_parity,
                          verify_even_degree_floor, verify_thomassen)

from conftest import brute_hc, random_graph


def test_gp_structure():
    pet = gp(5, 2)
    assert pet.n == 10 and pet.is_regular(3) and pet.girth() == 5
    assert brute_hc(pet) == 0
    ref = nx.petersen_graph()
    ng = nx.Graph(list(pet.edges()))
    assert nx.is_isomorphic(ng, ref)
    with pytest.raises(ConstructionError):
        gp(6, 3)
    with pytest.raises(ConstructionError):
        gp(33, 2)


@pytest.mark.parametrize("n", range(5, 16))
def test_schwenk_criterion(n):
    assert (count_hc(gp(n, 2)).count == 3) == (n % 6 == 3)


def test_gp_9_2_and_7_2():
    assert count_hc(gp(9, 2)).count == 3
    assert count_hc(gp(7, 2)).count != 3


def test_tup_from_k4():
    for v in range(4):
        t = make_tup(Graph.complete(4), v)
        assert t.graph == Graph.complete(3) and t.ports == (0, 1, 2)
        assert merge_vertex(t) == Graph.complete(4)


def test_make_tup_checks():
    with pytest.raises(ConstructionError):
        make_tup(Graph.cycle(5), 0)
    with pytest.raises(ConstructionError):
        make_tup(gp(5, 2), 0)
    with pytest.raises(ConstructionError):
        Tup(Graph.complete(3), (0, 1))


def test_tup_chain():
    chain = girth5_tup_chain()
    assert [t.n for t in chain] == [17, 19, 21, 23]
    for t in chain:
        a, b, c = t.ports
        for s, u in ((a, b), (a, c), (b, c)):
            assert count_hp_between(t.graph, s, u).count == 1
        assert t.graph.girth() >= 5


def test_every_vertex_of_gp92_gives_tup():
    g = gp(9, 2)
    for v in range(g.n):
        assert make_tup(g, v).n == 17


def test_extend_errors():
    t = make_tup(Graph.complete(4), 0)
    with pytest.raises(ConstructionError):
        extend_tup(t, "G3")
    with pytest.raises(ConstructionError):
        extend_tup(t, "G9")


def test_merges():
    graphs = girth5_three_cycle_graphs()
    assert sorted(graphs) == [34, 36, 38, 40, 44, 46]
    for order, g in graphs.items():
        assert g.n == order and g.is_regular(3)
        assert g.girth() == 5
        assert count_hc(g).count == 3


def test_merge_orders_and_bijection():
    t1 = girth5_tup_chain()[0]
    for perm in itertools.permutations(t1.ports):
        g = merge(t1, t1, zip(t1.ports, perm))
        assert g.n == 34 and g.is_regular(3)
        assert count_hc(g).count == 3
    with pytest.raises(ConstructionError):
        merge(t1, t1, [(t1.ports[0], t1.ports[0])] * 3)


def test_merge_of_small_tups():
    t = make_tup(Graph.complete(4), 3)
    g = merge(t, t, zip(t.ports, t.ports))
    assert g.n == 6 and g.is_regular(3) and count_hc(g).count == 3


def test_triangle_replacement(rng):
    checked = 0
    cubic = cubic_graphs(8) + cubic_graphs(10) + cubic_graphs(12)
    for g in rng.sample(cubic, 50):
        v = rng.randrange(g.n)
        h = triangle_replace(g, v)
        assert h.n == g.n + 2 and h.is_regular(3)
        assert count_hc(h).count == count_hc(g).count
        checked += 1
    assert checked == 50


def test_subdivision_of_planar_three_cycle_graph():
    g = Graph.complete(4)
    for u, v in g.edges():
        assert count_hc(g.subdivide_edge(u, v)).count == 2
    prism = gp(3, 1)
    assert is_planar(prism).planar and count_hc(prism).count == 3
    for u, v in prism.edges():
        assert count_hc(prism.subdivide_edge(u, v)).count == 2


def test_bondy_jackson():
    for n in range(3, 10):
        graphs = [g for g, _ in iter_graphs(GenConfig(n, planar=True))]
        assert verify_bondy_jackson(graphs) == []
    with pytest.raises(RevalidationError):
        verify_bondy_jackson([Graph.complete(4)])


def test_low_degree2_counts():
    assert len(uh_with_few_degree2(11)) == 2
    for n in range(3, 11):
        assert uh_with_few_degree2(n) == []


def test_regular_scan():
    assert scan_regular_min_hc(5, 4) == (12, 1)
    assert scan_regular_min_hc(7, 4) == (23, 1)
    with pytest.raises(ConstructionError):
        scan_regular_min_hc(7, 3)


def test_sheehan_small():
    for n in range(5, 11):
        assert regular_uh(n, 4) == []


def test_even_degree_floor():
    assert verify_even_degree_floor([Graph.cycle(5)]) == []
    uh = [(g, hv) for n in range(3, 10) for g, hv in iter_graphs(GenConfig(n))]
    assert verify_even_degree_floor(uh) == []
    two = [(g, hv) for n in range(3, 9)
           for g, hv in iter_graphs(GenConfig(n, Mode.AT_MOST, k=2, filters=OutputFilters(h_min=2)))]
    assert two and verify_even_degree_floor(two) == []
    with pytest.raises(RevalidationError):
        verify_even_degree_floor([Graph.complete(4)])


def test_thomassen_small():
    uh = [g for n in range(4, 10) for g, _ in iter_graphs(GenConfig(n, filters=OutputFilters(min_degree=3)))]
    assert uh == []
    multi = [g for g, _ in iter_graphs(GenConfig(8, Mode.AT_MOST, k=3, filters=OutputFilters(h_min=2)))]
    assert verify_thomassen(multi) == []


def test_cubic_parity_suite():
    for n in (4, 6, 8, 10):
        assert verify_cubic_parity(cubic_graphs(n)) == []
    assert [len(cubic_graphs(n)) for n in (4, 6, 8, 10, 12)] == [1, 2, 6, 21, 94]


def test_cubic_counts_against_networkx_atlas():
    atlas = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == 6
             and all(d == 3 for _, d in g.degree())]
    assert len(cubic_graphs(6)) == len(atlas)


def test_cantoni():
    r = cantoni_scan(10)
    assert r.cubic_three_cycles == 3 and r.triangle_free_planar == []
    r = cantoni_scan(12)
    assert r.cubic_three_cycles == 7 and r.triangle_free_planar == []
    with pytest.raises(ConstructionError):
        cantoni_scan(9)


@pytest.mark.parametrize("n", [7, 8, 9, 10])
def test_extremal_uh(n):
    r = extremal_counts(n, "UH")
    assert r.size == r.bound == n * n // 4 + 1
    assert r.count == uh_extremal_formula(n)


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_extremal_ut(n):
    r = extremal_counts(n, "UT")
    assert r.size == r.bound == (n - 1) ** 2 // 4 + 1
    assert r.count == ut_extremal_formula(n)
    for g in r.graphs:
        assert count_hp(g).count == 1


def _atlas_ut(n):
    best, found = -1, []
    for ng in nx.graph_atlas_g():
        if ng.number_of_nodes() != n:
            continue
        g = Graph.from_edges(n, ng.edges())
        if count_hp(g, 2).count == 1:
            if g.m > best:
                best, found = g.m, [g]
            elif g.m == best:
                found.append(g)
    return best, found


@pytest.mark.parametrize("n", [5, 6, 7])
def test_extremal_ut_three_routes(n):
    built = extremal_counts(n, "UT")
    brute = extremal_counts(n, "UT", method="bruteforce")
    best, atlas = _atlas_ut(n)
    assert built.size == brute.size == best
    assert ({canonical_form(g) for g in built.graphs} == {canonical_form(g) for g in brute.graphs}
            == {canonical_form(g) for g in atlas})


def test_split_degree2():
    g = Graph.cycle(5)
    h = split_degree2_vertex(g, 0)
    assert h.n == 6 and h.m == 5 and count_hp(h).count == 1
    with pytest.raises(ConstructionError):
        split_degree2_vertex(Graph.complete(4), 0)


def test_extremal_errors():
    with pytest.raises(ConstructionError):
        extremal_counts(9, "XX")
    with pytest.raises(ConstructionError):
        extremal_ut_bruteforce(10)


def test_labelled_count_known():
    # labelled hamiltonian graphs on 4 vertices: 3 four-cycles, 6 diamonds, 1 complete graph
    assert labelled_count(4, Mode.AT_MOST, 3) == 10
    assert labelled_count(4, Mode.UNRESTRICTED) == 64
    assert labelled_count(5, Mode.EXACTLY_ONE) == 132


def test_oracle_check_small():
    for n in range(3, 7):
        assert oracle_check(n, Mode.NON_HAMILTONIAN).ok
