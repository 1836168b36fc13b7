import random

import pytest

from rigidgraphs.core import Digraph, Graph, Indicator, RelSystem, cycle_graph, degrees, odd_girth, path_graph
from rigidgraphs.gadgets import family_F2
from rigidgraphs.homsearch import enumerate_homs
from rigidgraphs.indicators import build_indicator
from rigidgraphs.products import (
    ProductError,
    add_edges,
    cartesian,
    cartesian_variant,
    hom_transport_check,
    pair_index,
    sip,
    sip_vec,
    transport,
)

from oracles import arc_sets


def loop_system(n=1):
    return RelSystem(n, ["a"], {"a": [(v, v) for v in range(n)]})


def is_hom(f, X, Y):
    ya = arc_sets(Y)
    return all((f[u], f[v]) in ya[c] for c, arcs in arc_sets(X).items() for u, v in arcs)


class TestSip:
    def test_layout(self):
        D = RelSystem(2, ["a", "b"], {"a": [(0, 1)], "b": [(1, 0), (1, 1)]})
        Sa = Indicator(path_graph(3), 0, 2)
        Sb = Indicator(path_graph(4), 0, 3)
        P = sip(D, [Sa, Sb])
        assert P.result.n == 2 + 3 + 2 * 4
        assert P.copies[0] == ("a", (0, 1), 2)
        assert list(P.copy_range("b", (1, 1))) == list(range(9, 13))
        # each arc adds |E(S)| + 2 edges
        assert P.result.num_edges() == (2 + 2) + 2 * (3 + 2)

    def test_wrong_indicator_count(self):
        with pytest.raises(ProductError):
            sip(loop_system(), [Indicator(path_graph(2), 0, 1)] * 2)

    def test_sip_needs_graph(self):
        with pytest.raises(ProductError):
            sip(loop_system(), Indicator(Digraph(2, [(0, 1)]), 0, 1))

    def test_sip_vec_needs_oriented(self):
        with pytest.raises(ProductError):
            sip_vec(loop_system(), Indicator(Digraph(2, [(0, 1), (1, 0)]), 0, 1))

    def test_sip_vec_directions(self):
        P = sip_vec(loop_system(), Indicator(Digraph(2, [(0, 1)]), 0, 1))
        assert P.result.arcs() == [(0, 1), (1, 2), (2, 0)]


class TestTransport:
    def test_transported_maps_are_homs(self):
        S = Indicator(cycle_graph(5), 0, 2)
        rng = random.Random(1)
        for _ in range(10):
            n = rng.randint(1, 3)
            D = RelSystem(n, ["a"], {"a": [(u, v) for u in range(n) for v in range(n) if rng.random() < 0.5]})
            P = sip(D, S)
            for phi in enumerate_homs(D, D):
                assert is_hom(transport(phi, P, P), P.result, P.result)

    def test_hom_equivalence_with_S37(self):
        S = build_indicator(3, 7)
        D = loop_system(1)
        D2 = RelSystem(2, ["a"], {"a": [(0, 1), (1, 0)]})
        r = hom_transport_check(D2, D, S)
        assert r.ok and r.base_count == 1
        r2 = hom_transport_check(D, D2, S)
        assert r2.ok and r2.base_count == 0

    def test_regular_and_odd_girth(self):
        S = build_indicator(3, 7)
        # every vertex of D has total degree 3
        D = RelSystem(2, ["a"], {"a": [(0, 0), (0, 1), (1, 1)]})
        P = sip(D, S)
        assert P.result.is_regular(3)
        assert odd_girth(P.result) == 7

    def test_directed_with_F2(self):
        _, ind = family_F2(3, 2)
        D = RelSystem(2, ["a"], {"a": [(0, 1), (1, 0)]})
        r = hom_transport_check(D, D, ind, directed=True)
        assert r.ok and r.base_count == 2

    def test_rejects_sources(self):
        D = RelSystem(2, ["a"], {"a": [(0, 1)]})
        with pytest.raises(ProductError):
            hom_transport_check(D, D, build_indicator(3, 7))


class TestCartesian:
    def test_square(self):
        G = cartesian(path_graph(2), path_graph(2))
        assert G.n == 4 and G.is_regular(2)

    def test_counts(self):
        G, H = cycle_graph(5), path_graph(3)
        P = cartesian(G, H)
        assert P.num_edges() == H.n * G.num_edges() + H.num_edges() * G.n
        assert P.has_edge(pair_index(5, 1, 0), pair_index(5, 1, 1))

    def test_variant_layers(self):
        G1 = cycle_graph(4)
        G2 = Graph(4, [(0, 2), (1, 3)])
        P = cartesian_variant(G1, G2, [1, 2], path_graph(2))
        assert degrees(P) == [3, 3, 3, 3, 2, 2, 2, 2]

    def test_variant_errors(self):
        with pytest.raises(ProductError):
            cartesian_variant(cycle_graph(4), cycle_graph(5), [1], Graph(1))
        with pytest.raises(ProductError):
            cartesian_variant(cycle_graph(4), cycle_graph(4), [3], Graph(1))

    def test_add_edges(self):
        G = add_edges(path_graph(3), [(0, 2)])
        assert G.is_regular(2)
        with pytest.raises(ProductError):
            add_edges(G, [(0, 1)])
