import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidgraphs.core import (
    ByteRangeError,
    Digraph,
    FormatError,
    Graph,
    HeaderError,
    Indicator,
    LengthError,
    RelSystem,
    bfs_distances,
    complete_graph,
    components,
    cycle_graph,
    degrees,
    directed_cycle,
    dist,
    emit_d6,
    emit_g6,
    emit_system,
    is_connected,
    odd_girth,
    parse_d6,
    parse_g6,
    parse_system,
    path_graph,
    petersen_graph,
    shortest_odd_dicycle,
    vertex_odd_girths,
)
from rigidgraphs.monoids import cayley_col, cyclic_group

from oracles import brute_distances, brute_odd_dicycle, brute_odd_girth, random_digraph, random_graph


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


@st.composite
def digraphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Digraph(n, chosen, allow_loops=True)


class TestGraph:
    def test_basic(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 0)])
        assert g.degree(0) == 2 and g.degree(3) == 0
        assert g.has_edge(1, 0)
        assert g.edges() == [(0, 1), (0, 2), (1, 2)]

    def test_rejects_loops_and_range(self):
        with pytest.raises(ValueError):
            Graph(2, [(0, 0)])
        with pytest.raises(ValueError):
            Graph(2, [(0, 2)])

    def test_complement_degrees(self):
        g = parse_g6("MCHY@e??KOCBOC?g_")
        assert g.complement().is_regular(14 - 3 - 1)

    @given(graphs())
    def test_degree_sum(self, g):
        assert sum(degrees(g)) == 2 * g.num_edges()


class TestDigraph:
    def test_loop_counts_twice(self):
        d = Digraph(2, [(0, 0), (0, 1)], allow_loops=True)
        assert degrees(d) == [3, 1]

    def test_loops_need_flag(self):
        with pytest.raises(ValueError):
            Digraph(1, [(0, 0)])

    @given(digraphs())
    def test_in_out_sums(self, d):
        assert sum(d.indegree(v) for v in range(d.n)) == d.num_arcs()
        assert sum(d.outdegree(v) for v in range(d.n)) == d.num_arcs()


class TestRelSystem:
    def test_duplicate_colour(self):
        with pytest.raises(ValueError):
            RelSystem(2, ["a", "a"])

    def test_total_degree(self):
        s = RelSystem(2, ["a", "b"], {"a": [(0, 1)], "b": [(0, 0)]})
        assert degrees(s) == [3, 1]

    def test_induced(self):
        s = RelSystem(3, ["a"], {"a": [(0, 1), (1, 2)]})
        assert s.induced_on([1, 2]).arcs["a"] == ((0, 1),)


def test_indicator_validation():
    g = path_graph(3)
    with pytest.raises(ValueError):
        Indicator(g, 1, 1)
    with pytest.raises(ValueError):
        Indicator(g, 0, 5)
    assert Indicator(g, 0, 2).n == 3


class TestG6:
    def test_fig1_code(self):
        g = parse_g6("MCHY@e??KOCBOC?g_")
        assert g.n == 14 and g.is_regular(3)

    def test_quartic_code(self):
        g = parse_g6("I}hP?sM@w")
        assert g.n == 10 and g.is_regular(4)

    def test_small(self):
        assert emit_g6(Graph(1)) == "@"
        assert emit_g6(Graph(0)) == "?"

    def test_header_accepted(self):
        assert parse_g6(">>graph6<<I}hP?sM@w") == parse_g6("I}hP?sM@w")

    def test_errors_are_distinct(self):
        with pytest.raises(LengthError):
            parse_g6("MCHY@e??KOCBOC?g_x")
        with pytest.raises(LengthError):
            parse_g6("MCHY@e??KOC")
        with pytest.raises(ByteRangeError):
            parse_g6("M abc")
        with pytest.raises(HeaderError):
            parse_g6("&C??")
        assert issubclass(LengthError, FormatError)

    @given(graphs(max_n=70))
    @settings(max_examples=200)
    def test_round_trip(self, g):
        code = emit_g6(g)
        assert parse_g6(code) == g
        assert emit_g6(parse_g6(code)) == code

    def test_large_order_header(self):
        g = cycle_graph(100)
        assert parse_g6(emit_g6(g)) == g


class TestD6:
    @given(digraphs(max_n=12))
    @settings(max_examples=150)
    def test_round_trip(self, d):
        assert parse_d6(emit_d6(d)) == d

    def test_needs_ampersand(self):
        with pytest.raises(HeaderError):
            parse_d6("C??")


class TestSystemJSON:
    def test_empty(self):
        assert emit_system(RelSystem(3, [])) == '{"arcs":{},"colours":[],"n":3}'

    def test_loop_round_trip(self):
        s = RelSystem(1, ["a"], {"a": [(0, 0)]})
        assert parse_system(emit_system(s)) == s

    def test_cayley_fixpoint(self):
        text = emit_system(cayley_col(cyclic_group(2)))
        assert emit_system(parse_system(text)) == text

    @pytest.mark.parametrize("text", ['{"n": 2}', "[1]", '{"n": 2, "colours": ["a"], "arcs": {"a": [[0]]}}',
                                      '{"n": 2, "colours": ["a"], "arcs": {"b": []}}', "{"])
    def test_malformed(self, text):
        with pytest.raises(FormatError):
            parse_system(text)

    def test_random_round_trip(self):
        rng = random.Random(5)
        for _ in range(500):
            n = rng.randint(0, 5)
            cols = [f"c{k}" for k in range(rng.randint(0, 3))]
            s = RelSystem(n, cols, {c: [(u, v) for u in range(n) for v in range(n) if rng.random() < 0.3]
                                    for c in cols})
            assert parse_system(emit_system(s)) == s


class TestOddGirth:
    def test_examples(self):
        assert odd_girth(cycle_graph(7)) == 7
        assert odd_girth(complete_graph(2)) is None
        assert odd_girth(petersen_graph()) == 5
        assert odd_girth(Graph(0)) is None

    def test_against_brute_force(self):
        rng = random.Random(11)
        for _ in range(300):
            g = random_graph(rng, rng.randint(1, 7), rng.choice([0.2, 0.35, 0.5]))
            assert odd_girth(g) == brute_odd_girth(g)

    @given(graphs(max_n=7))
    @settings(max_examples=100, deadline=None)
    def test_property(self, g):
        assert odd_girth(g) == brute_odd_girth(g)

    def test_vertex_odd_girths(self):
        # shortest closed odd walk through each vertex: a pendant path walks out to the 5-cycle and back
        g = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6)])
        assert vertex_odd_girths(g) == [5, 5, 5, 5, 5, 7, 9, None]


class TestOddDicycle:
    def test_examples(self):
        assert shortest_odd_dicycle(directed_cycle(3)) == 3
        assert shortest_odd_dicycle(directed_cycle(4)) is None

    def test_against_brute_force(self):
        rng = random.Random(3)
        for _ in range(300):
            d = random_digraph(rng, rng.randint(1, 6), rng.choice([0.15, 0.3]))
            assert shortest_odd_dicycle(d) == brute_odd_dicycle(d)


class TestDistances:
    def test_against_brute_force(self):
        rng = random.Random(8)
        for _ in range(100):
            g = random_graph(rng, rng.randint(1, 9), 0.3)
            s = rng.randrange(g.n)
            assert bfs_distances(g, s) == brute_distances(g, s)

    def test_directed(self):
        d = directed_cycle(4)
        assert dist(d, 0, 3, directed=True) == 3
        assert dist(d, 0, 3) == 1

    def test_components(self):
        g = Graph(5, [(0, 1), (3, 4)])
        assert sorted(map(sorted, components(g))) == [[0, 1], [2], [3, 4]]
        assert not is_connected(g)
        assert is_connected(cycle_graph(5))
