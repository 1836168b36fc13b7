import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidgraphs.core import Digraph, Graph, RelSystem, complete_graph, cycle_graph, petersen_graph
from rigidgraphs.homsearch import (
    BudgetExceeded,
    HomProblem,
    Pruning,
    automorphisms,
    compose,
    count_homs,
    end_monoid,
    enumerate_homs,
    find_hom,
    is_asymmetric,
    is_core,
    is_rigid,
    monoid_iso,
    mutually_rigid,
    nonidentity_endomorphism,
    odd_cycles,
    solve,
)
from rigidgraphs.monoids import Monoid, cyclic_group, idempotent_monoid

from oracles import naive_homs, random_digraph, random_graph, random_system

ALL_TOGGLES = [Pruning(*bits) for bits in itertools.product([False, True], repeat=4)]


def random_pair(rng, kind):
    n1, n2 = rng.randint(1, 5), rng.randint(1, 5)
    if kind == "graph":
        return random_graph(rng, n1, rng.random()), random_graph(rng, n2, rng.random())
    if kind == "digraph":
        return (random_digraph(rng, n1, rng.random() * 0.6, loops=True),
                random_digraph(rng, n2, rng.random() * 0.6, loops=True))
    return random_system(rng, n1, p=rng.random() * 0.5), random_system(rng, n2, p=rng.random() * 0.5)


class TestAgainstNaive:
    @pytest.mark.parametrize("kind", ["graph", "digraph", "system"])
    def test_random_pairs(self, kind):
        rng = random.Random(sum(map(ord, kind)))
        for _ in range(120):
            a, b = random_pair(rng, kind)
            assert enumerate_homs(a, b) == naive_homs(a, b)

    def test_toggles_do_not_change_solutions(self):
        rng = random.Random(17)
        for _ in range(60):
            a, b = random_pair(rng, rng.choice(["graph", "digraph", "system"]))
            want = naive_homs(a, b)
            for pr in ALL_TOGGLES:
                assert enumerate_homs(a, b, pruning=pr) == want

    def test_injective_mode(self):
        rng = random.Random(2)
        for _ in range(80):
            a, b = random_pair(rng, "graph")
            res = solve(HomProblem(a, b, injective=True)).solutions
            assert res == naive_homs(a, b, injective=True)

    @given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2 ** 32))
    @settings(max_examples=60, deadline=None)
    def test_count_matches_enumerate(self, n1, n2, seed):
        rng = random.Random(seed)
        a, b = random_graph(rng, n1, 0.5), random_graph(rng, n2, 0.6)
        assert count_homs(a, b) == len(naive_homs(a, b))


class TestModes:
    def test_limit(self):
        homs = enumerate_homs(cycle_graph(5), complete_graph(3), limit=4)
        assert len(homs) == 4
        assert homs == enumerate_homs(cycle_graph(5), complete_graph(3))[:4]

    def test_find_first_respects_fixed(self):
        f = find_hom(cycle_graph(5), complete_graph(3), fixed={0: 2})
        assert f[0] == 2

    def test_no_hom_odd_cycle_to_bipartite(self):
        assert find_hom(cycle_graph(5), cycle_graph(4)) is None

    def test_colour_mismatch(self):
        a = RelSystem(2, ["a"], {"a": [(0, 1)]})
        b = RelSystem(2, ["b"], {"b": [(0, 1)]})
        assert enumerate_homs(a, b) == []

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            HomProblem(Graph(1), Graph(1), mode="nope")

    def test_budget(self):
        big = Graph(30, [(u, v) for u in range(30) for v in range(u + 1, 30) if (u * v) % 3])
        with pytest.raises(BudgetExceeded):
            count_homs(big, complete_graph(8), budget=0.05)

    def test_predicate_filters(self):
        p = HomProblem(cycle_graph(4), cycle_graph(4), predicate=lambda s: s[0] == 0)
        assert all(s[0] == 0 for s in solve(p).solutions)


class TestJobs:
    def test_jobs_identical(self):
        rng = random.Random(4)
        for _ in range(3):
            a, b = random_graph(rng, 5, 0.5), random_graph(rng, 6, 0.6)
            assert enumerate_homs(a, b, jobs=2) == enumerate_homs(a, b)


class TestRigidity:
    def test_petersen_not_rigid(self):
        assert not is_rigid(petersen_graph())
        assert not is_asymmetric(petersen_graph())

    def test_nonidentity_is_endomorphism(self):
        g = cycle_graph(6)
        f = nonidentity_endomorphism(g)
        assert f != tuple(range(6))
        assert all(g.has_edge(f[u], f[v]) for u, v in g.edges())

    def test_rigid_code(self):
        from rigidgraphs.core import parse_g6
        assert is_rigid(parse_g6("MCHY@e??KOCBOC?g_"))

    def test_core(self):
        assert is_core(complete_graph(4))
        assert not is_core(cycle_graph(6))
        assert is_core(cycle_graph(5))

    def test_automorphisms_of_cycle(self):
        assert len(automorphisms(cycle_graph(7))) == 14

    def test_mutually_rigid_needs_two(self):
        with pytest.raises(ValueError):
            mutually_rigid([Graph(1)])


class TestOddCycles:
    def test_five_cycle(self):
        cyc = odd_cycles(cycle_graph(5), 5)
        # each cycle appears once per start vertex and direction at most
        assert cyc and all(len(c) == 5 for c in cyc)

    def test_none_when_bipartite(self):
        assert not odd_cycles(cycle_graph(6), 3)


class TestEndMonoid:
    def test_path_end(self):
        d = Digraph(2, [(0, 1)])
        em = end_monoid(d)
        assert len(em) == 1

    def test_compose(self):
        assert compose((1, 0, 2), (2, 1, 0)) == (2, 0, 1)

    def test_cayley_recovers_monoid(self):
        from rigidgraphs.monoids import cayley_col
        for m in (cyclic_group(3), idempotent_monoid()):
            em = end_monoid(cayley_col(m))
            assert monoid_iso(em.as_monoid(), m) is not None


class TestMonoidIso:
    def test_cyclic_vs_other(self):
        c4 = cyclic_group(4)
        v4 = Monoid([[a ^ b for b in range(4)] for a in range(4)])
        assert monoid_iso(c4, v4) is None
        assert monoid_iso(c4, c4) is not None

    def test_relabelled(self):
        rng = random.Random(9)
        m = cyclic_group(5)
        for _ in range(10):
            p = list(range(5))
            rng.shuffle(p)
            inv = {p[a]: a for a in range(5)}
            t = [[p[m.table[inv[x]][inv[y]]] for y in range(5)] for x in range(5)]
            m2 = Monoid(t, p[0])
            f = monoid_iso(m, m2)
            assert f is not None
            assert all(f[m.table[a][b]] == m2.table[f[a]][f[b]] for a in range(5) for b in range(5))
