import pytest

from rigidgraphs.core import RelSystem, degrees
from rigidgraphs.homogenize import (
    HomogenizeError,
    choose_k,
    homogenize,
    stage_d1,
    stages,
    step1,
    step1_degree_formula,
    step2,
    step3,
)
from rigidgraphs.homsearch import enumerate_homs
from rigidgraphs.monoids import all_monoids, cyclic_group, idempotent_monoid, monoids_up_to_iso

from oracles import arc_sets


def is_hom(f, X):
    a = arc_sets(X)
    return all((f[u], f[v]) in a[c] for c, arcs in a.items() for u, v in arcs)


class TestStages:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_every_stage_has_exactly_M(self, n):
        for m in monoids_up_to_iso(n):
            for s in stages(homogenize(m)):
                found = enumerate_homs(s.system, s.system, limit=m.n + 1, budget=120)
                assert len(found) == m.n
                assert sorted(found) == sorted(s.endos)
                assert s.restricts_to_parent()

    @pytest.mark.parametrize("n", [2, 3])
    def test_final_degree_constant(self, n):
        for m in all_monoids(n):
            top = homogenize(m)
            assert top.is_degree_constant()
            assert all(is_hom(f, top.system) for f in top.endos)

    def test_group_is_untouched(self):
        s = homogenize(cyclic_group(3))
        assert s.stage == "D1" and s.parent is None

    def test_idempotent_trace(self):
        s = homogenize(idempotent_monoid())
        names = [x.stage for x in stages(s)]
        assert names[0] == "D1" and names[-1] == "D4"
        # the non-group monoid of order two ends up with total degree 21
        assert set(degrees(s.system)) == {21}


class TestStep1:
    def test_formula(self):
        m = idempotent_monoid()
        s1 = stage_d1(m)
        k = choose_k(s1, m)
        s2 = step1(s1, m, k)
        degs = s2.degrees()
        for v in range(s1.n):
            assert degs[v] == step1_degree_formula(s1, m, k, v)
        assert s2.degree_constant_on_classes() and s2.has_increasing_degrees()


class TestStep2:
    def test_rejects_non_ideal(self):
        m = idempotent_monoid()
        s1 = stage_d1(m)
        s2 = step1(s1, m, choose_k(s1, m))
        cs = s2.classes()
        # a class with something strictly below it is not down-closed on its own
        top = next(j for j in range(len(cs.end_classes))
                   if any(i != j and cs.leq(i, j) for i in range(len(cs.end_classes))))
        with pytest.raises(HomogenizeError):
            step2(s2, {top}, 1)

    def test_k_positive(self):
        s = stage_d1(cyclic_group(2))
        with pytest.raises(HomogenizeError):
            step2(s, set(), 0)


class TestStep3:
    def test_doubles_and_levels(self):
        s = stage_d1(cyclic_group(2))
        s3 = step3(s)
        assert s3.n == 2 * s.n
        assert s3.is_degree_constant()
        assert len(s3.endos) == 2
