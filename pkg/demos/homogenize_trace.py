"""Degree trace of the homogenization stages for the two-element monoid {1, e}."""

from rigidgraphs.homogenize import homogenize, stages
from rigidgraphs.homsearch import enumerate_homs
from rigidgraphs.monoids import idempotent_monoid

m = idempotent_monoid()
top = homogenize(m)
for st in stages(top):
    ends = enumerate_homs(st.system, st.system, limit=m.n + 1)
    print(f"{st.stage}: {st.n} vertices, degrees {sorted(set(st.degrees()))}, |End| = {len(ends)}")
