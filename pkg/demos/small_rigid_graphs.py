"""Smallest rigid cubic graph, by exhaustive search, plus the stored codes."""

from rigidgraphs.core import parse_g6
from rigidgraphs.generate import search_nu
from rigidgraphs.homsearch import is_rigid
from rigidgraphs.pipeline import RIGID_CODES, nu

for v in search_nu(3, 14, predicate="rigid"):
    print(f"n={v.n:2d}  {v.graphs:4d} connected cubic graphs  {v.status}  {v.witness or ''}")

print()
for d, code in sorted(RIGID_CODES.items()):
    g = parse_g6(code)
    print(f"d={d}: {code}  order {g.n} (nu={nu(d)})  rigid={is_rigid(g)}")
