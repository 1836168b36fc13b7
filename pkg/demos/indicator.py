"""Build the odd-girth-7 indicator for d = 3 and check its hypotheses,
then use it to turn a small coloured digraph into a cubic graph."""

from rigidgraphs.core import RelSystem, odd_girth
from rigidgraphs.homsearch import end_monoid
from rigidgraphs.indicators import build_indicator, indicator_hypotheses
from rigidgraphs.products import sip

S = build_indicator(3, 7)
print(f"S(3,7): {S.n} vertices")
for line in indicator_hypotheses(S, 7).lines():
    print("  " + line)

# one colour, a loop at each vertex plus an arc 0 -> 1: total degree 3 everywhere
D = RelSystem(2, ["a"], {"a": [(0, 0), (0, 1), (1, 1)]})
P = sip(D, S).result
print(f"D*S: {P.n} vertices, cubic={P.is_regular(3)}, odd girth {odd_girth(P)}")
print(f"|End(D)| = {len(end_monoid(D))}")
