"""Regular graphs with a prescribed endomorphism monoid.

The trivial monoid and Z_2 give graphs of a few tens of thousands of
vertices; the End(G) engine certificate is skipped here to keep it quick.
"""

import sys

from rigidgraphs.indicators import SizeCapExceeded
from rigidgraphs.monoids import cyclic_group, idempotent_monoid, trivial_monoid
from rigidgraphs.pipeline import represent

cases = [("trivial", trivial_monoid()), ("Z2", cyclic_group(2))]
if "--all" in sys.argv:
    cases.append(("{1, e}", idempotent_monoid()))

for name, m in cases:
    try:
        r = represent(m, certify_end=False)
    except SizeCapExceeded as exc:
        print(f"{name}: {exc}")
        continue
    print(f"{name}: {r.n} vertices, {r.d}-regular, odd girth {r.g}, |End| = {len(r.endos)}")
    for line in r.certificates.lines():
        print("  " + line)
