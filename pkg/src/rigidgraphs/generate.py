"""Exhaustive generation of connected d-regular graphs, one per isomorphism class.

Graphs are grown one vertex at a time: the unfinished vertex of largest
degree (smallest index on ties) receives all of its missing neighbours at
once, chosen among unfinished vertices and, interchangeably, the untouched
ones.  Partial graphs are reduced to one representative per isomorphism class
with nauty certificates; this is safe because isomorphic partial graphs have
isomorphic sets of completions.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterator

import pynauty

from .core import Graph, iter_bits


@dataclass(frozen=True)
class SearchSpec:
    d: int
    n_min: int
    n_max: int
    girth: int | None = None        # lower bound on the girth
    predicate: str = "rigid"        # "rigid" or "asymmetric"

    def __post_init__(self):
        if self.d < 3:
            raise ValueError("d must be at least 3")
        if self.predicate not in ("rigid", "asymmetric"):
            raise ValueError("predicate must be 'rigid' or 'asymmetric'")

    def orders(self) -> list[int]:
        return [n for n in range(max(self.n_min, self.d + 1), self.n_max + 1) if n * self.d % 2 == 0]


def certificate(n: int, rows) -> bytes:
    adj = {v: list(iter_bits(rows[v])) for v in range(n)}
    return pynauty.certificate(pynauty.Graph(n, adjacency_dict=adj))


def automorphism_group_order(g: Graph) -> int:
    adj = {v: list(iter_bits(g.rows[v])) for v in range(g.n)}
    _, grpsize1, grpsize2, _, _ = pynauty.autgrp(pynauty.Graph(g.n, adjacency_dict=adj))
    return round(grpsize1 * 10 ** grpsize2)


def _too_close(rows, a: int, b: int, limit: int) -> bool:
    """Is dist(a, b) < limit in the current partial graph?"""
    if limit <= 1:
        return False
    seen = 1 << a
    frontier = 1 << a
    for _ in range(limit - 1):
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        nxt &= ~seen
        if (nxt >> b) & 1:
            return True
        if not nxt:
            return False
        seen |= nxt
        frontier = nxt
    return False


def generate_regular(n: int, d: int, girth: int | None = None, deadline: float | None = None) -> Iterator[Graph]:
    """Connected d-regular graphs on n vertices (girth >= ``girth`` if given)."""
    if n * d % 2 or n <= d:
        return
    g_min = girth or 3
    start_rows = [0] * n
    # state: (rows, degrees, number of touched vertices); vertex 0 is touched first
    level = {b"": (tuple(start_rows), (0,) * n, 1)}
    finals: dict[bytes, Graph] = {}
    while level:
        nxt_level: dict[bytes, tuple] = {}
        for rows, deg, used in level.values():
            if deadline is not None and time.monotonic() > deadline:
                raise TimeoutError("generation budget exhausted")
            open_ = [v for v in range(used) if deg[v] < d]
            if not open_:
                if used == n:
                    cert = certificate(n, rows)
                    if cert not in finals:
                        finals[cert] = Graph.from_rows(rows)
                # otherwise a finished component with untouched vertices left
                continue
            v = max(open_, key=lambda x: (deg[x], -x))
            need = d - deg[v]
            pool = [u for u in open_ if u != v and not (rows[v] >> u) & 1]
            fresh = n - used
            for j in range(min(need, fresh), -1, -1):
                if need - j > len(pool):
                    continue
                new_vertices = list(range(used, used + j))
                for old in itertools.combinations(pool, need - j):
                    r = list(rows)
                    dg = list(deg)
                    ok = True
                    for u in old:
                        if _too_close(r, v, u, g_min - 1):
                            ok = False
                            break
                        r[v] |= 1 << u
                        r[u] |= 1 << v
                        dg[u] += 1
                    if not ok:
                        continue
                    for u in new_vertices:
                        r[v] |= 1 << u
                        r[u] |= 1 << v
                        dg[u] += 1
                    dg[v] = d
                    cert = certificate(n, r)
                    if cert not in nxt_level:
                        nxt_level[cert] = (tuple(r), tuple(dg), used + j)
        level = nxt_level
    for cert in sorted(finals):
        yield finals[cert]


@dataclass
class OrderVerdict:
    n: int
    graphs: int | None
    witness: str | None
    status: str            # "found", "none", "skipped"


def search_nu(d: int, n_max: int, predicate: str = "rigid", n_min: int | None = None,
              girth: int | None = None, budget: float | None = None, stop_at_first: bool = True) -> list[OrderVerdict]:
    """Per order n: does a connected d-regular graph with the predicate exist?"""
    from .core import emit_g6
    from .homsearch import is_asymmetric, is_rigid
    spec = SearchSpec(d, n_min or d + 1, n_max, girth, predicate)
    test = is_rigid if predicate == "rigid" else (lambda g: automorphism_group_order(g) == 1)
    deadline = None if budget is None else time.monotonic() + budget
    out = []
    for n in spec.orders():
        try:
            count = 0
            witness = None
            for g in generate_regular(n, d, girth, deadline):
                count += 1
                if witness is None and test(g):
                    witness = emit_g6(g)
            out.append(OrderVerdict(n, count, witness, "found" if witness else "none"))
        except TimeoutError:
            out.append(OrderVerdict(n, None, None, "skipped"))
            break
        if witness and stop_at_first:
            break
    return out


def disconnected_bound(verdicts: list[OrderVerdict]) -> int | None:
    """Smallest order at which a disconnected example could exist.

    A disconnected rigid (or asymmetric) regular graph needs at least two
    components, each itself an example of smaller order.
    """
    first = next((v.n for v in verdicts if v.status == "found"), None)
    return None if first is None else 2 * first


def count_cubic(n: int) -> int:
    return sum(1 for _ in generate_regular(n, 3))
