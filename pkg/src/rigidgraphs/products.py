"""Šíp products (arc replacement by indicators) and Cartesian products.

Vertex numbering is fixed: in a šíp product the vertices of D come first, then
one gadget copy per arc in (colour, arc) order.  In a Cartesian product the
pair (x, u) gets index ``u * |V(G)| + x``, so each H-vertex owns a contiguous
layer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Digraph, Graph, Indicator, RelSystem, as_system


class ProductError(ValueError):
    pass


@dataclass(frozen=True)
class SipProduct:
    result: object                  # Graph for sip, Digraph for sip_vec
    base: RelSystem
    indicators: tuple[Indicator, ...]
    copies: tuple[tuple[str, tuple[int, int], int], ...]   # (colour, arc, first vertex)

    def copy_index(self) -> dict:
        return {(c, a): start for c, a, start in self.copies}

    def copy_range(self, colour: str, arc: tuple[int, int]) -> range:
        k = self.base.colours.index(colour)
        start = self.copy_index()[(colour, arc)]
        return range(start, start + self.indicators[k].n)


def _system(D) -> RelSystem:
    return D if isinstance(D, RelSystem) else as_system(D)


def _gadget_arcs(ind: Indicator) -> list[tuple[int, int]]:
    c = ind.carrier
    return c.edges() if isinstance(c, Graph) else c.arcs()


def _layout(D: RelSystem, S) -> tuple[list, int]:
    if len(S) != len(D.colours):
        raise ProductError(f"{len(D.colours)} colours but {len(S)} indicators")
    copies = []
    offset = D.n
    for k, c in enumerate(D.colours):
        for a in D.arcs[c]:
            copies.append((c, tuple(a), offset))
            offset += S[k].n
    return copies, offset


def sip(D, S) -> SipProduct:
    """Undirected šíp product; every indicator must be a graph."""
    D = _system(D)
    S = tuple(S) if isinstance(S, (list, tuple)) else (S,)
    for ind in S:
        if not ind.is_symmetric():
            raise ProductError("sip needs symmetric (graph) indicators")
    copies, n = _layout(D, S)
    edges = []
    k_of = {c: k for k, c in enumerate(D.colours)}
    for c, (x, y), start in copies:
        ind = S[k_of[c]]
        edges += [(start + u, start + v) for u, v in _gadget_arcs(ind)]
        edges += [(x, start + ind.in_), (y, start + ind.out)]
    return SipProduct(Graph(n, edges), D, S, tuple(copies))


def sip_vec(D, S) -> SipProduct:
    """Directed šíp product; every indicator must be an oriented graph."""
    D = _system(D)
    S = tuple(S) if isinstance(S, (list, tuple)) else (S,)
    for ind in S:
        c = ind.carrier
        if not isinstance(c, Digraph) or not c.is_oriented():
            raise ProductError("sip_vec needs oriented indicators")
    copies, n = _layout(D, S)
    arcs = []
    k_of = {c: k for k, c in enumerate(D.colours)}
    for c, (x, y), start in copies:
        ind = S[k_of[c]]
        arcs += [(start + u, start + v) for u, v in _gadget_arcs(ind)]
        arcs += [(x, start + ind.in_), (start + ind.out, y)]
    return SipProduct(Digraph(n, arcs), D, S, tuple(copies))


def transport(phi, P: SipProduct, Q: SipProduct) -> tuple[int, ...]:
    """The map phi * S from P = D * S to Q = D' * S induced by phi in Hom(D, D')."""
    out = list(phi) + [0] * (P.result.n - P.base.n)
    qidx = Q.copy_index()
    k_of = {c: k for k, c in enumerate(P.base.colours)}
    for c, (x, y), start in P.copies:
        target = qidx[(c, (phi[x], phi[y]))]
        for v in range(P.indicators[k_of[c]].n):
            out[start + v] = target + v
    return tuple(out)


@dataclass(frozen=True)
class TransportReport:
    base_count: int
    product_count: int
    all_transported: bool

    @property
    def ok(self) -> bool:
        return self.all_transported and self.base_count == self.product_count


def hom_transport_check(D, D2, S, directed: bool = False, budget=None) -> TransportReport:
    """Compare Hom(D, D') with Hom(D*S, D'*S) through phi -> phi*S."""
    from .homsearch import enumerate_homs
    D, D2 = _system(D), _system(D2)
    if D.colours != D2.colours:
        raise ProductError("both systems must use the same colour list")
    for X in (D, D2):
        if any(X.indegree(v) == 0 or X.outdegree(v) == 0 for v in range(X.n)):
            raise ProductError("systems need minimum in- and outdegree at least 1")
    build = sip_vec if directed else sip
    P, Q = build(D, S), build(D2, S)
    base = enumerate_homs(D, D2, budget=budget)
    prod = enumerate_homs(P.result, Q.result, budget=budget)
    images = {transport(phi, P, Q) for phi in base}
    return TransportReport(len(base), len(prod), images == set(prod))


# ---------------------------------------------------------------- Cartesian products

def cartesian(G: Graph, H: Graph) -> Graph:
    return cartesian_variant(G, G, [1] * H.n, H)


def cartesian_variant(G1: Graph, G2: Graph, f, H: Graph) -> Graph:
    """Layer u of the product is a copy of G_{f(u)}; layers are joined along E(H)."""
    if G1.n != G2.n:
        raise ProductError("the two factors must share a vertex set")
    f = list(f)
    if len(f) != H.n or any(x not in (1, 2) for x in f):
        raise ProductError("f must map every vertex of H to 1 or 2")
    n = G1.n
    edges = []
    for u in range(H.n):
        G = G1 if f[u] == 1 else G2
        edges += [(u * n + x, u * n + y) for x, y in G.edges()]
    for u, v in H.edges():
        edges += [(u * n + x, v * n + x) for x in range(n)]
    return Graph(n * H.n, edges)


def pair_index(nG: int, x: int, u: int) -> int:
    return u * nG + x


def add_edges(G: Graph, extra) -> Graph:
    extra = [tuple(e) for e in extra]
    for u, v in extra:
        if G.has_edge(u, v):
            raise ProductError(f"edge {(u, v)} already present")
    return Graph(G.n, G.edges() + extra)
