"""Regular indicators of prescribed odd girth and the hypothesis checker for
arc replacement.

``build_indicator(d, g)`` follows the recursive construction: a tiling factor
for d = 3, its variant products with K2 and with an odd cycle for d = 4, 5,
and for larger d a product with a smaller-degree rigid regular graph of larger
odd girth.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .core import Graph, Indicator, bfs_distances, cycle_graph, components, iter_bits, odd_girth, vertex_odd_girths
from .gadgets import family_F1
from .homsearch import BudgetExceeded, find_hom, is_rigid, mutually_rigid, odd_cycles
from .products import add_edges, cartesian_variant, sip
from .tiling import TilingFactor, factor_for

DEFAULT_CAP = 10**6


class IndicatorError(ValueError):
    pass


class SizeCapExceeded(IndicatorError):
    def __init__(self, estimate: int, cap: int, what: str = "indicator", exact: bool = True):
        amount = estimate if exact else f"at least {estimate}"
        super().__init__(f"{what} would have {amount} vertices, above the cap of {cap}")
        self.estimate = estimate
        self.cap = cap
        self.exact = exact


# ---------------------------------------------------------------- hypothesis report

@dataclass
class Check:
    name: str
    status: str                  # "pass", "fail" or "skipped"
    witness: object = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class IndicatorReport:
    g: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def partial(self) -> bool:
        """Nothing failed but something was skipped (budget)."""
        return not any(c.status == "fail" for c in self.checks) and any(c.status == "skipped" for c in self.checks)

    def add(self, name, ok, witness=None):
        self.checks.append(Check(name, "pass" if ok else "fail", witness))

    def lines(self) -> list[str]:
        return [f"{c.name}: {c.status}" + (f" ({c.witness})" if c.witness is not None else "") for c in self.checks]


def _underlying_graph(x) -> Graph:
    if isinstance(x, Graph):
        return x
    return Graph(x.n, {(min(u, v), max(u, v)) for u, v in x.arcs() if u != v})


def min_odd_path(G: Graph, a: int, b: int, below: int) -> int | None:
    """Length of the shortest simple a-b path of odd length < ``below``, if any."""
    dist_b = bfs_distances(G, b)
    best = None
    path_mask = 1 << a

    def dfs(v, length):
        nonlocal best, path_mask
        if v == b:
            if length % 2 and (best is None or length < best):
                best = length
            return
        limit = below if best is None else best
        for u in iter_bits(G.rows[v] & ~path_mask):
            du = dist_b[u]
            if du is None or length + 1 + du >= limit:
                continue
            path_mask |= 1 << u
            dfs(u, length + 1)
            path_mask &= ~(1 << u)

    dfs(a, 0)
    return best


def indicator_hypotheses(S, g: int, oriented: bool | None = None, budget: float | None = None) -> IndicatorReport:
    """Check hypotheses (i)-(v), with (iv') in place of (iv) for oriented indicators."""
    S = list(S) if isinstance(S, (list, tuple)) else [S]
    rep = IndicatorReport(g)
    for k, ind in enumerate(S):
        tag = f"S{k + 1}"
        U = _underlying_graph(ind.carrier)
        is_oriented = oriented if oriented is not None else not ind.is_symmetric()
        rep.add(f"{tag} (i) connected", len(components(U)) == 1)
        og = odd_girth(U)
        rep.add(f"{tag} (ii) odd girth {g}", og == g, og)
        vog = vertex_odd_girths(U)
        off = [v for v in range(U.n) if vog[v] != g]
        rep.add(f"{tag} (iii) every vertex on a {g}-cycle", not off, off[:5] or None)
        if is_oriented:
            d = bfs_distances(ind.carrier, ind.out, directed=True)[ind.in_]
            rep.add(f"{tag} (iv') directed out-in distance >= 3", d is None or d >= 3, d)
        else:
            d = bfs_distances(U, ind.out)[ind.in_]
            rep.add(f"{tag} (iv) out-in distance >= 3", d is not None and d >= 3, d)
        short = min_odd_path(U, ind.out, ind.in_, g)
        rep.add(f"{tag} (v) odd out-in paths have length >= {g}", short is None, short)
    try:
        if len(S) == 1:
            rep.add("(i) rigid", is_rigid(S[0].carrier, budget=budget))
        else:
            rep.add("(i) mutually rigid", mutually_rigid([s.carrier for s in S], budget=budget))
    except BudgetExceeded as exc:
        rep.checks.append(Check("(i) rigidity", "skipped", str(exc)))
    return rep


def degree_law(ind: Indicator, d: int) -> bool:
    G = ind.carrier
    return all(G.degree(v) == (d - 1 if v in (ind.in_, ind.out) else d) for v in range(G.n))


# ---------------------------------------------------------------- construction

@functools.lru_cache(maxsize=None)
def tiling_factor(g: int) -> TilingFactor:
    return factor_for(g)


def _size(d: int, g: int, tsize) -> int:
    t = tsize(g)
    if d == 3:
        return t
    if d == 4:
        return 2 * t
    if d == 5:
        return (2 * g + 1) * t
    F = family_F1(d - 3, 1).digraph
    return t * (F.n + F.num_arcs() * _size(d - 3, g + 2, tsize))


def estimate_size(d: int, g: int) -> int:
    """Vertex count of build_indicator(d, g) without building it."""
    _check_args(d, g)
    return _size(d, g, lambda h: tiling_factor(h).T.n)


CHEAP_FACTORS = 11   # tiling factors up to this odd girth build in well under a second


def size_lower_bound(d: int, g: int) -> int:
    """A lower bound on estimate_size that never builds a large tiling factor.

    A factor of odd girth h has at least h vertices.
    """
    _check_args(d, g)
    return _size(d, g, lambda h: tiling_factor(h).T.n if h <= CHEAP_FACTORS else h)


def _check_args(d: int, g: int) -> None:
    if d < 3:
        raise IndicatorError("d must be at least 3")
    if g < 7 or g % 2 == 0:
        raise IndicatorError("g must be odd and at least 7")


def build_indicator(d: int, g: int, cap: int = DEFAULT_CAP) -> Indicator:
    """A rigid d-indicator of odd girth g."""
    low = size_lower_bound(d, g)
    if low > cap:
        raise SizeCapExceeded(low, cap, exact=False)
    est = estimate_size(d, g)
    if est > cap:
        raise SizeCapExceeded(est, cap)
    fac = tiling_factor(g)
    T, Tp = fac.T, fac.Tprime
    u0, u1 = fac.u[0], fac.u[1]
    n = T.n
    if d == 3:
        return Indicator(T, u0, u1)
    if d == 4:
        P = cartesian_variant(T, Tp, [1, 2], Graph(2, [(0, 1)]))
        return Indicator(P, u0, u1)
    if d == 5:
        m = 2 * g + 1
        f = [2] * m
        f[0] = f[g] = 1
        P = cartesian_variant(T, Tp, f, cycle_graph(m))
        I = add_edges(P, [(u1, g * n + u0)])
        return Indicator(I, u0, g * n + u1)
    inner = build_indicator(d - 3, g + 2, cap)
    H = sip(family_F1(d - 3, 1).digraph, inner).result
    f = [2] * H.n
    f[0] = 1
    P = cartesian_variant(T, Tp, f, H)
    return Indicator(P, u0, u1)


def rigid_family(d: int, g: int, count: int, cap: int = DEFAULT_CAP) -> list[Graph]:
    """F1(d, l) * S(d, g) for l = 1..count."""
    if count < 1:
        raise IndicatorError("count must be positive")
    S = build_indicator(d, g, cap)
    return [sip(family_F1(d, ell).digraph, S).result for ell in range(1, count + 1)]


# ---------------------------------------------------------------- product facts

def min_odd_cycles_single_layer(P: Graph, layer_size: int, g: int) -> bool:
    """Every shortest odd cycle of a layered product stays in one layer."""
    if odd_girth(P) != g:
        return False
    for cyc in odd_cycles(P, g):
        if len({v // layer_size for v in cyc}) != 1:
            return False
    return True


def cross_layer_distance(P: Graph, layer_size: int, a: int, b: int) -> int:
    """min over layers v, v' of dist((a, v), (b, v'))."""
    layers = P.n // layer_size
    best = None
    for v in range(layers):
        dist = bfs_distances(P, v * layer_size + a)
        for w in range(layers):
            d = dist[w * layer_size + b]
            if d is not None and (best is None or d < best):
                best = d
    return best
