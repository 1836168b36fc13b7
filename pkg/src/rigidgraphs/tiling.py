"""Recursive g-tiling graphs G(g, i), their antipodal involution, and tiling factors.

Planarity is tracked combinatorially: the border is kept as a circular vertex
list and every bounded face as a vertex cycle.  No geometric embedding is ever
computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Graph, bfs_distances, components, iter_bits, odd_girth


class TilingError(RuntimeError):
    """A tiling invariant failed; the message names the face or vertex."""


@dataclass(frozen=True)
class TilingGraph:
    g: int
    i: int
    graph: Graph
    border: tuple[int, ...]
    faces: tuple[tuple[int, ...], ...]
    antipode: tuple[int, ...]
    new_vertices: frozenset = field(default_factory=frozenset)

    @property
    def n(self) -> int:
        return self.graph.n

    def border_degree2(self) -> list[int]:
        return [v for v in self.border if self.graph.degree(v) == 2]

    def interior(self) -> list[int]:
        on_border = set(self.border)
        return [v for v in range(self.n) if v not in on_border]


class _Builder:
    def __init__(self, g: int):
        self.g = g
        self.adj: list[set[int]] = []
        self.antipode: list[int] = []

    def add_vertex(self) -> int:
        self.adj.append(set())
        self.antipode.append(-1)
        return len(self.adj) - 1

    def add_edge(self, u: int, v: int) -> None:
        if u == v or v in self.adj[u]:
            raise TilingError(f"bad edge {(u, v)}")
        self.adj[u].add(v)
        self.adj[v].add(u)

    def graph(self) -> Graph:
        return Graph(len(self.adj), [(u, v) for u in range(len(self.adj)) for v in self.adj[u] if u < v])


def base_tiling(g: int) -> tuple[_Builder, list[int], list[tuple[int, ...]]]:
    """Two g-gons sharing the edge {a, b}; the antipode swaps a and b."""
    if g < 7 or g % 2 == 0:
        raise ValueError("g must be an odd integer >= 7")
    b = _Builder(g)
    a_, b_ = b.add_vertex(), b.add_vertex()
    p = [b.add_vertex() for _ in range(g - 2)]
    q = [b.add_vertex() for _ in range(g - 2)]
    b.add_edge(a_, b_)
    for chain, start, end in ((p, a_, b_), (q, b_, a_)):
        b.add_edge(start, chain[0])
        for x, y in zip(chain, chain[1:]):
            b.add_edge(x, y)
        b.add_edge(chain[-1], end)
    b.antipode[a_], b.antipode[b_] = b_, a_
    for x, y in zip(p, q):
        b.antipode[x], b.antipode[y] = y, x
    border = [a_] + p + [b_] + q
    faces = [tuple([a_] + p + [b_]), tuple([b_] + q + [a_])]
    return b, border, faces


def _grow(b: _Builder, border: list[int], faces: list[tuple[int, ...]]):
    g = b.g
    m = len(border)
    deg = [len(s) for s in b.adj]
    start = next((k for k in range(m) if deg[border[k]] == 3), None)
    if start is None:
        raise TilingError("border has no degree-3 vertex")
    cyc = border[start:] + border[:start]
    # maximal runs of degree-2 vertices, in circular order
    runs: list[list[int]] = []
    stretches: list[list[int]] = []
    k = 0
    while k < m:
        if deg[cyc[k]] == 2:
            run = []
            while k < m and deg[cyc[k]] == 2:
                run.append(cyc[k])
                k += 1
            runs.append(run)
        else:
            stretch = []
            while k < m and deg[cyc[k]] == 3:
                stretch.append(cyc[k])
                k += 1
            stretches.append(stretch)
    # cyc starts with a degree-3 stretch: stretches[j] precedes runs[j]
    if len(runs) != len(stretches) or not runs:
        raise TilingError("border runs and stretches do not alternate")
    r = len(runs)
    leaf: dict[int, int] = {}
    for run in runs:
        for x in {run[0], run[-1]}:
            leaf[x] = b.add_vertex()
            b.add_edge(x, leaf[x])
    chains: dict[int, list[int]] = {}
    new_faces = []
    for j in range(r):
        y = runs[j - 1][-1]
        x = runs[j][0]
        stretch = stretches[j]
        length = len(stretch) + 1
        subdiv = g - length - 3
        if subdiv < 0:
            raise TilingError(f"face beyond border vertex {y} would exceed {g} vertices")
        chain = [b.add_vertex() for _ in range(subdiv)]
        path = [leaf[y]] + chain + [leaf[x]]
        for s, t in zip(path, path[1:]):
            b.add_edge(s, t)
        chains[y] = chain
        face = [y] + stretch + [x] + path[::-1]
        if len(face) != g:
            raise TilingError(f"new face at {x} has {len(face)} vertices")
        new_faces.append(tuple(face))
    for x, lx in leaf.items():
        b.antipode[lx] = leaf[b.antipode[x]]
    for y, chain in chains.items():
        for s, t in zip(chain, chains[b.antipode[y]]):
            b.antipode[s] = t
    new_border: list[int] = []
    for j in range(r):
        run = runs[j]
        if len(run) == 1:
            new_border.append(leaf[run[0]])
        else:
            new_border.extend([leaf[run[0]]] + run + [leaf[run[-1]]])
        new_border.extend(chains[run[-1]])
    return new_border, faces + new_faces, set(leaf.values()) | {v for c in chains.values() for v in c}


def tiling_step(t: TilingGraph) -> TilingGraph:
    """G(g, i) -> G(g, i+1)."""
    b = _Builder(t.g)
    b.adj = [set(t.graph.neighbors(v)) for v in range(t.n)]
    b.antipode = list(t.antipode)
    border, faces, new = _grow(b, list(t.border), list(t.faces))
    out = TilingGraph(t.g, t.i + 1, b.graph(), tuple(border), tuple(faces), tuple(b.antipode),
                      frozenset(new))
    check_tiling(out)
    return out


def build_tiling(g: int, i: int) -> TilingGraph:
    if i < 1:
        raise ValueError("i must be >= 1")
    b, border, faces = base_tiling(g)
    t = TilingGraph(g, 1, b.graph(), tuple(border), tuple(faces), tuple(b.antipode),
                    frozenset(range(len(b.adj))))
    check_tiling(t)
    for _ in range(i - 1):
        t = tiling_step(t)
    return t


def check_tiling(t: TilingGraph) -> None:
    """Raise ``TilingError`` naming the first violated invariant."""
    G, g = t.graph, t.g
    for f in t.faces:
        if len(f) != g or len(set(f)) != g:
            raise TilingError(f"face {f} does not have {g} distinct vertices")
        for x, y in zip(f, f[1:] + f[:1]):
            if not G.has_edge(x, y):
                raise TilingError(f"face {f} uses non-edge {(x, y)}")
    border = t.border
    if len(border) % 2 or len(set(border)) != len(border):
        raise TilingError("border is not an even simple cycle")
    for x, y in zip(border, border[1:] + border[:1]):
        if not G.has_edge(x, y):
            raise TilingError(f"border uses non-edge {(x, y)}")
    on_border = set(border)
    for v in range(G.n):
        d = G.degree(v)
        if d not in (2, 3) or (v not in on_border and d != 3):
            raise TilingError(f"vertex {v} has degree {d}")
    # every edge lies on exactly two faces (the unbounded one counted via the border)
    count: dict[tuple[int, int], int] = {}
    for f in list(t.faces) + [tuple(border)]:
        for x, y in zip(f, f[1:] + f[:1]):
            e = (min(x, y), max(x, y))
            count[e] = count.get(e, 0) + 1
    for e in G.edges():
        if count.get(e) != 2:
            raise TilingError(f"edge {e} lies on {count.get(e, 0)} faces")
    anti = t.antipode
    half = len(border) // 2
    pos = {v: k for k, v in enumerate(border)}
    for v in range(G.n):
        if anti[v] < 0 or anti[anti[v]] != v:
            raise TilingError(f"antipode is not an involution at {v}")
        if G.degree(anti[v]) != G.degree(v) or {anti[u] for u in G.neighbors(v)} != set(G.neighbors(anti[v])):
            raise TilingError(f"antipode is not an automorphism at {v}")
    for v in border:
        if border[(pos[v] + half) % len(border)] != anti[v]:
            raise TilingError(f"antipode does not send border vertex {v} to its border antipode")
    # Euler: V - E + F = 2 with F = bounded faces + 1
    if G.n - G.num_edges() + len(t.faces) + 1 != 2:
        raise TilingError("Euler characteristic mismatch")


def girth(G: Graph) -> int | None:
    best = None
    for s in range(G.n):
        dist = {s: 0}
        parent = {s: -1}
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for u in iter_bits(G.rows[v]):
                    if u not in dist:
                        dist[u] = dist[v] + 1
                        parent[u] = v
                        nxt.append(u)
                    elif parent[v] != u:
                        c = dist[u] + dist[v] + 1
                        if best is None or c < best:
                            best = c
            frontier = nxt
            if best is not None and frontier and 2 * dist[frontier[0]] - 1 > best:
                break
    return best


# ---------------------------------------------------------------- tiling factors

def default_h(g: int) -> int:
    h = (g + 1) // 2
    return h if h % 2 else h + 1


def _distance_rows(G: Graph, sources) -> dict[int, list[int]]:
    return {s: bfs_distances(G, s) for s in sources}


def _dist(d: list, v: int) -> float:
    x = d[v]
    return float("inf") if x is None else x


def antipode_spread(t: TilingGraph) -> int | None:
    """min over border x of dist(x, -x); condition (iv) asks for at least g."""
    best = None
    for x in t.border:
        d = _dist(bfs_distances(t.graph, x), t.antipode[x])
        if best is None or d < best:
            best = d
    return best


def interior_connected(t: TilingGraph) -> bool:
    """Condition (viii)."""
    inner = t.interior()
    if not inner:
        return False
    return len(components(t.graph.induced(inner))) == 1


def faces_have_interior(t: TilingGraph) -> bool:
    """Condition (vii): every g-cycle (= bounded face) has an interior vertex."""
    on_border = set(t.border)
    return all(any(v not in on_border for v in f) for f in t.faces)


def _fixes_pair_only_trivially(auts, u0: int, u1: int) -> bool:
    n = len(auts[0]) if auts else 0
    ident = tuple(range(n))
    for a in auts:
        if a != ident and {a[u0], a[u1]} == {u0, u1}:
            return False
    return True


def find_U(t: TilingGraph, h: int | None = None, auts=None) -> list[int] | None:
    """Pick U = [u_0, ..., u_{2h-1}] satisfying (v) and (vi), or None.

    Greedy in increasing vertex order with backtracking.  ``auts`` defaults to
    the automorphism group found by the engine.
    """
    g = t.g
    if h is None:
        h = default_h(g)
    if h % 2 == 0 or 2 * h < g + 1:
        raise ValueError("h must be odd and at least (g+1)/2")
    G, anti = t.graph, t.antipode
    cands = sorted(t.border_degree2())
    dist = _distance_rows(G, cands)
    cands = [x for x in cands if _dist(dist[x], anti[x]) >= g]
    if auts is None:
        from .homsearch import automorphisms
        auts = automorphisms(G)

    def far(x, chosen):
        return all(_dist(dist[x], y) >= g for y in chosen)

    chosen: list[int] = []   # u_0 .. u_{k-1}; antipodes implied

    def rec() -> bool:
        k = len(chosen)
        if k == h:
            return True
        used = chosen + [anti[y] for y in chosen]
        for x in cands:
            if x in used or not far(x, used) or not far(anti[x], used):
                continue
            chosen.append(x)
            if k == 1 and not _fixes_pair_only_trivially(auts, chosen[0], chosen[1]):
                chosen.pop()
                continue
            if rec():
                return True
            chosen.pop()
        return False

    if not rec():
        return None
    return chosen + [anti[x] for x in chosen]


@dataclass(frozen=True)
class TilingFactor:
    tiling: TilingGraph
    T: Graph
    Tprime: Graph
    Tbar: Graph
    u: tuple[int, ...]
    h: int

    @property
    def g(self) -> int:
        return self.tiling.g

    def straight_edges(self) -> list[tuple[int, int]]:
        t = self.tiling
        return sorted({(min(x, t.antipode[x]), max(x, t.antipode[x])) for x in t.border_degree2()})

    def twisted_edges(self) -> list[tuple[int, int]]:
        u = self.u
        return [(u[2 * i], u[2 * i + 1]) for i in range(self.h)]


def build_factor(t: TilingGraph, U) -> TilingFactor:
    g = t.g
    if len(U) % 2 or len(U) // 2 % 2 == 0:
        raise ValueError("U must have 2h vertices with h odd")
    h = len(U) // 2
    G, anti = t.graph, t.antipode
    deg2 = set(t.border_degree2())
    for k, x in enumerate(U):
        if x not in deg2:
            raise ValueError(f"u_{k} = {x} is not a degree-2 border vertex")
    for k in range(h):
        if U[k + h] != anti[U[k]]:
            raise ValueError(f"u_{k + h} is not the antipode of u_{k}")
    for a in range(2 * h):
        d = bfs_distances(G, U[a])
        for b in range(a + 1, 2 * h):
            if _dist(d, U[b]) < g:
                raise ValueError(f"u_{a} and u_{b} are closer than {g}")
    base = list(G.edges())
    straight = sorted({(min(x, anti[x]), max(x, anti[x])) for x in deg2})
    in_u = set(U)
    twisted = [(U[2 * i], U[2 * i + 1]) for i in range(h)]
    T = Graph(G.n, base + [e for e in straight if e[0] not in in_u] + twisted[1:])
    Tp = Graph(G.n, base + straight)
    Tbar = Graph(G.n, base + straight + twisted)
    return TilingFactor(t, T, Tp, Tbar, tuple(U), h)


def factor_for(g: int, i_max: int = 12, h: int | None = None) -> TilingFactor:
    """The factor from the first G(g, i) admitting a valid U."""
    t = build_tiling(g, 1)
    while True:
        if tiling_accepts(t):
            U = find_U(t, h)
            if U is not None:
                return build_factor(t, U)
        if t.i >= i_max:
            raise TilingError(f"no tiling factor for g={g} up to i={i_max}")
        t = tiling_step(t)


def tiling_accepts(t: TilingGraph) -> bool:
    """Conditions (iv), (vii), (viii) on the tiling graph itself."""
    spread = antipode_spread(t)
    return spread is not None and spread >= t.g and faces_have_interior(t) and interior_connected(t)


def u_spread_check(f: TilingFactor) -> bool:
    """Twisted edges are not bypassed by paths shorter than g, and every
    shortest odd cycle of Tbar has length g and lies in G."""
    g = f.g
    Tb = f.Tbar
    for a, b in f.twisted_edges():
        H = Graph(Tb.n, [e for e in Tb.edges() if e != (min(a, b), max(a, b))])
        if _dist(bfs_distances(H, a), b) < g:
            return False
    if odd_girth(Tb) != g:
        return False
    from .homsearch import odd_cycles
    G = f.tiling.graph
    for cyc in odd_cycles(Tb, g):
        for x, y in zip(cyc, cyc[1:] + cyc[:1]):
            if not G.has_edge(x, y):
                return False
    return True
