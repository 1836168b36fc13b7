"""Graphs, digraphs and binary relational systems on vertices ``0..n-1``.

Adjacency is stored as bitset rows (Python ints): bit ``j`` of ``rows[i]`` is
set when ``i -> j``.  All objects are immutable after construction.
"""

from __future__ import annotations

import json
from collections import deque
from typing import Iterable, Iterator, Sequence


class FormatError(ValueError):
    """Base class for codec errors."""


class HeaderError(FormatError):
    """Malformed or truncated size header."""


class ByteRangeError(FormatError):
    """A byte outside the printable 63..126 range."""


class LengthError(FormatError):
    """Body too short, or trailing garbage after the body."""


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def popcount(x: int) -> int:
    return bin(x).count("1")


class Graph:
    """Undirected simple graph."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self.n = n
        self.rows = tuple(rows)
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        g.n = len(rows)
        g.rows = tuple(rows)
        g._hash = None
        for i, r in enumerate(g.rows):
            if (r >> i) & 1:
                raise ValueError(f"loop at {i}")
            for j in iter_bits(r):
                if not (g.rows[j] >> i) & 1:
                    raise ValueError("adjacency rows are not symmetric")
        return g

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph.from_rows([(full ^ r) & ~(1 << i) for i, r in enumerate(self.rows)])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        return Graph(len(vertices), [(index[u], index[v]) for u, v in self.edges()
                                     if u in index and v in index])

    def is_regular(self, d: int | None = None) -> bool:
        degs = {self.degree(v) for v in range(self.n)}
        return len(degs) <= 1 and (d is None or degs <= {d})

    def relations(self):
        return {"": (self.rows, self.rows)}

    def __eq__(self, other):
        return isinstance(other, Graph) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Graph", self.rows))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges()})"


class Digraph:
    """Directed graph as an arc relation; loops only when ``allow_loops``."""

    __slots__ = ("n", "out_rows", "in_rows", "allow_loops", "_hash")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = (), allow_loops: bool = False):
        out = [0] * n
        inn = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc {(u, v)} out of range for n={n}")
            if u == v and not allow_loops:
                raise ValueError(f"loop at {u} but allow_loops is False")
            if (out[u] >> v) & 1:
                raise ValueError(f"duplicate arc {(u, v)}")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        self.n = n
        self.out_rows = tuple(out)
        self.in_rows = tuple(inn)
        self.allow_loops = allow_loops
        self._hash = None

    def has_arc(self, u: int, v: int) -> bool:
        return bool((self.out_rows[u] >> v) & 1)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.out_rows[u])]

    def num_arcs(self) -> int:
        return sum(popcount(r) for r in self.out_rows)

    def outdegree(self, v: int) -> int:
        return popcount(self.out_rows[v])

    def indegree(self, v: int) -> int:
        return popcount(self.in_rows[v])

    def is_oriented(self) -> bool:
        """No loops and no pair of anti-parallel arcs."""
        return all(not (self.out_rows[u] >> u) & 1 and not (self.out_rows[u] & self.in_rows[u])
                   for u in range(self.n))

    def is_symmetric(self) -> bool:
        return self.out_rows == self.in_rows

    def to_graph(self) -> Graph:
        """The underlying simple graph (requires a loop-free digraph)."""
        return Graph(self.n, {(min(u, v), max(u, v)) for u, v in self.arcs()})

    def relations(self):
        return {"": (self.out_rows, self.in_rows)}

    def __eq__(self, other):
        return (isinstance(other, Digraph) and self.out_rows == other.out_rows
                and self.allow_loops == other.allow_loops)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Digraph", self.out_rows, self.allow_loops))
        return self._hash

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.num_arcs()})"


class RelSystem:
    """Binary relational system: one arc relation per colour; loops allowed."""

    __slots__ = ("n", "colours", "arcs", "_rows")

    def __init__(self, n: int, colours: Sequence[str], arcs: dict | None = None):
        colours = tuple(str(c) for c in colours)
        if len(set(colours)) != len(colours):
            raise ValueError("duplicate colour identifiers")
        arcs = arcs or {}
        unknown = set(arcs) - set(colours)
        if unknown:
            raise ValueError(f"arcs given for undeclared colours {sorted(unknown)}")
        table = {}
        for c in colours:
            pairs = [tuple(a) for a in arcs.get(c, ())]
            for u, v in pairs:
                if not (0 <= u < n and 0 <= v < n):
                    raise ValueError(f"arc {(u, v)} of colour {c!r} out of range")
            if len(set(pairs)) != len(pairs):
                raise ValueError(f"duplicate arc in colour {c!r}")
            table[c] = tuple(sorted(pairs))
        self.n = n
        self.colours = colours
        self.arcs = table
        self._rows = None

    def relations(self):
        if self._rows is None:
            rows = {}
            for c in self.colours:
                out = [0] * self.n
                inn = [0] * self.n
                for u, v in self.arcs[c]:
                    out[u] |= 1 << v
                    inn[v] |= 1 << u
                rows[c] = (tuple(out), tuple(inn))
            self._rows = rows
        return self._rows

    def num_arcs(self) -> int:
        return sum(len(a) for a in self.arcs.values())

    def indegree(self, v: int) -> int:
        return sum(popcount(inn[v]) for _, inn in self.relations().values())

    def outdegree(self, v: int) -> int:
        return sum(popcount(out[v]) for out, _ in self.relations().values())

    def induced_on(self, vertices: Sequence[int]) -> "RelSystem":
        index = {v: i for i, v in enumerate(vertices)}
        return RelSystem(len(vertices), self.colours,
                         {c: [(index[u], index[v]) for u, v in a if u in index and v in index]
                          for c, a in self.arcs.items()})

    def with_colour(self, colour: str, arcs: Iterable[tuple[int, int]]) -> "RelSystem":
        new = dict(self.arcs)
        new[colour] = list(arcs)
        return RelSystem(self.n, self.colours + (colour,), new)

    def __eq__(self, other):
        return (isinstance(other, RelSystem) and self.n == other.n
                and self.colours == other.colours and self.arcs == other.arcs)

    def __hash__(self):
        return hash(("RelSystem", self.n, self.colours, tuple(self.arcs[c] for c in self.colours)))

    def __repr__(self):
        return f"RelSystem(n={self.n}, colours={len(self.colours)}, arcs={self.num_arcs()})"


class Indicator:
    """A graph or digraph with a distinguished ordered pair (in, out)."""

    __slots__ = ("carrier", "in_", "out")

    def __init__(self, carrier, in_: int, out: int):
        if in_ == out:
            raise ValueError("in and out must differ")
        if not (0 <= in_ < carrier.n and 0 <= out < carrier.n):
            raise ValueError("distinguished pair out of range")
        self.carrier = carrier
        self.in_ = in_
        self.out = out

    @property
    def n(self):
        return self.carrier.n

    def is_symmetric(self) -> bool:
        return isinstance(self.carrier, Graph)

    def __repr__(self):
        return f"Indicator({self.carrier!r}, in={self.in_}, out={self.out})"


# ---------------------------------------------------------------- codecs

def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def _decode_n(data: bytes) -> tuple[int, int]:
    if not data:
        raise HeaderError("empty input")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise HeaderError("truncated 8-byte size header")
        body, start = data[2:8], 8
    else:
        if len(data) < 4:
            raise HeaderError("truncated 4-byte size header")
        body, start = data[1:4], 4
    n = 0
    for b in body:
        if not 63 <= b <= 126:
            raise HeaderError(f"size header byte {b} out of range")
        n = (n << 6) | (b - 63)
    return n, start


def _pack_bits(bits: list[int]) -> str:
    bits = bits + [0] * (-len(bits) % 6)
    out = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(chr(v + 63))
    return "".join(out)


def _unpack_bits(body: bytes, nbits: int) -> list[int]:
    need = (nbits + 5) // 6
    if len(body) < need:
        raise LengthError(f"body has {len(body)} bytes, expected {need}")
    if len(body) > need:
        raise LengthError(f"trailing garbage: {len(body) - need} extra bytes")
    bits = []
    for b in body:
        v = b - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    return bits[:nbits]


def _clean(text: str | bytes, header: str) -> bytes:
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(header.encode()):
        data = data[len(header):]
    for b in data:
        if not 63 <= b <= 126 and b != ord("&"):
            raise ByteRangeError(f"byte {b} outside 63..126")
    return data


def parse_g6(text: str | bytes) -> Graph:
    data = _clean(text, ">>graph6<<")
    if data[:1] == b"&":
        raise HeaderError("digraph6 string given to graph6 parser")
    for b in data:
        if not 63 <= b <= 126:
            raise ByteRangeError(f"byte {b} outside 63..126")
    n, start = _decode_n(data)
    bits = _unpack_bits(data[start:], n * (n - 1) // 2)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def emit_g6(g: Graph) -> str:
    bits = [(g.rows[i] >> j) & 1 for j in range(1, g.n) for i in range(j)]
    return _encode_n(g.n) + _pack_bits(bits)


def parse_d6(text: str | bytes) -> Digraph:
    data = _clean(text, ">>digraph6<<")
    if data[:1] != b"&":
        raise HeaderError("digraph6 must start with '&'")
    data = data[1:]
    for b in data:
        if not 63 <= b <= 126:
            raise ByteRangeError(f"byte {b} outside 63..126")
    n, start = _decode_n(data)
    bits = _unpack_bits(data[start:], n * n)
    arcs = [(i, j) for i in range(n) for j in range(n) if bits[i * n + j]]
    return Digraph(n, arcs, allow_loops=True)


def emit_d6(d: Digraph) -> str:
    bits = [(d.out_rows[i] >> j) & 1 for i in range(d.n) for j in range(d.n)]
    return "&" + _encode_n(d.n) + _pack_bits(bits)


def system_to_dict(s: RelSystem) -> dict:
    return {"n": s.n, "colours": list(s.colours),
            "arcs": {c: [list(a) for a in sorted(s.arcs[c])] for c in s.colours}}


def emit_system(s: RelSystem) -> str:
    return json.dumps(system_to_dict(s), sort_keys=True, separators=(",", ":"))


def parse_system(text: str) -> RelSystem:
    try:
        obj = json.loads(text)
        n = obj["n"]
        colours = obj["colours"]
        arcs = obj.get("arcs", {})
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"malformed relational-system JSON: {exc}") from exc
    if not isinstance(n, int) or n < 0 or not isinstance(colours, list) or not isinstance(arcs, dict):
        raise FormatError("malformed relational-system JSON")
    for c, pairs in arcs.items():
        for a in pairs:
            if not (isinstance(a, list) and len(a) == 2 and all(isinstance(x, int) for x in a)):
                raise FormatError(f"arc {a!r} of colour {c!r} is not a pair of ints")
    try:
        return RelSystem(n, colours, {c: [tuple(a) for a in pairs] for c, pairs in arcs.items()})
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def as_system(x) -> RelSystem:
    """View a graph or digraph as a one-colour relational system."""
    if isinstance(x, RelSystem):
        return x
    if isinstance(x, Graph):
        arcs = [(u, v) for u in range(x.n) for v in iter_bits(x.rows[u])]
    else:
        arcs = x.arcs()
    return RelSystem(x.n, ["0"], {"0": arcs})


# ---------------------------------------------------------------- metrics

def _underlying(x) -> tuple[int, ...]:
    if isinstance(x, Graph):
        return x.rows
    rows = [0] * x.n
    for out, inn in x.relations().values():
        for v in range(x.n):
            rows[v] |= out[v] | inn[v]
    return tuple(r & ~(1 << v) for v, r in enumerate(rows))


def degrees(x) -> list[int]:
    """Total degree of every vertex; a loop counts once in and once out."""
    if isinstance(x, Graph):
        return [popcount(r) for r in x.rows]
    degs = [0] * x.n
    for out, inn in x.relations().values():
        for v in range(x.n):
            degs[v] += popcount(out[v]) + popcount(inn[v])
    return degs


def components(x) -> list[list[int]]:
    """Connected components of the underlying graph, each sorted."""
    rows = _underlying(x)
    seen = 0
    comps = []
    for s in range(x.n):
        if (seen >> s) & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(iter_bits(comp)))
    return comps


def is_connected(x) -> bool:
    return x.n <= 1 or len(components(x)) == 1


def bfs_distances(x, source: int, directed: bool = False) -> list[int | None]:
    if directed:
        rows = x.rows if isinstance(x, Graph) else _union_out(x)
    else:
        rows = _underlying(x)
    dist: list[int | None] = [None] * x.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in iter_bits(rows[v]):
            if dist[u] is None:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def _union_out(x) -> tuple[int, ...]:
    rows = [0] * x.n
    for out, _ in x.relations().values():
        for v in range(x.n):
            rows[v] |= out[v]
    return tuple(rows)


def dist(x, u: int, v: int, directed: bool = False) -> int | None:
    """Length of a shortest (u, v)-path; ``None`` when unreachable."""
    return bfs_distances(x, u, directed)[v]


def odd_girth(g: Graph) -> int | None:
    """Length of a shortest odd cycle, or ``None`` for bipartite graphs."""
    best = None
    rows = g.rows
    for root in range(g.n):
        level = {root: 0}
        frontier = [root]
        depth = 0
        while frontier:
            if best is not None and 2 * depth + 1 >= best:
                break
            layer = 0
            for v in frontier:
                layer |= 1 << v
            for v in frontier:
                if rows[v] & layer:
                    best = 2 * depth + 1
                    break
            else:
                nxt = []
                for v in frontier:
                    for u in iter_bits(rows[v]):
                        if u not in level:
                            level[u] = depth + 1
                            nxt.append(u)
                frontier = nxt
                depth += 1
                continue
            break
    return best


def shortest_odd_dicycle(d) -> int | None:
    """Length of a shortest directed cycle of odd length, or ``None``."""
    rows = _union_out(d)
    best = None
    n = d.n
    for s in range(n):
        frontier = [s]
        parity = 0
        length = 0
        reached = [1 << s, 0]
        while frontier:
            length += 1
            if best is not None and length >= best:
                break
            parity ^= 1
            nxt = 0
            for v in frontier:
                nxt |= rows[v]
            if parity == 1 and (nxt >> s) & 1:
                best = length
                break
            nxt &= ~reached[parity]
            reached[parity] |= nxt
            frontier = list(iter_bits(nxt))
    return best


def vertex_odd_girths(g: Graph) -> list[int | None]:
    """For each vertex, the length of a shortest odd closed walk through it.

    A shortest odd closed walk through ``v`` is found by a parity BFS from
    ``v``; it bounds from above the shortest odd cycle reachable from ``v``.
    """
    out = []
    for s in range(g.n):
        reached = [1 << s, 0]
        frontier = 1 << s
        parity = 0
        length = 0
        found = None
        while frontier:
            length += 1
            parity ^= 1
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.rows[v]
            if parity == 1 and (nxt >> s) & 1:
                found = length
                break
            nxt &= ~reached[parity]
            reached[parity] |= nxt
            frontier = nxt
        out.append(found)
    return out


# ---------------------------------------------------------------- small constructors

def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)], allow_loops=(n == 1))
