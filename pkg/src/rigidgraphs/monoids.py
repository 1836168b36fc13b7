"""Finite monoids, coloured Cayley systems and the class structure of a monoid."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .core import FormatError, RelSystem


class MonoidError(ValueError):
    pass


class Monoid:
    """A multiplication table ``table[a][b] = ab`` with a designated identity."""

    __slots__ = ("n", "table", "identity", "generators")

    def __init__(self, table, identity: int = 0, generators=None):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0:
            raise MonoidError("a monoid has at least one element")
        if any(len(row) != n for row in table):
            raise MonoidError("table is not square")
        if any(not 0 <= x < n for row in table for x in row):
            raise MonoidError("table entry out of range")
        if not 0 <= identity < n:
            raise MonoidError("identity out of range")
        e = identity
        for a in range(n):
            if table[e][a] != a or table[a][e] != a:
                raise MonoidError(f"{e} is not an identity (fails at {a})")
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise MonoidError(f"not associative at {(a, b, c)}")
        self.n = n
        self.table = table
        self.identity = e
        if generators is not None:
            generators = tuple(sorted(set(generators)))
            if not generators:
                raise MonoidError("generating set is empty")
            if self.generated_by(generators) != set(range(n)):
                raise MonoidError("generators do not generate the monoid")
        self.generators = generators

    def __repr__(self):
        return f"Monoid(n={self.n}, identity={self.identity})"

    def __eq__(self, other):
        return isinstance(other, Monoid) and self.table == other.table and self.identity == other.identity

    def __hash__(self):
        return hash((self.table, self.identity))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def generated_by(self, gens) -> set[int]:
        reached = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for c in gens:
                    y = self.table[x][c]
                    if y not in reached:
                        reached.add(y)
                        nxt.append(y)
            frontier = nxt
        return reached

    def units(self) -> list[int]:
        e, t = self.identity, self.table
        return [a for a in range(self.n) if any(t[a][b] == e and t[b][a] == e for b in range(self.n))]

    def is_group(self) -> bool:
        return len(self.units()) == self.n

    def default_generators(self) -> tuple[int, ...]:
        if self.generators is not None:
            return self.generators
        if self.n == 1:
            return (self.identity,)
        return tuple(a for a in range(self.n) if a != self.identity)

    def left_ideal(self, v: int) -> frozenset[int]:
        """Mv."""
        return frozenset(self.table[m][v] for m in range(self.n))


# ---------------------------------------------------------------- JSON

def monoid_to_dict(m: Monoid) -> dict:
    d = {"n": m.n, "identity": m.identity, "table": [list(r) for r in m.table]}
    if m.generators is not None:
        d["generators"] = list(m.generators)
    return d


def emit_monoid(m: Monoid) -> str:
    return json.dumps(monoid_to_dict(m), sort_keys=True, separators=(",", ":"))


def parse_monoid(text: str) -> Monoid:
    try:
        d = json.loads(text)
        m = Monoid(d["table"], d["identity"], d.get("generators"))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise FormatError(f"bad monoid JSON: {exc}") from exc
    if d.get("n", m.n) != m.n:
        raise FormatError("n does not match table size")
    return m


# ---------------------------------------------------------------- examples

def trivial_monoid() -> Monoid:
    return Monoid([[0]])


def cyclic_group(k: int) -> Monoid:
    return Monoid([[(a + b) % k for b in range(k)] for a in range(k)])


def idempotent_monoid() -> Monoid:
    """{e, a} with aa = a: the non-group monoid of order two."""
    return Monoid([[0, 1], [1, 1]])


def all_monoids(n: int) -> list[Monoid]:
    """Every monoid table on {0..n-1} with identity 0 (not up to isomorphism)."""
    if n == 1:
        return [trivial_monoid()]
    out = []
    rest = range(1, n)
    cells = [(a, b) for a in rest for b in rest]
    for values in itertools.product(range(n), repeat=len(cells)):
        t = [[0] * n for _ in range(n)]
        for a in range(n):
            t[0][a] = a
            t[a][0] = a
        for (a, b), v in zip(cells, values):
            t[a][b] = v
        try:
            out.append(Monoid(t, 0))
        except MonoidError:
            pass
    return out


def monoids_up_to_iso(n: int) -> list[Monoid]:
    from .homsearch import monoid_iso
    reps: list[Monoid] = []
    for m in all_monoids(n):
        if not any(monoid_iso(m, r) is not None for r in reps):
            reps.append(m)
    return reps


# ---------------------------------------------------------------- Cayley systems

def cayley_col(m: Monoid, gens=None) -> RelSystem:
    """Vertices are elements; colour ``c`` has arcs (u, uc)."""
    gens = m.default_generators() if gens is None else tuple(gens)
    if not gens:
        raise MonoidError("generating set is empty")
    if m.generated_by(gens) != set(range(m.n)):
        raise MonoidError("generators do not generate the monoid")
    colours = [str(c) for c in gens]
    arcs = {str(c): [(u, m.table[u][c]) for u in range(m.n)] for c in gens}
    return RelSystem(m.n, colours, arcs)


# ---------------------------------------------------------------- class structure

@dataclass(frozen=True)
class ClassStructure:
    end_classes: tuple[frozenset, ...]
    aut_classes: tuple[frozenset, ...]
    order: frozenset            # pairs (i, j) of end-class indices with [i] <= [j]
    components: tuple[frozenset, ...]   # sets of end-class indices

    def end_class_of(self, v: int) -> int:
        for k, c in enumerate(self.end_classes):
            if v in c:
                return k
        raise KeyError(v)

    def aut_class_of(self, v: int) -> int:
        for k, c in enumerate(self.aut_classes):
            if v in c:
                return k
        raise KeyError(v)

    def leq(self, i: int, j: int) -> bool:
        return (i, j) in self.order


def _classes(n: int, related) -> tuple[frozenset, ...]:
    out = []
    seen = set()
    for v in range(n):
        if v in seen:
            continue
        cls = frozenset(w for w in range(n) if related(v, w))
        seen |= cls
        out.append(cls)
    return tuple(out)


def _poset(n, end_classes, reach) -> tuple[frozenset, tuple[frozenset, ...]]:
    """``reach(v, w)``: some endomorphism maps v to w."""
    reps = [min(c) for c in end_classes]
    k = len(reps)
    order = frozenset((i, j) for i in range(k) for j in range(k) if reach(reps[i], reps[j]))
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in order:
        parent[find(i)] = find(j)
    groups: dict[int, set[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), set()).add(i)
    comps = tuple(sorted((frozenset(s) for s in groups.values()), key=min))
    return order, comps


def class_structure(m: Monoid) -> ClassStructure:
    """Classes of Cay_col(M), whose endomorphisms are the left multiplications."""
    ideals = [m.left_ideal(v) for v in range(m.n)]
    units = m.units()
    end_classes = _classes(m.n, lambda v, w: ideals[v] == ideals[w])
    aut_classes = _classes(m.n, lambda v, w: any(m.table[u][v] == w for u in units))
    order, comps = _poset(m.n, end_classes, lambda v, w: w in ideals[v])
    return ClassStructure(end_classes, aut_classes, order, comps)


def class_structure_from_endos(n: int, endos) -> ClassStructure:
    """The same structure read off an explicit list of endomorphisms."""
    endos = list(endos)
    auts = [f for f in endos if len(set(f)) == n]
    reach = [[False] * n for _ in range(n)]
    for f in endos:
        for v in range(n):
            reach[v][f[v]] = True
    end_classes = _classes(n, lambda v, w: reach[v][w] and reach[w][v])
    aut_classes = _classes(n, lambda v, w: any(f[v] == w for f in auts))
    order, comps = _poset(n, end_classes, lambda v, w: reach[v][w])
    return ClassStructure(end_classes, aut_classes, order, comps)
