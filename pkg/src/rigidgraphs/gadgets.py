"""Rigid oriented gadgets S(d, l, f) built from transitive tournaments.

An f-map assigns one of ``+``, ``0``, ``-`` to every pair (i, j) with
1 <= i <= l and 2 <= j <= d-1.  As a string it is written block by block
(i = 1..l), and within a block j runs from d-1 down to 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import Digraph, Indicator, bfs_distances, iter_bits

SIGNS = "+0-"


class GadgetError(ValueError):
    pass


@dataclass(frozen=True)
class FMap:
    d: int
    ell: int
    values: tuple[str, ...]   # in string order

    def __post_init__(self):
        if self.d < 3 or self.ell < 1:
            raise GadgetError("need d >= 3 and l >= 1")
        if len(self.values) != self.ell * (self.d - 2):
            raise GadgetError(f"f-map for (d={self.d}, l={self.ell}) needs {self.ell * (self.d - 2)} values")
        if any(s not in SIGNS for s in self.values):
            raise GadgetError("f-map values must be '+', '0' or '-'")

    @classmethod
    def parse(cls, d: int, ell: int, text: str) -> "FMap":
        return cls(d, ell, tuple(text))

    @classmethod
    def constant(cls, d: int, ell: int, sign: str) -> "FMap":
        return cls(d, ell, (sign,) * (ell * (d - 2)))

    @classmethod
    def from_dict(cls, d: int, ell: int, mapping: dict) -> "FMap":
        return cls(d, ell, tuple(mapping[k] for k in _keys(d, ell)))

    def __str__(self) -> str:
        return "".join(self.values)

    def __getitem__(self, key: tuple[int, int]) -> str:
        i, j = key
        if not (1 <= i <= self.ell and 2 <= j <= self.d - 1):
            raise KeyError(key)
        return self.values[(i - 1) * (self.d - 2) + (self.d - 1 - j)]

    def as_dict(self) -> dict:
        return {k: self[k] for k in _keys(self.d, self.ell)}


def _keys(d: int, ell: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, ell + 1) for j in range(d - 1, 1, -1)]


def all_fmaps(d: int, ell: int):
    for vals in itertools.product(SIGNS, repeat=ell * (d - 2)):
        yield FMap(d, ell, vals)


def fmap_leq(f: FMap, g: FMap) -> bool:
    if (f.d, f.ell) != (g.d, g.ell):
        raise GadgetError("f-maps of different shapes are not comparable")
    return all(a == "0" or a == b for a, b in zip(f.values, g.values))


_NEG = {"+": "-", "-": "+", "0": "0"}


def fmap_inv(f: FMap) -> FMap:
    d, ell = f.d, f.ell
    return FMap.from_dict(d, ell, {(i, j): _NEG[f[ell + 1 - i, d + 1 - j]] for (i, j) in _keys(d, ell)})


def hom_count_formula(d: int, ell: int, f: FMap, ell2: int, f2: FMap) -> int:
    """Closed-form |Hom(S(d,l,f), S(d,l',f'))|."""
    if ell != ell2:
        return 0
    a, b = fmap_leq(f, f2), fmap_leq(fmap_inv(f), f2)
    return 2 if a and b else 1 if a or b else 0


@dataclass(frozen=True)
class Sausage:
    d: int
    ell: int
    f: FMap
    digraph: Digraph
    names: dict = field(hash=False, compare=False)

    def index(self, name: str) -> int:
        return self.names[name]

    def v(self, j: int, sign: str, i: int) -> int:
        """Vertex v_j of the tournament T_sign^i."""
        return self.names[f"v{j}(T{sign}{i})"]


def build_sausage(d: int, ell: int, f: FMap | str) -> Sausage:
    if isinstance(f, str):
        f = FMap.parse(d, ell, f)
    if (f.d, f.ell) != (d, ell):
        raise GadgetError("f-map shape does not match (d, l)")
    names: dict[str, int] = {}

    def new(name):
        names[name] = len(names)
        return names[name]

    tplus, tminus = {}, {}
    for i in range(1, ell + 1):
        tplus[i] = [new(f"v{j}(T+{i})") for j in range(1, d + 1)]
        tminus[i] = [new(f"v{j}(T-{i})") for j in range(1, d + 1)]
    tl = [new(f"v{j}(Tl)") for j in range(1, d)]
    tr = [new(f"v{j}(Tr)") for j in range(1, d)]
    sl, tl_, sr, tr_ = new("s_l"), new("t_l"), new("s_r"), new("t_r")
    arcs = []
    for tour in list(tplus.values()) + list(tminus.values()) + [tl, tr]:
        arcs += [(tour[a], tour[b]) for a in range(len(tour)) for b in range(a + 1, len(tour))]
    arcs += [(sl, x) for x in tl] + [(x, tl_) for x in tl]
    arcs += [(sr, x) for x in tr] + [(x, tr_) for x in tr]
    arcs += [(tplus[1][d - 1], sl), (tl_, tminus[1][0]), (tminus[ell][d - 1], sr), (tr_, tplus[ell][0])]
    for i in range(1, ell):
        arcs += [(tplus[i + 1][d - 1], tplus[i][0]), (tminus[i][d - 1], tminus[i + 1][0])]
    for i in range(1, ell + 1):
        for j in range(2, d):
            s = f[i, j]
            a, b = tplus[i][j - 1], tminus[i][d - j]
            if s == "-":
                arcs.append((a, b))
            elif s == "+":
                arcs.append((b, a))
    return Sausage(d, ell, f, Digraph(len(names), arcs), names)


def expected_degrees(s: Sausage) -> list[int]:
    deg = [s.d] * s.digraph.n
    for i in range(1, s.ell + 1):
        for j in range(2, s.d):
            if s.f[i, j] == "0":
                deg[s.v(j, "+", i)] = s.d - 1
                deg[s.v(s.d + 1 - j, "-", i)] = s.d - 1
    return deg


def plus_map(d: int, ell: int) -> FMap:
    return FMap.constant(d, ell, "+")


def plus_prime_map(d: int, ell: int) -> FMap:
    m = plus_map(d, ell).as_dict()
    m[(1, d - 1)] = "0"
    return FMap.from_dict(d, ell, m)


def family_F1(d: int, ell: int) -> Sausage:
    if ell < 1:
        raise GadgetError("F1 members need l >= 1")
    return build_sausage(d, ell, plus_map(d, ell))


def on_oriented_triangles(D: Digraph) -> bool:
    """Every vertex lies on a triangle of the underlying graph (arc directions ignored)."""
    rows = [o | i for o, i in zip(D.out_rows, D.in_rows)]
    for v in range(D.n):
        if not any(rows[v] & rows[w] for w in iter_bits(rows[v])):
            return False
    return True


def directed_distance(D: Digraph, a: int, b: int) -> int | None:
    return bfs_distances(D, a, directed=True)[b]


def family_F2(d: int, ell: int) -> tuple[Sausage, Indicator]:
    """A member of F2 and its oriented indicator; (in, out) passes (iv')."""
    if ell < 2:
        raise GadgetError("F2 members need l >= 2")
    s = build_sausage(d, ell, plus_prime_map(d, ell))
    u, v = s.v(d - 1, "+", 1), s.v(2, "-", 1)
    if (bfs_distances(s.digraph, u)[v] or 0) < 3:
        raise GadgetError(f"F2({d},{ell}): endpoints closer than 3")
    for a, b in ((u, v), (v, u)):
        back = directed_distance(s.digraph, b, a)
        if back is None or back >= 3:
            return s, Indicator(s.digraph, a, b)
    raise GadgetError(f"F2({d},{ell}) passes (iv') in neither orientation")


def hom_formula_mismatches(d: int, ells=(1, 2), pruning=None, budget=None) -> tuple[int, list]:
    """Compare the closed form with the engine on every pair of f-maps.

    Returns (pairs checked, list of (l, f, l', f', engine, formula) mismatches).
    """
    from .homsearch import Pruning, count_homs
    pruning = pruning or Pruning()
    built = {(ell, str(f)): build_sausage(d, ell, f).digraph for ell in ells for f in all_fmaps(d, ell)}
    fmaps = {ell: list(all_fmaps(d, ell)) for ell in ells}
    checked = 0
    bad = []
    for ell in ells:
        for f in fmaps[ell]:
            for ell2 in ells:
                for f2 in fmaps[ell2]:
                    got = count_homs(built[(ell, str(f))], built[(ell2, str(f2))], pruning=pruning, budget=budget)
                    want = hom_count_formula(d, ell, f, ell2, f2)
                    checked += 1
                    if got != want:
                        bad.append((ell, str(f), ell2, str(f2), got, want))
    return checked, bad
