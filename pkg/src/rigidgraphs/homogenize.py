"""Degree homogenization of a coloured Cayley system.

Starting from D1 = Cay_col(M, C), three kinds of extension are applied:

* ``step1`` hangs new vertices and a sink ``z`` off D1 so that the total
  degree becomes constant on every endomorphism class;
* ``step2`` (applied repeatedly) levels the degree inside one connected
  component of the class poset;
* ``step3`` doubles the system and adds one arc per missing degree unit,
  making the total degree globally constant.

Every stage keeps the explicit list of endomorphisms, transported from the
previous stage by the extension formula, in the order of the elements of M.
Class structures are read off this list, so no search is needed to drive the
construction; the engine is only used to confirm it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import RelSystem, degrees
from .monoids import ClassStructure, Monoid, cayley_col, class_structure_from_endos


class HomogenizeError(RuntimeError):
    pass


@dataclass
class StagedSystem:
    system: RelSystem
    stage: str
    endos: list[tuple[int, ...]]
    parent: "StagedSystem | None" = None
    trace: list[str] = field(default_factory=list)
    _classes: ClassStructure | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.system.n

    def degrees(self) -> list[int]:
        return degrees(self.system)

    def classes(self) -> ClassStructure:
        if self._classes is None:
            self._classes = class_structure_from_endos(self.n, self.endos)
        return self._classes

    def end_transport(self) -> dict:
        """previous-stage endomorphism -> this stage's endomorphism."""
        if self.parent is None:
            return {}
        return dict(zip(self.parent.endos, self.endos))

    def restricts_to_parent(self) -> bool:
        """Every endomorphism restricts to the corresponding one of the parent."""
        if self.parent is None:
            return True
        m = self.parent.n
        return all(tuple(f[:m]) == p for f, p in zip(self.endos, self.parent.endos))

    def class_degree(self, k: int) -> int:
        degs = self.degrees()
        vals = {degs[v] for v in self.classes().end_classes[k]}
        if len(vals) != 1:
            raise HomogenizeError(f"degree not constant on end class {k}")
        return vals.pop()

    def has_increasing_degrees(self) -> bool:
        cs = self.classes()
        degs = self.degrees()
        for i, j in cs.order:
            a = max(degs[v] for v in cs.end_classes[i])
            b = min(degs[v] for v in cs.end_classes[j])
            if a > b:
                return False
        return True

    def degree_constant_on_classes(self) -> bool:
        degs = self.degrees()
        return all(len({degs[v] for v in c}) == 1 for c in self.classes().end_classes)

    def degree_constant_on_components(self) -> bool:
        degs = self.degrees()
        cs = self.classes()
        for comp in cs.components:
            if len({degs[v] for k in comp for v in cs.end_classes[k]}) != 1:
                return False
        return True

    def is_degree_constant(self) -> bool:
        return len(set(self.degrees())) <= 1


def stage_d1(m: Monoid, gens=None) -> StagedSystem:
    D = cayley_col(m, gens)
    endos = [tuple(m.table[a][v] for v in range(m.n)) for a in range(m.n)]
    return StagedSystem(D, "D1", endos)


# ---------------------------------------------------------------- step 1

def step1(s1: StagedSystem, m: Monoid, k: dict[int, int]) -> StagedSystem:
    """``k`` maps aut-class index (of D1's class structure) to a positive integer."""
    if m.is_group():
        raise HomogenizeError("step1 needs a monoid that is not a group")
    D1 = s1.system
    n = D1.n
    cs = s1.classes()
    units = set(m.units())
    e_cls = cs.aut_class_of(m.identity)
    for a in range(len(cs.aut_classes)):
        if k.get(a, 0) < 1:
            raise HomogenizeError(f"k must be positive on aut class {a}")
    nonunits = [v for v in range(n) if v not in units]
    P: dict[int, list[int]] = {}
    nxt = n
    for v in nonunits:
        size = k[cs.aut_class_of(v)]
        P[v] = list(range(nxt, nxt + size))
        nxt += size
    z = nxt
    N = z + 1
    colours = list(D1.colours)
    arcs = {c: list(D1.arcs[c]) for c in D1.colours}
    for a, alpha in enumerate(cs.aut_classes):
        for i in range(1, k[a] + 1):
            c, cp = f"s1:{a}:{i}", f"s1:{a}':{i}"
            colours += [c, cp]
            if a == e_cls:
                arcs[c] = [(v, z) for v in nonunits]
                arcs[cp] = [(v, z) for v in nonunits]
                continue
            w = min(alpha)
            wc = cs.end_class_of(w)
            arcs[c] = [(v, z) for v in range(n) if cs.leq(wc, cs.end_class_of(v))] + \
                      [(v, P[v][i - 1]) for v in sorted(alpha)]
            arcs[cp] = [(v, z) for v in nonunits] + \
                       [(u, P[v][i - 1]) for v in sorted(alpha) for u in sorted(units)]
    D2 = RelSystem(N, colours, arcs)
    endos = []
    for phi in s1.endos:
        out = list(phi) + [z] * (N - n)
        if len(set(phi)) == n:
            for v, pv in P.items():
                for i, x in enumerate(pv):
                    out[x] = P[phi[v]][i]
        endos.append(tuple(out))
    return StagedSystem(D2, "D2", endos, s1, [f"step1 k={dict(sorted(k.items()))}"])


def step1_degree_formula(s1: StagedSystem, m: Monoid, k: dict[int, int], v: int) -> int:
    """Predicted total degree in D2 of a vertex v of D1."""
    cs = s1.classes()
    deg = s1.degrees()
    units = set(m.units())
    if v in units:
        return deg[v] + sum(k[cs.aut_class_of(w)] for w in range(s1.n) if w not in units)
    vc = cs.end_class_of(v)
    down = sum(k[a] for a, alpha in enumerate(cs.aut_classes)
               if cs.leq(cs.end_class_of(min(alpha)), vc))
    return deg[v] + sum(k.values()) + down + k[cs.aut_class_of(v)]


def choose_k(s1: StagedSystem, m: Monoid) -> dict[int, int]:
    """k values giving D2 class-constant degrees and the increasing degree property.

    Non-unit classes are settled bottom-up along the class order; the unit
    class comes last.
    """
    cs = s1.classes()
    deg = s1.degrees()
    units = set(m.units())
    e_end = cs.end_class_of(m.identity)
    e_aut = cs.aut_class_of(m.identity)
    nclass = len(cs.end_classes)
    # aut classes inside each end class
    inside = {j: [a for a, alpha in enumerate(cs.aut_classes) if cs.end_class_of(min(alpha)) == j]
              for j in range(nclass)}
    below = {j: [i for i in range(nclass) if i != j and cs.leq(i, j)] for j in range(nclass)}
    order = sorted((j for j in range(nclass) if j != e_end), key=lambda j: (len(below[j]), min(cs.end_classes[j])))
    k: dict[int, int] = {}

    def score(j: int) -> int:
        # degree in D2 minus the terms common to all non-units
        v = min(cs.end_classes[j])
        down = sum(k[a] for i in below[j] + [j] if i != e_end for a in inside[i])
        return deg[v] + down + k[cs.aut_class_of(v)]

    for j in order:
        top = max(deg[min(alpha)] for alpha in (cs.aut_classes[a] for a in inside[j]))
        for a in inside[j]:
            k[a] = top - deg[min(cs.aut_classes[a])] + 1
        need = max((score(i) for i in below[j] if i != e_end), default=None)
        while need is not None and score(j) < need:
            for a in inside[j]:
                k[a] += 1
    k[e_aut] = 1
    while True:
        d2 = {v: step1_degree_formula(s1, m, k, v) for v in range(s1.n)}
        unit_deg = max(d2[u] for u in units)
        nonunit_min = min(d2[v] for v in range(s1.n) if v not in units)
        if unit_deg <= nonunit_min and 2 * k[e_aut] >= len(units) + 1:
            return k
        k[e_aut] += 1


# ---------------------------------------------------------------- step 2

def step2(s: StagedSystem, ideal: set[int], k: int, tag: str = "s2") -> StagedSystem:
    """``ideal``: indices of end classes of ``s`` forming a down-closed set."""
    if k < 1:
        raise HomogenizeError("k must be positive")
    cs = s.classes()
    for i, j in cs.order:
        if j in ideal and i not in ideal:
            raise HomogenizeError("the given set of classes is not an ideal")
    if not s.degree_constant_on_classes():
        raise HomogenizeError("degree is not constant on end classes")
    degs = s.degrees()
    if len({degs[v] for j in ideal for v in cs.end_classes[j]}) > 1:
        raise HomogenizeError("degree is not constant across the ideal")
    D = s.system
    n = D.n
    in_I = [cs.end_class_of(v) in ideal for v in range(n)]
    P: list[list[int]] = []
    nxt = n
    for v in range(n):
        size = k if in_I[v] else 1
        P.append(list(range(nxt, nxt + size)))
        nxt += size
    colours = list(D.colours)
    arcs = {c: list(D.arcs[c]) for c in D.colours}
    c0 = f"{tag}:0"
    colours.append(c0)
    arcs[c0] = [(v, x) for v in range(n) for x in P[v]]
    for i in range(1, k + 1):
        c = f"{tag}:{i}"
        colours.append(c)
        arcs[c] = [(v, P[v][i - 1] if in_I[v] else P[v][0]) for v in range(n)]
    cp = f"{tag}:p"
    colours.append(cp)
    arcs[cp] = [(P[v][a], P[v][b]) for v in range(n) for a in range(len(P[v])) for b in range(a, len(P[v]))]
    D2 = RelSystem(nxt, colours, arcs)
    endos = []
    for phi in s.endos:
        out = list(phi) + [0] * (nxt - n)
        for v in range(n):
            w = phi[v]
            for i, x in enumerate(P[v]):
                out[x] = P[w][i] if in_I[w] else P[w][0]
        endos.append(tuple(out))
    return StagedSystem(D2, s.stage, endos, s, [f"{tag} ideal={sorted(ideal)} k={k}"])


# ---------------------------------------------------------------- step 3

def step3(s: StagedSystem) -> StagedSystem:
    if not s.degree_constant_on_components():
        raise HomogenizeError("degree is not constant on poset components")
    D = s.system
    n = D.n
    degs = s.degrees()
    lo, hi = min(degs), max(degs)
    colours = list(D.colours)
    arcs = {c: list(D.arcs[c]) + [(u + n, v + n) for u, v in D.arcs[c]] for c in D.colours}
    for c in range(lo, hi + 1):
        name = f"s3:deg:{c}"
        colours.append(name)
        arcs[name] = [(v, v + n) for v in range(n) if degs[v] <= c]
    D4 = RelSystem(2 * n, colours, arcs)
    endos = [tuple(phi) + tuple(phi[v] + n for v in range(n)) for phi in s.endos]
    return StagedSystem(D4, "D4", endos, s, [f"step3 degrees {lo}..{hi}"])


# ---------------------------------------------------------------- driver

def _level_once(s: StagedSystem, count: int) -> StagedSystem | None:
    cs = s.classes()
    degs = s.degrees()
    cdeg = [degs[min(c)] for c in cs.end_classes]
    for comp in sorted(cs.components, key=lambda K: min(min(cs.end_classes[j]) for j in K)):
        vals = {cdeg[j] for j in comp}
        if len(vals) == 1:
            continue
        low = min(vals)
        ideal = {j for j in comp if cdeg[j] == low}
        cands = [j for j in comp if j not in ideal
                 and all(i in ideal or i == j for i, jj in cs.order if jj == j)]
        if not cands:
            raise HomogenizeError("no class extends the minimal ideal")
        pi = min(cands, key=lambda j: (cdeg[j], min(cs.end_classes[j])))
        k = cdeg[pi] - low + 1
        nxt = step2(s, ideal, k, tag=f"s2.{count}")
        # the new minimal set must contain the old one and pi
        ncs = nxt.classes()
        ndeg = nxt.degrees()
        lifted = {ncs.end_class_of(min(cs.end_classes[j])) for j in ideal | {pi}}
        ncomp = {ncs.end_class_of(min(cs.end_classes[j])) for j in comp}
        nlow = min(ndeg[min(ncs.end_classes[j])] for j in ncomp)
        if any(ndeg[min(ncs.end_classes[j])] != nlow for j in lifted):
            raise HomogenizeError("minimal-degree classes did not grow")
        return nxt
    return None


def homogenize(m: Monoid, gens=None, max_rounds: int = 1000) -> StagedSystem:
    """A degree-constant system whose endomorphisms correspond to M."""
    s = stage_d1(m, gens)
    if m.is_group():
        if not s.is_degree_constant():
            raise HomogenizeError("Cayley system of a group is not degree-constant")
        return s
    s = step1(s, m, choose_k(s, m))
    if not (s.degree_constant_on_classes() and s.has_increasing_degrees()):
        raise HomogenizeError("step1 did not give class-constant increasing degrees")
    for count in range(max_rounds):
        nxt = _level_once(s, count)
        if nxt is None:
            break
        if not nxt.has_increasing_degrees():
            raise HomogenizeError("increasing degree property lost")
        s = nxt
    else:
        raise HomogenizeError("leveling did not terminate")
    s.stage = "D3"
    return step3(s)


def stages(s: StagedSystem) -> list[StagedSystem]:
    out = []
    while s is not None:
        out.append(s)
        s = s.parent
    return out[::-1]
