"""Exact backtracking search for homomorphisms.

Sources and targets are any objects exposing ``n`` and ``relations()`` (a dict
``colour -> (out_rows, in_rows)`` of bitset rows): ``Graph``, ``Digraph`` and
``RelSystem`` all qualify.  Candidate images are kept as bitset domains and
narrowed by forward checking along every arc; forced (singleton) domains are
assigned immediately, and branching uses the smallest domain adjacent to the
already-mapped part, so the search expands connectedly from a max-degree root.

Optional sound filters, each switchable through ``Pruning``:

* ``odd_girth``: a vertex whose shortest odd closed walk has length ``l`` can
  only go to a vertex with an odd closed walk of length at most ``l``; a graph
  of smaller odd girth than the target has no homomorphism into it at all.
* ``cycles``: when the source contains odd cycles of length equal to the
  target's odd girth, each such cycle must land on a cycle of that length.
  Once two consecutive vertices of the cycle are mapped, the remaining ones
  are restricted to the matching target cycles.
* ``degree``: in injective searches, degrees cannot drop.
"""

from __future__ import annotations

import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .core import Graph, iter_bits, odd_girth, vertex_odd_girths

MODES = ("enumerate", "count", "find_first", "find_nonidentity")

# cycle tables larger than this are not worth building
MAX_CYCLE_ENTRIES = 400_000


class BudgetExceeded(RuntimeError):
    """The search ran past its wall-clock budget."""


@dataclass(frozen=True)
class Pruning:
    forward: bool = True
    odd_girth: bool = True
    cycles: bool = True
    degree: bool = True


@dataclass
class HomProblem:
    source: object
    target: object
    mode: str = "enumerate"
    limit: int | None = None
    injective: bool = False
    fixed: dict = field(default_factory=dict)
    pruning: Pruning = field(default_factory=Pruning)
    budget: float | None = None
    predicate: Callable | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class SearchResult:
    solutions: list
    count: int
    nodes: int
    elapsed: float


def _or_all(masks) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def _colours_ok(src_rel, tgt_rel) -> bool:
    return set(src_rel) <= set(tgt_rel)


def odd_cycles(g: Graph, length: int, limit: int | None = None) -> list[tuple[int, ...]] | None:
    """All cycles of the given length, each listed once from its least vertex.

    Returns ``None`` if more than ``limit`` cycles exist.
    """
    rows = g.rows
    out = []
    half = length // 2 + 1
    for s in range(g.n):
        # distance to s, restricted to vertices >= s, up to the radius that matters
        dist = {s: 0}
        frontier = [s]
        allowed = ~((1 << s) - 1)
        for d in range(1, half + 1):
            nxt = []
            for v in frontier:
                for u in iter_bits(rows[v] & allowed):
                    if u not in dist:
                        dist[u] = d
                        nxt.append(u)
            frontier = nxt
        path = [s]
        on_path = 1 << s

        def extend(v, remaining):
            nonlocal on_path
            if remaining == 0:
                if (rows[v] >> s) & 1 and path[1] < path[-1]:
                    out.append(tuple(path))
                return
            for u in iter_bits(rows[v] & allowed & ~on_path):
                du = dist.get(u)
                if du is None or du > remaining:
                    continue
                path.append(u)
                on_path |= 1 << u
                extend(u, remaining - 1)
                on_path &= ~(1 << u)
                path.pop()

        extend(s, length - 1)
        if limit is not None and len(out) > limit:
            return None
    return out


class _Engine:
    def __init__(self, p: HomProblem):
        self.p = p
        # the budget covers setup as well as search
        self.deadline = None if p.budget is None else time.monotonic() + p.budget
        src, tgt = p.source, p.target
        self.ns, self.nt = src.n, tgt.n
        srel, trel = src.relations(), tgt.relations()
        self.empty = not _colours_ok(srel, trel)
        self.same = src is tgt
        full = (1 << self.nt) - 1
        dom = [full] * self.ns
        cons: list[list[tuple[int, tuple]]] = [[] for _ in range(self.ns)]
        degree = [0] * self.ns
        for c, (sout, sin) in srel.items():
            if c not in trel:
                continue
            tout, tin = trel[c]
            symmetric = sout == sin and tout == tin
            has_out = 0
            has_in = 0
            loops = 0
            for w in range(self.nt):
                if tout[w]:
                    has_out |= 1 << w
                if tin[w]:
                    has_in |= 1 << w
                if (tout[w] >> w) & 1:
                    loops |= 1 << w
            for v in range(self.ns):
                row = sout[v]
                if row:
                    dom[v] &= has_out
                if sin[v]:
                    dom[v] &= has_in
                if (row >> v) & 1:
                    dom[v] &= loops
                for u in iter_bits(row & ~(1 << v)):
                    cons[v].append((u, tout))
                degree[v] += row.bit_count() + sin[v].bit_count()
                if not symmetric:
                    for u in iter_bits(sin[v] & ~(1 << v)):
                        cons[v].append((u, tin))
        self.cons = cons
        self.degree = degree
        pr = p.pruning
        self.cycles_src: list[list] = [[] for _ in range(self.ns)]
        self.cycles_tgt: dict = {}
        if isinstance(src, Graph) and isinstance(tgt, Graph) and pr.odd_girth:
            og_s, og_t = odd_girth(src), odd_girth(tgt)
            if og_s is not None and (og_t is None or og_s < og_t):
                self.empty = True
            elif og_s is not None:
                vs = vertex_odd_girths(src)
                vt = vs if self.same else vertex_odd_girths(tgt)
                by_len: dict[int, int] = {}
                for w in range(self.nt):
                    if vt[w] is not None:
                        by_len[vt[w]] = by_len.get(vt[w], 0) | (1 << w)
                upto: dict[int, int] = {}
                for v in range(self.ns):
                    if vs[v] is None:
                        continue
                    if vs[v] not in upto:
                        upto[vs[v]] = _or_all(m for k, m in by_len.items() if k <= vs[v])
                    if upto[vs[v]] != full:
                        dom[v] &= upto[vs[v]]
                self._check_setup()
        if (isinstance(src, Graph) and isinstance(tgt, Graph) and pr.cycles and pr.forward
                and not self.empty):
            self._build_cycles(src, tgt)
            self._check_setup()
        if p.injective and pr.degree:
            tdeg = [0] * self.nt
            for c, (tout, tin) in trel.items():
                if c in srel:
                    for w in range(self.nt):
                        tdeg[w] += tout[w].bit_count() + tin[w].bit_count()
            by_deg: dict[int, int] = {}
            for w in range(self.nt):
                by_deg[tdeg[w]] = by_deg.get(tdeg[w], 0) | (1 << w)
            allowed: dict[int, int] = {}
            for v in range(self.ns):
                k = degree[v]
                if k not in allowed:
                    allowed[k] = by_deg.get(k, 0) if self.same else _or_all(
                        m for t, m in by_deg.items() if t >= k)
                if allowed[k] != full:
                    dom[v] &= allowed[k]
        if any(d == 0 for d in dom):
            self.empty = True
        self.dom0 = dom
        self.assigned = [-1] * self.ns

    def _check_setup(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"budget of {self.p.budget}s exhausted during setup")

    def _build_cycles(self, src: Graph, tgt: Graph) -> None:
        length = odd_girth(tgt)
        # triangles add nothing beyond forward checking
        if length is None or length == 3 or odd_girth(src) != length:
            return
        tc = odd_cycles(tgt, length, MAX_CYCLE_ENTRIES // (2 * length))
        sc = tc if self.same else odd_cycles(src, length, MAX_CYCLE_ENTRIES // (2 * length))
        if tc is None or sc is None:
            return
        table: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        for cyc in tc:
            for seq in (cyc, cyc[::-1]):
                for i in range(length):
                    rot = seq[i:] + seq[:i]
                    table.setdefault((rot[0], rot[1]), []).append(rot)
        self.cycles_tgt = table
        for cyc in sc:
            for pos, v in enumerate(cyc):
                self.cycles_src[v].append((cyc, pos))

    # ---------------------------------------------------------------- search

    def run(self, root_values: list[int] | None = None) -> SearchResult:
        t0 = time.monotonic()
        self.solutions = []
        self.count = 0
        self.nodes = 0
        self.stop = False
        if self.empty:
            return SearchResult([], 0, 0, 0.0)
        self.dom = list(self.dom0)
        self.assigned = [-1] * self.ns
        self.used = 0
        self.trail: list = []
        self.frontier: dict[int, None] = {}
        self.n_assigned = 0
        old_limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old_limit, 4 * self.ns + 1000))
        try:
            ok = True
            for v, w in self.p.fixed.items():
                if not (self.dom[v] >> w) & 1 or not self._assign(v, w):
                    ok = False
                    break
            if ok:
                if root_values is not None:
                    root = self._root()
                    for w in root_values:
                        if self.stop:
                            break
                        if not (self.dom[root] >> w) & 1:
                            continue
                        mark = len(self.trail)
                        if self._assign(root, w):
                            self._search()
                        self._undo(mark)
                else:
                    self._search()
        finally:
            sys.setrecursionlimit(old_limit)
        return SearchResult(self.solutions, self.count, self.nodes, time.monotonic() - t0)

    def _root(self) -> int:
        best, bdeg = -1, -1
        for v in range(self.ns):
            if self.assigned[v] < 0 and self.degree[v] > bdeg:
                best, bdeg = v, self.degree[v]
        return best

    def _pick(self) -> int:
        best, size = -1, None
        dom = self.dom
        for v in self.frontier:
            s = dom[v].bit_count()
            if size is None or s < size:
                best, size = v, s
                if s <= 2:
                    break
        if best < 0:
            best = self._root()
        return best

    def _undo(self, mark: int) -> None:
        trail = self.trail
        dom, assigned, frontier = self.dom, self.assigned, self.frontier
        while len(trail) > mark:
            kind, v, val = trail.pop()
            if kind == 0:
                dom[v] = val
            elif kind == 1:
                assigned[v] = -1
                self.n_assigned -= 1
                frontier[v] = None
                if self.p.injective:
                    self.used &= ~(1 << val)
            else:
                del frontier[v]

    def _restrict(self, u: int, mask: int, queue: list) -> bool:
        d = self.dom[u]
        nd = d & mask
        if nd == d:
            return True
        if not nd:
            return False
        self.trail.append((0, u, d))
        self.dom[u] = nd
        if u not in self.frontier:
            self.frontier[u] = None
            self.trail.append((2, u, None))
        if nd & (nd - 1) == 0:
            queue.append(u)
        return True

    def _assign(self, v: int, w: int) -> bool:
        queue = [(v, w)]
        assigned = self.assigned
        forward = self.p.pruning.forward
        injective = self.p.injective
        while queue:
            item = queue.pop()
            if isinstance(item, tuple):
                v, w = item
            else:
                v = item
                if assigned[v] >= 0:
                    continue
                w = self.dom[v].bit_length() - 1
            if assigned[v] >= 0:
                if assigned[v] != w:
                    return False
                continue
            if injective:
                if (self.used >> w) & 1:
                    return False
                self.used |= 1 << w
            assigned[v] = w
            self.n_assigned += 1
            if v in self.frontier:
                del self.frontier[v]
                self.trail.append((1, v, w))
            else:
                # mark as "was not in frontier": undo re-adds, so add a removal marker first
                self.frontier[v] = None
                self.trail.append((2, v, None))
                del self.frontier[v]
                self.trail.append((1, v, w))
            if forward:
                for u, rows in self.cons[v]:
                    a = assigned[u]
                    if a >= 0:
                        if not (rows[w] >> a) & 1:
                            return False
                    elif not self._restrict(u, rows[w], queue):
                        return False
            else:
                for u, rows in self.cons[v]:
                    a = assigned[u]
                    if a >= 0 and not (rows[w] >> a) & 1:
                        return False
            for cyc, pos in self.cycles_src[v]:
                length = len(cyc)
                for step in (1, -1):
                    b = assigned[cyc[(pos + step) % length]]
                    if b < 0:
                        continue
                    seqs = self.cycles_tgt.get((w, b))
                    if not seqs:
                        return False
                    for q in range(2, length):
                        u = cyc[(pos + step * q) % length]
                        mask = 0
                        for seq in seqs:
                            mask |= 1 << seq[q]
                        a = assigned[u]
                        if a >= 0:
                            if not (mask >> a) & 1:
                                return False
                        elif not self._restrict(u, mask, queue):
                            return False
        return True

    def _search(self) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % 512 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"budget of {self.p.budget}s exhausted after {self.nodes} nodes")
        if self.n_assigned == self.ns:
            self._emit()
            return
        v = self._pick()
        values = list(iter_bits(self.dom[v]))
        if self.p.mode == "find_nonidentity" and v in values[:-1]:
            values.remove(v)
            values.append(v)
        for w in values:
            if self.p.injective and (self.used >> w) & 1:
                continue
            mark = len(self.trail)
            if self._assign(v, w):
                self._search()
            self._undo(mark)
            if self.stop:
                return

    def _emit(self) -> None:
        sol = tuple(self.assigned)
        p = self.p
        if p.mode == "find_nonidentity" and sol == tuple(range(self.ns)):
            return
        if p.predicate is not None and not p.predicate(sol):
            return
        self.count += 1
        if p.mode != "count":
            self.solutions.append(sol)
        if p.mode in ("find_first", "find_nonidentity") or (p.limit is not None and self.count >= p.limit):
            self.stop = True


def _worker(args):
    problem, root_values = args
    return _Engine(problem).run(root_values)


def solve(p: HomProblem, jobs: int = 1) -> SearchResult:
    """Run a homomorphism search; output is independent of ``jobs``."""
    eng = _Engine(p)
    if jobs <= 1 or eng.empty:
        res = eng.run()
    else:
        root = eng._root() if not p.fixed else None
        if root is None or root < 0:
            res = eng.run()
        else:
            values = list(iter_bits(eng.dom0[root]))
            chunks = [values[k::jobs] for k in range(jobs) if values[k::jobs]]
            with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
                parts = list(pool.map(_worker, [(p, c) for c in chunks]))
            sols = sorted(s for r in parts for s in r.solutions)
            count = sum(r.count for r in parts)
            res = SearchResult(sols, count, sum(r.nodes for r in parts), max(r.elapsed for r in parts))
    res.solutions.sort()
    if p.limit is not None and p.mode != "count":
        res.solutions = res.solutions[:p.limit]
        res.count = min(res.count, p.limit)
    if p.mode in ("find_first", "find_nonidentity"):
        res.solutions = res.solutions[:1]
        res.count = min(res.count, 1)
    return res


# ---------------------------------------------------------------- convenience wrappers

def enumerate_homs(source, target, limit=None, pruning=Pruning(), budget=None, jobs=1) -> list[tuple[int, ...]]:
    return solve(HomProblem(source, target, "enumerate", limit, pruning=pruning, budget=budget), jobs).solutions


def count_homs(source, target, pruning=Pruning(), budget=None, jobs=1) -> int:
    return solve(HomProblem(source, target, "count", pruning=pruning, budget=budget), jobs).count


def find_hom(source, target, pruning=Pruning(), budget=None, fixed=None):
    sols = solve(HomProblem(source, target, "find_first", fixed=fixed or {}, pruning=pruning,
                            budget=budget)).solutions
    return sols[0] if sols else None


def nonidentity_endomorphism(x, budget=None, pruning=Pruning(), jobs=1):
    sols = solve(HomProblem(x, x, "find_nonidentity", pruning=pruning, budget=budget), jobs).solutions
    return sols[0] if sols else None


def is_rigid(x, budget=None, jobs=1) -> bool:
    """True iff the identity is the only endomorphism."""
    return nonidentity_endomorphism(x, budget=budget, jobs=jobs) is None


def automorphisms(x, budget=None) -> list[tuple[int, ...]]:
    return solve(HomProblem(x, x, "enumerate", injective=True, budget=budget)).solutions


def nonidentity_automorphism(x, budget=None):
    sols = solve(HomProblem(x, x, "find_nonidentity", injective=True, budget=budget)).solutions
    return sols[0] if sols else None


def is_asymmetric(x, budget=None) -> bool:
    return nonidentity_automorphism(x, budget=budget) is None


def is_core(x, budget=None) -> bool:
    """True iff every endomorphism is a bijection."""
    n = x.n
    p = HomProblem(x, x, "find_first", budget=budget, predicate=lambda s: len(set(s)) < n)
    return not solve(p).solutions


def mutually_rigid(family, budget=None) -> bool:
    if len(family) < 2:
        raise ValueError("a family needs at least two members")
    for x in family:
        if not is_rigid(x, budget=budget):
            return False
    for a, x in enumerate(family):
        for b, y in enumerate(family):
            if a != b and find_hom(x, y, budget=budget) is not None:
                return False
    return True


# ---------------------------------------------------------------- endomorphism monoids

@dataclass(frozen=True)
class EndMonoid:
    elements: tuple[tuple[int, ...], ...]
    table: tuple[tuple[int, ...], ...]
    identity: int

    def __len__(self):
        return len(self.elements)

    def as_monoid(self):
        from .monoids import Monoid
        return Monoid(self.table, self.identity)


def compose(f, g) -> tuple[int, ...]:
    """``f o g``: apply ``g`` first."""
    return tuple(f[x] for x in g)


def end_monoid(x, budget=None) -> EndMonoid:
    elems = tuple(enumerate_homs(x, x, budget=budget))
    index = {e: k for k, e in enumerate(elems)}
    table = tuple(tuple(index[compose(f, g)] for g in elems) for f in elems)
    return EndMonoid(elems, table, index[tuple(range(x.n))])


def _profile(m, a: int) -> tuple:
    t = m.table
    n = m.n
    idem = t[a][a] == a
    unit = any(t[a][b] == m.identity and t[b][a] == m.identity for b in range(n))
    left = len({t[a][b] for b in range(n)})
    right = len({t[b][a] for b in range(n)})
    power = a
    order = 1
    seen = {a}
    while True:
        power = t[power][a]
        if power in seen:
            break
        seen.add(power)
        order += 1
    return (a == m.identity, idem, unit, left, right, order)


def monoid_iso(A, B) -> tuple[int, ...] | None:
    """A multiplication- and identity-preserving bijection ``A -> B``, or ``None``."""
    if A.n != B.n:
        return None
    n = A.n
    pa = [_profile(A, a) for a in range(n)]
    pb = [_profile(B, b) for b in range(n)]
    if sorted(pa) != sorted(pb):
        return None
    cand = [[b for b in range(n) if pb[b] == pa[a]] for a in range(n)]
    order = sorted(range(n), key=lambda a: len(cand[a]))
    f = [-1] * n
    used = [False] * n

    def consistent() -> bool:
        for a in range(n):
            if f[a] < 0:
                continue
            for b in range(n):
                if f[b] < 0:
                    continue
                c = A.table[a][b]
                if f[c] >= 0 and f[c] != B.table[f[a]][f[b]]:
                    return False
        return True

    def rec(k: int) -> bool:
        if k == n:
            return True
        a = order[k]
        for b in cand[a]:
            if used[b]:
                continue
            f[a] = b
            used[b] = True
            if consistent() and rec(k + 1):
                return True
            f[a] = -1
            used[b] = False
        return False

    return tuple(f) if rec(0) else None
