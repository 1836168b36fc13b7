"""Command line interface: ``rigidgraphs <command> ...``.

Every command exits with status 0 only if all the checks it ran passed.
"""

from __future__ import annotations

import argparse
import functools
import json
import random
import sys
import time

from . import core
from .core import FormatError, Graph, Indicator, RelSystem, emit_d6, emit_g6, emit_system


# ---------------------------------------------------------------- I/O helpers

def read_object(path: str):
    """A graph, digraph or relational system from g6, d6 or JSON."""
    text = sys.stdin.read() if path == "-" else open(path).read()
    text = text.strip()
    if text.startswith("{"):
        obj = json.loads(text)
        if "colours" in obj:
            return core.parse_system(text)
        return read_indicator_obj(obj).carrier
    line = text.splitlines()[0]
    if line.startswith("&") or line.startswith(">>digraph6<<"):
        return core.parse_d6(line)
    return core.parse_g6(line)


def read_indicator_obj(obj: dict) -> Indicator:
    if "graph" in obj:
        carrier = core.parse_g6(obj["graph"])
    elif "digraph" in obj:
        carrier = core.parse_d6(obj["digraph"])
    else:
        raise FormatError("indicator JSON needs a 'graph' or 'digraph' field")
    return Indicator(carrier, obj.get("in", 0), obj.get("out", 1))


def read_indicator(path: str) -> Indicator:
    return read_indicator_obj(json.load(open(path)))


def indicator_obj(ind: Indicator) -> dict:
    key, code = ("graph", emit_g6(ind.carrier)) if isinstance(ind.carrier, Graph) else ("digraph", emit_d6(ind.carrier))
    return {key: code, "in": ind.in_, "out": ind.out}


def encode(x) -> str:
    if isinstance(x, Graph):
        return emit_g6(x)
    if isinstance(x, RelSystem):
        return emit_system(x)
    return emit_d6(x)


def write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def report_lines(lines, ok: bool) -> int:
    for line in lines:
        print(line)
    print("OK" if ok else "FAILED")
    return 0 if ok else 1


# ---------------------------------------------------------------- commands

def cmd_check(a) -> int:
    from .homsearch import BudgetExceeded, is_asymmetric, is_rigid
    x = read_object(a.file)
    degs = core.degrees(x)
    ok = True
    print(f"vertices: {x.n}")
    print(f"degrees: {min(degs) if degs else 0}..{max(degs) if degs else 0}")
    if a.regular is not None:
        good = len(set(degs)) == 1 and degs[0] == a.regular
        ok &= good
        print(f"{a.regular}-regular: {good}")
    if isinstance(x, Graph):
        og = core.odd_girth(x)
        print(f"odd girth: {og}")
        if a.odd_girth is not None:
            ok &= og == a.odd_girth
    print(f"connected: {core.is_connected(x)}")
    try:
        if a.rigid:
            r = is_rigid(x, budget=a.budget, jobs=a.jobs)
            print(f"rigid: {r}")
            ok &= r
        if a.asymmetric:
            r = is_asymmetric(x, budget=a.budget)
            print(f"asymmetric: {r}")
            ok &= r
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}")
        ok = False
    return 0 if ok else 1


def cmd_construct(a) -> int:
    if a.what == "sausage":
        from .gadgets import build_sausage, expected_degrees
        s = build_sausage(a.d, a.ell, a.f)
        write(emit_d6(s.digraph), a.out)
        if a.names:
            with open(a.names, "w") as fh:
                json.dump(s.names, fh, indent=1)
        return 0 if core.degrees(s.digraph) == expected_degrees(s) else 1
    if a.what == "tiling":
        from .tiling import build_factor, build_tiling, check_tiling, find_U
        t = build_tiling(a.g, a.i)
        check_tiling(t)
        if not a.factor:
            write(emit_g6(t.graph), a.out)
            return 0
        U = find_U(t)
        if U is None:
            print(f"G({a.g},{a.i}) admits no valid U", file=sys.stderr)
            return 1
        f = build_factor(t, U)
        write("\n".join(emit_g6(x) for x in (f.T, f.Tprime, f.Tbar)), a.out)
        if a.sidecar:
            with open(a.sidecar, "w") as fh:
                json.dump({"U": list(f.u), "h": f.h, "antipode": t.antipode}, fh)
        return 0
    if a.what == "indicator":
        from .indicators import build_indicator, degree_law
        ind = build_indicator(a.d, a.g, a.cap)
        write(json.dumps(indicator_obj(ind)), a.out)
        return 0 if degree_law(ind, a.d) else 1
    if a.what == "family":
        from .indicators import rigid_family
        fam = rigid_family(a.d, a.g, a.count, a.cap)
        write("\n".join(emit_g6(x) for x in fam), a.out)
        return 0
    raise AssertionError(a.what)


def cmd_product(a) -> int:
    from . import products
    if a.kind in ("sip", "sipvec"):
        base = read_object(a.base)
        inds = [read_indicator(p) for p in a.indicators]
        res = (products.sip if a.kind == "sip" else products.sip_vec)(base, inds).result
    elif a.kind == "cartesian":
        res = products.cartesian(read_object(a.g1), read_object(a.h))
    else:
        f = [int(x) for x in a.f.split(",")]
        res = products.cartesian_variant(read_object(a.g1), read_object(a.g2), f, read_object(a.h))
    write(encode(res), a.out)
    return 0


def cmd_hom(a) -> int:
    from .homsearch import BudgetExceeded, HomProblem, Pruning, solve
    src, tgt = read_object(a.source), read_object(a.target)
    mode = "count" if a.action == "count" else "enumerate"
    pruning = Pruning() if not a.no_pruning else Pruning(False, False, False, False)
    try:
        res = solve(HomProblem(src, tgt, mode, a.limit, injective=a.injective, pruning=pruning,
                               budget=a.budget), a.jobs)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 1
    if a.action == "count":
        print(res.count)
    else:
        print(json.dumps([list(s) for s in res.solutions]))
    return 0


def cmd_homogenize(a) -> int:
    from .homogenize import homogenize, stages
    from .monoids import parse_monoid
    m = parse_monoid(open(a.monoid).read())
    s = homogenize(m)
    if a.trace:
        for st in stages(s):
            hist = {}
            for x in st.degrees():
                hist[x] = hist.get(x, 0) + 1
            print(f"{st.stage}: {st.n} vertices, {len(st.system.colours)} colours, degrees {dict(sorted(hist.items()))}")
            for line in st.trace:
                print(f"  {line}")
    ok = s.is_degree_constant() and len(s.endos) == m.n
    if a.verify:
        from .homsearch import enumerate_homs
        for st in stages(s):
            found = set(enumerate_homs(st.system, st.system, limit=m.n + 1, budget=a.budget))
            good = found == set(st.endos)
            print(f"{st.stage} ({st.n} vertices): End equals transported maps: {good}")
            ok &= good
    write(emit_system(s.system), a.out)
    return 0 if ok else 1


def cmd_represent(a) -> int:
    from .indicators import SizeCapExceeded
    from .monoids import parse_monoid
    from .pipeline import END_BUDGET, represent
    m = parse_monoid(open(a.monoid).read())
    try:
        budget = a.budget if a.budget is not None else END_BUDGET
        r = represent(m, a.g, cap=a.cap, budget=budget, certify_end=not a.no_certify)
    except SizeCapExceeded as exc:
        print(f"size cap exceeded: {exc}", file=sys.stderr)
        return 1
    print(f"d = {r.d}, g = {r.g}, {r.n} vertices")
    write(emit_g6(r.graph), a.out)
    return report_lines(r.certificates.lines(), r.certificates.passed)


def cmd_search(a) -> int:
    from . import generate, pipeline
    if a.which == "table1":
        cells = None
        if a.cells:
            cells = [tuple(int(x) for x in c.split(":")) for c in a.cells.split(",")]
        rows = pipeline.table1_rows(a.budget, cells)
        for c in rows:
            print(f"d={c.d} girth={c.girth}: asym {c.asym} rigid {c.rigid} "
                  f"(expected {c.expected[0]}/{c.expected[1]}) {c.status} [{c.seconds:.1f}s]")
        return 0 if all(c.status != "mismatch" for c in rows) else 1
    pred = "rigid" if a.which == "nu" else "asymmetric"
    if a.from_file:
        return _search_file(a, pred)
    verdicts = generate.search_nu(a.d, a.n_max, pred, n_min=a.n_min, girth=a.girth, budget=a.budget)
    for v in verdicts:
        print(f"n={v.n}: {v.graphs} graphs, {v.status}" + (f" {v.witness}" if v.witness else ""))
    best = pipeline.smallest_order(verdicts)
    print(f"smallest order: {best}")
    return 0


def _search_file(a, pred) -> int:
    from .generate import automorphism_group_order
    from .homsearch import is_rigid
    found = 0
    with open(a.from_file) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            g = core.parse_g6(line)
            if not g.is_regular(a.d) or not core.is_connected(g):
                continue
            ok = is_rigid(g) if pred == "rigid" else automorphism_group_order(g) == 1
            if ok:
                found += 1
                print(line)
    print(f"{found} {pred} graphs", file=sys.stderr)
    return 0


def cmd_verify(a) -> int:
    if a.what == "section3":
        from .pipeline import section3_suite
        rep = section3_suite(r_max=a.r_max, complements=a.complements, budget=a.budget)
        return report_lines(rep.lines(), rep.passed)
    if a.what == "lemma41":
        from .gadgets import hom_formula_mismatches
        ok = True
        for d in a.d or (3, 4):
            t0 = time.monotonic()
            n, bad = hom_formula_mismatches(d)
            print(f"d={d}: {n} pairs, {len(bad)} mismatches [{time.monotonic() - t0:.1f}s]")
            for row in bad[:10]:
                print(f"  {row}")
            ok &= not bad
        return 0 if ok else 1
    if a.what == "indicators":
        from .indicators import build_indicator, degree_law, indicator_hypotheses
        ok = True
        for d in a.d or (3, 4, 5):
            ind = build_indicator(d, a.g)
            rep = indicator_hypotheses(ind, a.g, budget=a.budget)
            law = degree_law(ind, d)
            status = "pass" if rep.passed and law else "partial" if rep.partial and law else "fail"
            print(f"S({d},{a.g}): {ind.n} vertices, {status}")
            for line in rep.lines():
                print(f"  {line}")
            ok &= status == "pass"
        if a.transport:
            ok &= _verify_transport(a)
        return 0 if ok else 1
    if a.what == "pipeline":
        return _verify_pipeline(a)
    raise AssertionError(a.what)


def _verify_transport(a) -> bool:
    from .indicators import build_indicator
    from .products import hom_transport_check, sip
    rng = random.Random(a.seed)
    S = build_indicator(3, a.g)
    ok = True
    for k in range(a.transport):
        D, D2 = random_system(rng), random_system(rng)
        rep = hom_transport_check(D, D2, S, budget=a.budget)
        P = sip(D, S).result
        good = rep.ok and P.is_regular(3) and core.odd_girth(P) == a.g
        print(f"transport {k}: |Hom(D,D')| = {rep.base_count}, product {rep.product_count}: {good}")
        ok &= good
    return ok


@functools.lru_cache(maxsize=None)
def _degree_systems(n: int, d: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Every one-colour arc set on n vertices with total degree d and in/out >= 1."""
    pairs = [(u, v) for u in range(n) for v in range(n)]
    out = []
    for mask in range(1 << len(pairs)):
        arcs = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        ins, outs = [0] * n, [0] * n
        for u, v in arcs:
            outs[u] += 1
            ins[v] += 1
        if all(ins[v] >= 1 and outs[v] >= 1 and ins[v] + outs[v] == d for v in range(n)):
            out.append(tuple(arcs))
    return tuple(out)


def random_system(rng: random.Random, max_n: int = 4, d: int = 3) -> RelSystem:
    """A random one-colour system with every total degree d and every in- and outdegree >= 1.

    With d odd the order has to be even, since the degrees sum to twice the arc count.
    """
    orders = [n for n in range(1, max_n + 1) if n * d % 2 == 0 and _degree_systems(n, d)]
    n = rng.choice(orders)
    return RelSystem(n, ["0"], {"0": list(rng.choice(_degree_systems(n, d)))})


def _verify_pipeline(a) -> int:
    from .homogenize import homogenize, stages
    from .homsearch import enumerate_homs
    from .monoids import monoids_up_to_iso
    ok = True
    for order in range(1, a.max_order + 1):
        for m in monoids_up_to_iso(order):
            s = homogenize(m)
            good = s.is_degree_constant()
            for st in stages(s):
                found = enumerate_homs(st.system, st.system, limit=m.n + 1, budget=a.budget)
                good &= set(found) == set(st.endos)
            print(f"{m.table}: final degree {s.degrees()[0]}, {s.n} vertices: {'pass' if good else 'fail'}")
            ok &= good
    return 0 if ok else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--budget", type=float, default=None, help="wall-clock seconds")
    common.add_argument("--seed", type=int, default=0, help="seed for random test corpora")

    p = argparse.ArgumentParser(prog="rigidgraphs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="properties of a g6/d6/JSON file")
    c.add_argument("file")
    c.add_argument("--regular", type=int)
    c.add_argument("--odd-girth", type=int)
    c.add_argument("--rigid", action="store_true")
    c.add_argument("--asymmetric", action="store_true")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("construct", help="build a gadget, tiling, indicator or family")
    cs = c.add_subparsers(dest="what", required=True)
    s = cs.add_parser("sausage", parents=[common])
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--f", required=True, help="string over +0-")
    s.add_argument("--names", help="write the vertex name table here")
    s = cs.add_parser("tiling", parents=[common])
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--factor", action="store_true")
    s.add_argument("--sidecar", help="JSON file for U, h and the antipode map")
    s = cs.add_parser("indicator", parents=[common])
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--cap", type=int, default=10**6)
    s = cs.add_parser("family", parents=[common])
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--cap", type=int, default=10**6)
    for s in cs.choices.values():
        s.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("product", help="šíp and Cartesian products")
    cs = c.add_subparsers(dest="kind", required=True)
    for name in ("sip", "sipvec"):
        s = cs.add_parser(name, parents=[common])
        s.add_argument("base")
        s.add_argument("indicators", nargs="+", help="indicator JSON files, one per colour")
    s = cs.add_parser("cartesian", parents=[common])
    s.add_argument("g1")
    s.add_argument("h")
    s = cs.add_parser("variant", parents=[common])
    s.add_argument("g1")
    s.add_argument("g2")
    s.add_argument("h")
    s.add_argument("--f", required=True, help="comma-separated 1/2 per vertex of H")
    for s in cs.choices.values():
        s.add_argument("--out")
    c.set_defaults(func=cmd_product)

    c = sub.add_parser("hom", help="count or list homomorphisms")
    cs = c.add_subparsers(dest="action", required=True)
    for name in ("count", "list"):
        s = cs.add_parser(name, parents=[common])
        s.add_argument("source")
        s.add_argument("target")
        s.add_argument("--injective", action="store_true")
        s.add_argument("--limit", type=int)
        s.add_argument("--no-pruning", action="store_true")
    c.set_defaults(func=cmd_hom)

    c = sub.add_parser("homogenize", parents=[common], help="degree-constant system for a monoid")
    c.add_argument("--monoid", required=True)
    c.add_argument("--out")
    c.add_argument("--trace", action="store_true")
    c.add_argument("--verify", action="store_true", help="compare every stage with the engine")
    c.set_defaults(func=cmd_homogenize)

    c = sub.add_parser("represent", parents=[common], help="regular graph with a given End")
    c.add_argument("--monoid", required=True)
    c.add_argument("--g", type=int, default=7)
    c.add_argument("--cap", type=int, default=10**6)
    c.add_argument("--no-certify", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_represent)

    c = sub.add_parser("search", help="smallest rigid / asymmetric regular graphs")
    cs = c.add_subparsers(dest="which", required=True)
    for name in ("nu", "mu"):
        s = cs.add_parser(name, parents=[common])
        s.add_argument("--d", type=int, required=True)
        s.add_argument("--n-max", type=int, required=True)
        s.add_argument("--n-min", type=int)
        s.add_argument("--girth", type=int)
        s.add_argument("--from-file", help="g6 stream to filter instead of generating")
    s = cs.add_parser("table1", parents=[common])
    s.add_argument("--cells", help="comma-separated d:girth pairs, e.g. 3:4,3:5")
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("verify", help="rerun the verification suites")
    cs = c.add_subparsers(dest="what", required=True)
    s = cs.add_parser("section3", parents=[common])
    s.add_argument("--r-max", type=int, default=20)
    s.add_argument("--complements", choices=["none", "small", "all"], default="small",
                   help="which complements to check for rigidity")
    s = cs.add_parser("lemma41", parents=[common])
    s.add_argument("--d", type=int, action="append")
    s = cs.add_parser("indicators", parents=[common])
    s.add_argument("--d", type=int, action="append")
    s.add_argument("--g", type=int, default=7)
    s.add_argument("--transport", type=int, default=0, help="number of random transport checks")
    s = cs.add_parser("pipeline", parents=[common])
    s.add_argument("--max-order", type=int, default=3)
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
