"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 budget exhausted (an exact request
degraded to a lower bound), 3 usage error.  Results go to stdout, diagnostics
to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import bounds, engine, families, lemmas, rooted
from .graphs import (Graph, GraphError, as_bipartite, bfs_layers,
                     edgelist_decode, edgelist_encode, graph6_decode,
                     graph6_encode, make_bipgraph, make_graph)
from .patterns import contains, count_copies, count_embeddings

EXIT_OK, EXIT_DOMAIN, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def load_graph(source: str) -> Graph:
    """Resolve a graph argument: file path, family shortcut, or graph6."""
    if os.path.exists(source):
        with open(source) as f:
            text = f.read().strip()
        if "\n" in text or " " in text:
            return edgelist_decode(text)
        return graph6_decode(text)
    try:
        return families.pattern_by_name(source)
    except GraphError:
        pass
    try:
        return graph6_decode(source)
    except GraphError:
        raise GraphError(
            f"cannot resolve graph {source!r} (not a file, shortcut, or graph6)")


def load_tree(source: str, roots_flag: str | None) -> rooted.RootedTree:
    name = source.lower()
    parts = name.split("-")
    if name == "comb3":
        return families.comb3()
    if parts[0] == "double" and len(parts) == 3 and parts[1] == "star":
        return families.double_star(int(parts[2]))
    if parts[0] == "spider" and len(parts) == 3:
        return families.spider(int(parts[1]), int(parts[2]))
    g = load_graph(source)
    if roots_flag is None:
        raise GraphError("custom trees need --roots")
    roots = [int(x) for x in roots_flag.split(",") if x.strip() != ""]
    return rooted.make_rooted_tree(g, roots)


def emit_graph(g: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return graph6_encode(g)
    if fmt == "edgelist":
        return edgelist_encode(g)
    raise GraphError(f"unknown graph format {fmt!r}")


def _ledger(args) -> engine.Ledger | None:
    path = getattr(args, "ledger", None) or os.environ.get(engine.LEDGER_ENV)
    return engine.Ledger(path) if path else None


def _budget(args) -> engine.Budget:
    return engine.Budget(max_nodes=getattr(args, "max_nodes", None),
                         max_seconds=getattr(args, "timeout", None))


def _bipartite(g: Graph):
    bip = as_bipartite(g)
    if bip is None:
        raise GraphError("graph is not bipartite")
    return bip


def _print(s: str):
    sys.stdout.write(s if s.endswith("\n") else s + "\n")


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def cmd_family(args) -> int:
    if args.name in families.FAMILY_NAMES:
        params = {k: getattr(args, k) for k in ("k", "p", "s", "t", "len")
                  if getattr(args, k) is not None}
        spec = families.FamilySpec(args.name, params)
        g = families.build_family(spec)
        if args.format == "json":
            rec = spec.to_dict()
            rec["graph6"] = graph6_encode(g)
            _print(json.dumps(rec, sort_keys=True))
            return EXIT_OK
    else:
        g = families.pattern_by_name(args.name)
        if args.format == "json":
            _print(json.dumps({"name": args.name,
                               "graph6": graph6_encode(g)}, sort_keys=True))
            return EXIT_OK
    _print(emit_graph(g, args.format))
    return EXIT_OK


def cmd_balanced(args) -> int:
    t = load_tree(args.tree, args.roots)
    _print(json.dumps(rooted.is_balanced(t).to_dict(), sort_keys=True))
    return EXIT_OK


def cmd_contains(args) -> int:
    host = load_graph(args.host)
    pattern = load_graph(args.pattern)
    emb = contains(host, pattern)
    if args.format == "json":
        rec = {"found": emb is not None,
               "mapping": emb.pairs() if emb else None}
        _print(json.dumps(rec, sort_keys=True))
    elif emb is None:
        _print("not found")
    else:
        _print(" ".join(f"{a}->{b}" for a, b in emb.pairs()))
    return EXIT_OK


def cmd_count(args) -> int:
    host = load_graph(args.host)
    pattern = load_graph(args.pattern)
    rec = {"copies": count_copies(host, pattern),
           "embeddings": count_embeddings(host, pattern)}
    _print(json.dumps(rec, sort_keys=True))
    return EXIT_OK


def _extremal(args, res: engine.ExtremalResult, want_exact: bool) -> int:
    led = _ledger(args)
    if led is not None:
        led.append(res)
    _print(res.to_json())
    if want_exact and res.mode != "exact":
        print("budget exhausted; result degraded to a lower bound",
              file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_ex(args) -> int:
    pattern = load_graph(args.pattern)
    led = _ledger(args)
    if args.mode == "exact" and led is not None:
        from .graphs import canonical_key
        rec = led.lookup(canonical_key(pattern), (args.n,), "exact")
        if rec is not None:
            _print(rec.to_json())
            return EXIT_OK
    if args.mode == "lower":
        res = engine.ex_lower(args.n, pattern, seed=args.seed)
    else:
        res = engine.ex_exact(args.n, pattern, budget=_budget(args),
                              seed=args.seed, allow_large=args.allow_large)
    return _extremal(args, res, args.mode == "exact")


def cmd_z(args) -> int:
    pattern = load_graph(args.pattern)
    led = _ledger(args)
    if args.mode == "exact" and led is not None:
        from .graphs import canonical_key
        rec = led.lookup(canonical_key(pattern), (args.m, args.n), "exact")
        if rec is not None:
            _print(rec.to_json())
            return EXIT_OK
    if args.mode == "lower":
        res = engine.z_lower(args.m, args.n, pattern, seed=args.seed)
    else:
        res = engine.z_exact(args.m, args.n, pattern, budget=_budget(args),
                             seed=args.seed)
    return _extremal(args, res, args.mode == "exact")


def cmd_oracle(args) -> int:
    pattern = load_graph(args.pattern)
    if args.m is not None:
        value = engine.oracle_z_bruteforce(args.m, args.n, pattern)
        orders = [args.m, args.n]
    else:
        value = engine.oracle_ex_bruteforce(args.n, pattern)
        orders = [args.n]
    _print(json.dumps({"orders": orders, "value": value}, sort_keys=True))
    return EXIT_OK


def cmd_verify(args) -> int:
    lemma = args.lemma
    if lemma == "maxcut":
        g = load_graph(args.graph)
        bip = lemmas.bipartite_half(g)
        rec = {"lemma_id": "maxcut", "edges_in": g.edge_count,
               "edges_kept": bip.edge_count,
               "part_a": sorted(bip.part_a), "part_b": sorted(bip.part_b),
               "holds": 2 * bip.edge_count >= g.edge_count}
    elif lemma == "mindeg":
        g = load_graph(args.graph)
        sub = lemmas.min_degree_subgraph(g)
        rec = {"lemma_id": "mindeg", "graph6": graph6_encode(sub),
               "vertices": sorted(sub.origin) if sub.origin else list(range(sub.n)),
               "min_degree": min(sub.degrees()),
               "threshold": str(Fraction(g.edge_count, g.n)), "holds": True}
    elif lemma == "bipprune":
        bip = _bipartite(load_graph(args.graph))
        out = lemmas.bipartite_degree_prune(bip)
        rec = {"lemma_id": "bipprune", "edges_in": bip.edge_count,
               "edges_kept": out.edge_count,
               "part_a": sorted(out.part_a), "part_b": sorted(out.part_b),
               "holds": 2 * out.edge_count >= bip.edge_count}
    elif lemma == "almostreg":
        g = load_graph(args.graph)
        out = lemmas.almost_regular_extract(g, Fraction(args.lam))
        degs = out.degrees()
        rec = {"lemma_id": "almostreg", "graph6": graph6_encode(out),
               "edges": out.edge_count, "max_degree": max(degs),
               "min_degree": min(degs),
               "holds": max(degs) <= Fraction(args.lam) * min(degs)}
    elif lemma == "match-count":
        rec = lemmas.verify_matching_count(_bipartite(load_graph(args.graph)),
                                           args.t).to_dict()
    elif lemma == "h1t-count":
        rec = lemmas.verify_H1t_count(_bipartite(load_graph(args.graph)),
                                      args.t).to_dict()
    elif lemma == "correlated":
        rec = lemmas.verify_correlated(_bipartite(load_graph(args.graph)),
                                       args.s, args.t).to_dict()
    elif lemma == "cube-audit":
        rec = lemmas.cube_proof_audit(_bipartite(load_graph(args.graph)),
                                      args.s, args.t)
    elif lemma == "treelayer":
        if args.graph is None:
            rec = lemmas.treelayer_exhaustive(args.k, args.p, args.a, args.b,
                                              args.t)
        else:
            tree = load_graph(args.tree_graph)
            g = load_graph(args.graph)
            layer = set(bfs_layers(tree, args.root)[args.t])
            touched = {v for v in range(g.n) if g.adj[v]}
            bip = make_bipgraph(g, layer, touched - layer)
            rec = lemmas.verify_treelayer(tree, args.root, args.t, bip,
                                          args.k, args.p).to_dict()
    elif lemma == "bfs":
        rec = lemmas.bfs_layer_report(_bipartite(load_graph(args.graph)),
                                      args.root, args.k, args.p)
    elif lemma == "comb":
        rec = lemmas.comb_decompose_verify(load_graph(args.graph), args.p)
    else:
        raise GraphError(f"unknown lemma {lemma!r}")
    _print(json.dumps(rec, sort_keys=True))
    return EXIT_OK


def cmd_bound(args) -> int:
    params = {k: getattr(args, k) for k in
              ("k", "p", "s", "t", "m", "n", "num", "den")
              if getattr(args, k) is not None}
    if args.C is not None:
        params["C"] = args.C
    bv = bounds.eval_bound(bounds.BoundSpec(args.name, params))
    _print(json.dumps({"value": bv.value, "exact": bv.exact,
                       "conditional": bv.conditional}, sort_keys=True))
    return EXIT_OK


def _parse_orders(text: str) -> list[tuple[int, ...]]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if "x" in item:
            a, b = item.split("x")
            out.append((int(a), int(b)))
        else:
            out.append((int(item),))
    return out


def cmd_compare(args) -> int:
    pattern = load_graph(args.pattern)
    params = {k: getattr(args, k) for k in ("k", "p", "s", "t", "num", "den")
              if getattr(args, k) is not None}
    if args.C is not None:
        params["C"] = args.C
    rows = bounds.compare_exact_vs_bound(pattern, args.bound, params,
                                         _parse_orders(args.orders),
                                         ledger=_ledger(args),
                                         budget=_budget(args),
                                         seed=args.seed)
    _print(bounds.rows_to_csv(rows))
    return EXIT_OK


def cmd_bfs_report(args) -> int:
    rec = lemmas.bfs_layer_report(_bipartite(load_graph(args.graph)),
                                  args.root, args.k, args.p)
    _print(json.dumps(rec, sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument wiring
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    top = _Parser(prog="turankit",
                  description="Extremal graph constructions, searches and "
                              "lemma verifiers at desk scale.")
    sub = top.add_subparsers(dest="command", required=True,
                             parser_class=_Parser)

    def add_common_search(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--timeout", type=float, default=None,
                       help="search budget in seconds")
        p.add_argument("--max-nodes", type=int, default=None)
        p.add_argument("--ledger", default=None,
                       help=f"JSONL ledger path (default ${engine.LEDGER_ENV})")

    p = sub.add_parser("family", help="emit a named graph family member")
    p.add_argument("--name", required=True)
    for flag in ("--k", "--p", "--s", "--t", "--len"):
        p.add_argument(flag, type=int, default=None)
    p.add_argument("--format", default="graph6",
                   choices=("graph6", "edgelist", "json"))
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("balanced", help="rooted-tree density report")
    p.add_argument("--tree", required=True)
    p.add_argument("--roots", default=None, help="comma separated root list")
    p.set_defaults(func=cmd_balanced)

    p = sub.add_parser("contains", help="find one pattern embedding")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--format", default="pairs", choices=("pairs", "json"))
    p.set_defaults(func=cmd_contains)

    p = sub.add_parser("count", help="count unlabeled pattern copies")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("ex", help="Turan number search")
    p.add_argument("--pattern", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", default="exact", choices=("exact", "lower"))
    p.add_argument("--allow-large", action="store_true")
    add_common_search(p)
    p.set_defaults(func=cmd_ex)

    p = sub.add_parser("z", help="bipartite (Zarankiewicz) search")
    p.add_argument("--pattern", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", default="exact", choices=("exact", "lower"))
    add_common_search(p)
    p.set_defaults(func=cmd_z)

    p = sub.add_parser("oracle", help="independent brute-force value")
    p.add_argument("--pattern", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run a lemma verifier")
    p.add_argument("--lemma", required=True,
                   choices=("maxcut", "mindeg", "bipprune", "almostreg",
                            "match-count", "h1t-count", "correlated",
                            "cube-audit", "treelayer", "bfs", "comb"))
    p.add_argument("--graph", default=None)
    p.add_argument("--tree-graph", default=None)
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--lam", default="2")
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--a", type=int, default=3)
    p.add_argument("--b", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="evaluate a closed-form bound")
    p.add_argument("--name", required=True, choices=bounds.BOUND_NAMES)
    for flag in ("--k", "--p", "--s", "--t", "--m", "--n", "--num", "--den"):
        p.add_argument(flag, type=int, default=None)
    p.add_argument("--C", type=float, default=None)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("compare", help="exact values against a bound (CSV)")
    p.add_argument("--pattern", required=True)
    p.add_argument("--bound", required=True, choices=bounds.BOUND_NAMES)
    p.add_argument("--orders", required=True,
                   help="comma list: n for ex, mxn for z (e.g. 4,5,3x3)")
    for flag in ("--k", "--p", "--s", "--t", "--num", "--den"):
        p.add_argument(flag, type=int, default=None)
    p.add_argument("--C", type=float, default=None)
    add_common_search(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bfs-report", help="layer growth diagnostics")
    p.add_argument("--graph", required=True)
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--p", type=int, default=2)
    p.set_defaults(func=cmd_bfs_report)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except engine.LedgerLocked as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
