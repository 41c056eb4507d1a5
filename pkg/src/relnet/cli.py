"""Command-line front end: ``relnet solve|verify|exact|decompose|report``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .cactus import build_cactus, decomposition_json, st_chain
from .config import CapExceeded, default_caps
from .graph import Graph, GraphError, read_graph
from .model import Demand, OrdinaryDemand
from .oracle import exact_optimum, feasible_by_cut_cover, feasible_by_fault_enumeration
from .rsnd3 import merge_demands, solve_3rsnd, solve_sd3_componentwise
from .sdk import ratio_bound, solution_json, solve_sdk
from .separators import build_hierarchy
from .snd import all_pair_demands, solve_kefts

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(ValueError):
    pass


def parse_demands(text: str) -> list[Demand]:
    """Lines ``s t k``; ``#`` comments and blank lines are skipped.  Repeated
    pairs are merged, keeping the largest requirement."""
    out = []
    for i, line in enumerate(text.splitlines(), 1):
        parts = line.split("#", 1)[0].split()
        if not parts:
            continue
        if len(parts) != 3:
            raise InputError(f"demands line {i}: expected 's t k'")
        try:
            s, t, k = (int(p) for p in parts)
        except ValueError:
            raise InputError(f"demands line {i}: non-integer field in {line.strip()!r}") from None
        try:
            out.append(Demand(s, t, k))
        except ValueError as exc:
            raise InputError(f"demands line {i}: {exc}") from None
    return merge_demands(out)


def read_demands(path: str, G: Graph | None = None) -> list[Demand]:
    with open(path) as fh:
        ds = parse_demands(fh.read())
    if G is not None:
        for d in ds:
            if not (0 <= d.s < G.n and 0 <= d.t < G.n):
                raise InputError(f"demand {d.s} {d.t} {d.k} refers to a vertex outside 0..{G.n - 1}")
    return ds


def _dump(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _single(args, G) -> tuple[int, int, int]:
    if args.s is not None and args.t is not None:
        if args.k is None:
            raise InputError("--s/--t need --k")
        return args.s, args.t, args.k
    if not args.demands:
        raise InputError("give --demands or --s/--t/--k")
    ds = read_demands(args.demands, G)
    if len(ds) != 1:
        raise InputError(f"this problem takes exactly one demand, got {len(ds)}")
    d = ds[0]
    return d.s, d.t, args.k if args.k is not None else d.k


def cmd_solve(args) -> int:
    G = read_graph(args.graph)
    if args.problem == "kefts":
        if args.k is None:
            raise InputError("kefts needs --k")
        sol = solve_kefts(G, args.k)
        out = {"schema": 1, "problem": "kefts", "k": args.k, **sol.to_json(), "forced": sol.parts["forced"]}
    elif args.problem == "sdk":
        s, t, k = _single(args, G)
        sol = solve_sdk(G, s, t, k, peel_bridges=not args.no_peel)
        out = {"problem": "sdk", "s": s, "t": t, "k": k, **solution_json(G, sol, k)}
    else:
        if not args.demands:
            raise InputError("3rsnd needs --demands")
        ds = read_demands(args.demands, G)
        sol = solve_3rsnd(G, ds)
        out = {"schema": 1, "problem": "3rsnd", **sol.to_json(), "forced": sol.parts["forced"],
               "demands": [[d.s, d.t, d.k] for d in ds],
               "reduced_demands": [[d.s, d.t, d.k] for d in sol.parts["reduced_demands"]]}
        if args.cross_check:
            if len(ds) != 1:
                raise InputError("--cross-check needs a single demand")
            alt = solve_sd3_componentwise(G, ds[0].s, ds[0].t)
            out["componentwise"] = alt.to_json()
    _dump(out, args.output)
    return EXIT_OK


def _load_solution(path: str) -> list[int]:
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"solution file is not JSON: {exc}") from None
    edges = raw.get("edges") if isinstance(raw, dict) else raw
    if not isinstance(edges, list) or not all(isinstance(e, int) for e in edges):
        raise InputError("solution JSON needs an 'edges' list of integers")
    return edges


def cmd_verify(args) -> int:
    G = read_graph(args.graph)
    edges = _load_solution(args.solution)
    if any(not 0 <= e < G.m for e in edges):
        raise InputError("solution refers to edges outside the graph")
    if args.kefts is not None:
        ds = all_pair_demands(G.n, args.kefts)
    else:
        if not args.demands:
            raise InputError("verify needs --demands or --kefts")
        ds = read_demands(args.demands, G)
    caps = default_caps()
    if args.method == "cuts":
        rep = None
        for d in ds:
            rep = feasible_by_cut_cover(G, edges, d, caps)
            if not rep.feasible:
                break
    else:
        rep = feasible_by_fault_enumeration(G, edges, ds, caps)
    out = {"schema": 1, "method": args.method, **rep.to_json(timing=args.timing)}
    _dump(out, args.output)
    return EXIT_OK if rep.feasible else EXIT_INFEASIBLE


def cmd_exact(args) -> int:
    G = read_graph(args.graph)
    if args.kefts is not None:
        ds = all_pair_demands(G.n, args.kefts)
    else:
        if not args.demands:
            raise InputError("exact needs --demands or --kefts")
        ds = read_demands(args.demands, G)
    sol = exact_optimum(G, ds)
    _dump({"schema": 1, "problem": "exact", **sol.to_json(), "necessary": sol.parts["necessary"]}, args.output)
    return EXIT_OK


def cmd_decompose(args) -> int:
    G = read_graph(args.graph)
    s = 0 if args.s is None else args.s
    t = G.n - 1 if args.t is None else args.t
    if args.mode == "cactus":
        cac = build_cactus(G)
        try:
            chain = st_chain(cac, s, t)
        except OrdinaryDemand:
            chain = None
        out = decomposition_json(cac, chain)
        out.update({"s": s, "t": t})
    else:
        if args.k is None:
            raise InputError("--mode chain needs --k")
        out = build_hierarchy(G, s, t, args.k).to_json()
    _dump(out, args.output)
    return EXIT_OK


def cmd_report(args) -> int:
    from .corpus import atlas_graphs, random_multigraph, random_weights, rsnd_corpus
    import numpy as np

    rows = []
    caps = default_caps()
    if args.problem == "3rsnd":
        for inst in rsnd_corpus(args.seed, args.random)[: args.limit]:
            alg = solve_3rsnd(inst.G, inst.demands)
            k = max(d.k for d in inst.demands)
            rows.append(_row(inst.name, k, inst.G, alg.weight, lambda: exact_optimum(inst.G, inst.demands, caps), 2))
    elif args.problem == "sdk":
        rng = np.random.default_rng(args.seed)
        graphs = [(n, random_weights(G, rng)) for n, G in atlas_graphs()]
        graphs += [(f"random{i}", random_multigraph(rng)) for i in range(args.random)]
        for name, G in graphs[: args.limit]:
            for k in args.ks:
                s, t = 0, G.n - 1
                alg = solve_sdk(G, s, t, k)
                rows.append(_row(name, k, G, alg.weight,
                                 lambda: exact_optimum(G, [Demand(s, t, k)], caps), ratio_bound(k)))
    else:
        for name, G in atlas_graphs(two_edge_connected=False)[: args.limit]:
            for k in args.ks:
                alg = solve_kefts(G, k)
                rows.append(_row(name, k, G, alg.weight,
                                 lambda: exact_optimum(G, all_pair_demands(G.n, k), caps), 2))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["instance", "k", "alg_weight", "opt_weight", "ratio", "bound"])
    w.writerows(rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def _row(name, k, G, alg_w, opt_fn, bound):
    try:
        opt = opt_fn().weight
    except CapExceeded:
        return [name, k, f"{alg_w:g}", "", "", bound]
    ratio = alg_w / opt if opt > 0 else 1.0
    return [name, k, f"{alg_w:g}", f"{opt:g}", f"{ratio:.6f}", bound]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relnet", description="Relative survivable network design toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="run an approximation algorithm")
    sp.add_argument("--problem", choices=["3rsnd", "sdk", "kefts"], required=True)
    sp.add_argument("--graph", required=True)
    sp.add_argument("--demands")
    sp.add_argument("--k", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--no-peel", action="store_true", help="do not split recursive instances at bridges")
    sp.add_argument("--cross-check", action="store_true", help="also run the class-by-class 3-RSND pipeline")
    sp.add_argument("--output")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_solve)

    vp = sub.add_parser("verify", help="check a solution by brute force")
    vp.add_argument("--graph", required=True)
    vp.add_argument("--demands")
    vp.add_argument("--kefts", type=int, metavar="K", help="all-pairs requirement K instead of a demand file")
    vp.add_argument("--solution", required=True)
    vp.add_argument("--method", choices=["faults", "cuts"], default="faults")
    vp.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    vp.add_argument("--output")
    vp.set_defaults(func=cmd_verify)

    ep = sub.add_parser("exact", help="exhaustive optimum")
    ep.add_argument("--graph", required=True)
    ep.add_argument("--demands")
    ep.add_argument("--kefts", type=int, metavar="K")
    ep.add_argument("--output")
    ep.set_defaults(func=cmd_exact)

    dp = sub.add_parser("decompose", help="dump the cactus or the chain hierarchy")
    dp.add_argument("--graph", required=True)
    dp.add_argument("--mode", choices=["cactus", "chain"], default="cactus")
    dp.add_argument("--k", type=int)
    dp.add_argument("--s", type=int)
    dp.add_argument("--t", type=int)
    dp.add_argument("--output")
    dp.set_defaults(func=cmd_decompose)

    rp = sub.add_parser("report", help="ratio table over the seeded corpus (CSV)")
    rp.add_argument("--problem", choices=["3rsnd", "sdk", "kefts"], default="3rsnd")
    rp.add_argument("--seed", type=int, default=0)
    rp.add_argument("--random", type=int, default=200, help="number of random multigraphs")
    rp.add_argument("--limit", type=int, default=None, help="only the first N instances")
    rp.add_argument("--ks", type=int, nargs="+", default=[2, 3])
    rp.add_argument("--output")
    rp.set_defaults(func=cmd_report)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"relnet: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphError, InputError, OrdinaryDemand, OSError, ValueError) as exc:
        print(f"relnet: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
