"""Command line interface.

Exit codes: 0 success, 2 verification failure, 3 input error, 4 size limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import corpus
from .edgelist import ParseError, format_line_graph, read_edgelist
from .graph import GraphError, line_graph
from .oracle import DEFAULT_LIMITS, Limits, Mode, SizeLimitExceeded, max_disjoint_packing, tree_connectivity
from .sweep import run_sweep
from .transform import VerificationFailed, partition_terminal_edges, replay, terminal_vertex_set

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_INPUT = 3
EXIT_LIMIT = 4


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _keyvals(text: str) -> dict[str, str]:
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"expected key=value, got {item!r}")
        out[key.strip()] = val.strip()
    return out


def _span(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("-")
    return int(lo), int(hi or lo)


def parse_limits(text: str | None) -> Limits:
    if not text:
        return DEFAULT_LIMITS
    kv = _keyvals(text)
    unknown = set(kv) - {"nv", "ne", "nk"}
    if unknown:
        raise UsageError(f"unknown limit keys {sorted(unknown)}; use nv, ne, nk")
    return Limits(
        max_vertices=int(kv.get("nv", DEFAULT_LIMITS.max_vertices)),
        max_edges=int(kv.get("ne", DEFAULT_LIMITS.max_edges)),
        sweep_vertices=int(kv.get("nk", DEFAULT_LIMITS.sweep_vertices)),
    )


def _tree_json(t) -> dict:
    return {"vertices": sorted(t.vertices), "edges": t.sorted_edges()}


def _packing_json(p) -> dict:
    return {
        "terminals": sorted(p.terminals),
        "mode": p.mode.value,
        "count": p.count,
        "trees": [_tree_json(t) for t in p.trees],
    }


def _emit(args, payload: dict, human: list[str]) -> None:
    if args.format == "json":
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        sys.stdout.write("\n".join(human) + "\n")


def cmd_linegraph(args) -> int:
    g = read_edgelist(args.file)
    text = format_line_graph(line_graph(g))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_connectivity(args) -> int:
    g = read_edgelist(args.file)
    mode = Mode(args.mode)
    res = tree_connectivity(g, args.k, mode, args.limits)
    name = "lambda" if mode is Mode.EDGE else "kappa"
    payload = {
        "command": "connectivity",
        "k": res.k,
        "mode": mode.value,
        "value": res.value,
        "witness_min_set": sorted(res.witness_min_set),
        "witness_packing": _packing_json(res.witness_packing),
    }
    human = [
        f"{name}_{res.k} = {res.value}",
        f"minimising terminal set: {sorted(res.witness_min_set)}",
    ]
    human += [f"  tree {i}: edges {t.sorted_edges()}" for i, t in enumerate(res.witness_packing.trees)]
    _emit(args, payload, human)
    return EXIT_OK


def cmd_pack(args) -> int:
    g = read_edgelist(args.file)
    p = max_disjoint_packing(g, _int_list(args.terminals), Mode(args.mode), args.limits)
    human = [f"{p.count} {p.mode.value}-disjoint trees for terminals {sorted(p.terminals)}"]
    human += [f"  tree {i}: edges {t.sorted_edges()}" for i, t in enumerate(p.trees)]
    _emit(args, {"command": "pack", **_packing_json(p)}, human)
    return EXIT_OK


def cmd_transform(args) -> int:
    g = read_edgelist(args.file)
    edge_set = _int_list(args.edge_set)
    q = terminal_vertex_set(partition_terminal_edges(g, edge_set))
    packing = max_disjoint_packing(g, q, Mode.EDGE, args.limits)
    try:
        rp = replay(g, edge_set, packing)
    except VerificationFailed as exc:
        payload = {"command": "transform", "verified": False, "error": str(exc), "certificate": exc.certificate}
        _emit(args, payload, [f"VERIFICATION FAILED: {exc}", json.dumps(exc.certificate)])
        return EXIT_VERIFY
    p = rp.partition
    partition = {
        "case": p.case.value,
        "q1": sorted(p.q1),
        "q2": sorted(p.q2),
        "s1": sorted(p.s1),
        "s2": sorted(p.s2),
        "corr_vertex": {str(e): v for e, v in sorted(p.corr_vertex.items())},
        "removed_cycle_edge": {str(i): e for i, e in sorted(p.removed_cycle_edge.items())},
        "component_roots": {str(i): v for i, v in sorted(p.component_roots.items())},
        "component_classes": [c.value for c in p.component_classes],
        "extra_vertex": p.extra_vertex,
    }
    payload = {
        "command": "transform",
        "edge_set": sorted(edge_set),
        "partition": partition,
        "terminals_q": sorted(rp.terminals),
        "packing_root": rp.root,
        "packing": _packing_json(packing),
        "line_terminals": sorted(rp.line_terminals),
        "line_trees": [_tree_json(t) for t in rp.trees],
        "m": len(rp.trees),
        "verified": rp.report.ok,
    }
    human = [
        f"{p.case.value}: Q = {sorted(rp.terminals)}, root {rp.root}",
        f"packing in G: {packing.count} edge-disjoint Q-trees",
    ]
    human += [f"  T_{i}: edges {t.sorted_edges()}" for i, t in enumerate(packing.trees)]
    human.append(f"line graph terminals S_L = {sorted(rp.line_terminals)}")
    human += [
        f"  T*_{i}: vertices {sorted(t.vertices)} edges {t.sorted_edges()}" for i, t in enumerate(rp.trees)
    ]
    human.append(f"internally disjoint: {'yes' if rp.report.ok else 'no'}")
    _emit(args, payload, human)
    return EXIT_OK


def build_corpus(args) -> list[corpus.Instance]:
    instances: list[corpus.Instance] = []
    if args.exhaustive_n is not None:
        instances += corpus.exhaustive(args.exhaustive_n, args.max_edges)
    if args.random:
        kv = _keyvals(args.random)
        try:
            n_range = _span(kv["n"])
            instances += corpus.random_corpus(
                args.seed,
                int(kv.get("trials", 1)),
                n_range,
                float(kv.get("p", 0.5)),
                int(kv["max_edges"]) if "max_edges" in kv else args.max_edges,
                int(kv.get("min_edges", 0)),
            )
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad --random spec {args.random!r}: {exc}") from None
    if args.cycles:
        lo, hi = _span(args.cycles)
        instances += [corpus.Instance("cycle", n, corpus.cycle(n)) for n in range(lo, hi + 1)]
    for i, path in enumerate(args.graph or []):
        instances.append(corpus.Instance("file", i, read_edgelist(path)))
    if not instances:
        raise UsageError("sweep needs --exhaustive-n, --random, --cycles or --graph")
    return instances


def cmd_sweep(args) -> int:
    instances = build_corpus(args)
    config = {
        "exhaustive_n": args.exhaustive_n,
        "max_edges": args.max_edges,
        "random": args.random,
        "cycles": args.cycles,
        "graphs": args.graph or [],
        "k": args.k,
        "seed": args.seed,
        "limits": {
            "nv": args.limits.max_vertices,
            "ne": args.limits.max_edges,
            "nk": args.limits.sweep_vertices,
        },
    }
    report = run_sweep(instances, args.k, args.limits, config, timings=args.timings)
    s = report["summary"]
    human = [
        f"{s['instances']} instances over {s['graphs']} graphs, {s['subsets']} edge subsets",
        f"subset failures: {s['subset_failures']}, bound violations: {s['bound_violations']}",
        f"sharp instances: {s['sharp_instances']}",
        "cases: " + ", ".join(f"{t}={c}" for t, c in s["cases"].items()),
        "PASS" if s["pass"] else "FAIL: " + ", ".join(s["failed_instances"]),
    ]
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    _emit(args, report, human)
    return EXIT_OK if s["pass"] else EXIT_VERIFY


def _global_options(defaults: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags without defaults so they never mask
    # a value given before the subcommand name
    opts = argparse.ArgumentParser(add_help=False)
    opts.add_argument("--format", choices=["human", "json"],
                      default="human" if defaults else argparse.SUPPRESS)
    opts.add_argument("--limits", type=parse_limits,
                      default=DEFAULT_LIMITS if defaults else argparse.SUPPRESS,
                      help="size limits, e.g. nv=12,ne=20,nk=9")
    return opts


def build_parser() -> argparse.ArgumentParser:
    common = _global_options(defaults=False)
    parser = _Parser(
        prog="steinerpack",
        description="Steiner tree packing, tree connectivity and the line-graph construction.",
        parents=[_global_options(defaults=True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("linegraph", parents=[common], help="write L(G) as an edge list")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_linegraph)

    p = sub.add_parser("connectivity", parents=[common], help="k-tree (edge-)connectivity")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=["edge", "internal"], default="edge")
    p.set_defaults(func=cmd_connectivity)

    p = sub.add_parser("pack", parents=[common], help="maximum disjoint Steiner tree packing")
    p.add_argument("file")
    p.add_argument("--terminals", required=True)
    p.add_argument("--mode", choices=["edge", "internal"], default="edge")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("transform", parents=[common], help="replay the construction for one edge set")
    p.add_argument("file")
    p.add_argument("--edge-set", required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("sweep", parents=[common], help="replay the construction over a corpus")
    p.add_argument("--exhaustive-n", type=int)
    p.add_argument("--max-edges", type=int)
    p.add_argument("--random", help="n=<int or lo-hi>,p=<float>,trials=<int>[,max_edges=<int>]")
    p.add_argument("--cycles", help="range of cycle lengths, e.g. 5-9")
    p.add_argument("--graph", action="append", help="extra edge-list file (repeatable)")
    p.add_argument("--k", type=_int_list, default=[2, 3])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timings", action="store_true", help="include wall-clock times in the report")
    p.add_argument("-o", "--output", help="also write the JSON report here")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "sweep" and not 0 <= args.seed < 2**64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        return args.func(args)
    except SizeLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ParseError, GraphError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
