"""Command line interface.

Subcommands: verify, exact, search, bounds, orbits.  Exit codes: 0 success
or PASS, 1 verification failure (including unreadable or malformed
certificates), 2 usage error, 3 resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from . import bounds as bounds_mod
from . import certify
from .groups import cyclic_group, enumerate_generators, translation, trivial_group
from .orbitgraph import build_conflict_graph, export_edge_list
from .search import SearchConfig, run_search
from .solver import Budget, max_weight_is
from .torus import CycleParams, InstanceTooLargeError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InstanceTooLargeError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except certify.CertificateError as exc:
        print(f"certificate error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclepack",
        description="Independent sets in strong powers of cycles: verify "
                    "certificates, solve exactly, search stochastically, "
                    "and print packing and capacity bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="check certificate files")
    p_verify.add_argument("paths", nargs="+", help="certificate files")
    p_verify.add_argument("--format", choices=("text", "structured"), default="text")
    p_verify.set_defaults(func=cmd_verify)

    p_exact = sub.add_parser("exact", help="exact maximum weight independent set")
    p_exact.add_argument("--p", type=int, required=True)
    p_exact.add_argument("--d", type=int, required=True)
    p_exact.add_argument("--generator", type=_offsets,
                         help="comma separated translation offsets b1,...,bd")
    p_exact.add_argument("--time", type=float, default=None, help="seconds")
    p_exact.add_argument("--nodes", type=int, default=None, help="search node limit")
    p_exact.add_argument("--guard", type=int, default=100_000,
                         help="refuse instances with p^d beyond this")
    p_exact.add_argument("--out", help="write a certificate here when a generator is given")
    p_exact.add_argument("--format", choices=("text", "structured"), default="text")
    p_exact.set_defaults(func=cmd_exact)

    p_search = sub.add_parser("search", help="stochastic remove-and-refill search")
    p_search.add_argument("--p", type=int, required=True)
    p_search.add_argument("--d", type=int, required=True)
    group = p_search.add_mutually_exclusive_group(required=True)
    group.add_argument("--generator", type=_offsets)
    group.add_argument("--sweep", action="store_true",
                       help="try every inequivalent translation generator")
    p_search.add_argument("--seed", type=int, default=None)
    p_search.add_argument("--time", type=float, default=None, help="total seconds")
    p_search.add_argument("--iterations", type=int, default=None)
    p_search.add_argument("--radius", type=int, default=None, help="initial ball radius")
    p_search.add_argument("--restarts", type=int, default=None)
    p_search.add_argument("--target", type=int, default=None,
                          help="stop once this weight is reached")
    p_search.add_argument("--config", help="key=value config file")
    p_search.add_argument("--jobs", type=int, default=1,
                          help="parallel workers for sweep mode")
    p_search.add_argument("--report-dir", help="write certificate, manifest, "
                          "stats stream and figures here")
    p_search.add_argument("--no-figures", action="store_true")
    p_search.add_argument("--format", choices=("text", "structured"), default="text")
    p_search.set_defaults(func=cmd_search)

    p_bounds = sub.add_parser("bounds", help="packing and capacity bound tables")
    p_bounds.add_argument("--p-values", type=_int_list, default=[5, 7, 9, 11, 13, 15])
    p_bounds.add_argument("--d-max", type=int, default=5)
    p_bounds.add_argument("--report-dir", help="write delimited table, JSON and figures here")
    p_bounds.add_argument("--no-figures", action="store_true")
    p_bounds.add_argument("--format", choices=("text", "structured"), default="text")
    p_bounds.set_defaults(func=cmd_bounds)

    p_orbits = sub.add_parser("orbits", help="orbit and conflict graph diagnostics")
    p_orbits.add_argument("--p", type=int, required=True)
    p_orbits.add_argument("--d", type=int, required=True)
    p_orbits.add_argument("--generator", type=_offsets)
    p_orbits.add_argument("--guard", type=int, default=400_000)
    p_orbits.add_argument("--export", help="write the conflict graph edge list here")
    p_orbits.add_argument("--format", choices=("text", "structured"), default="text")
    p_orbits.set_defaults(func=cmd_orbits)
    return parser


def _offsets(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad offset vector {text!r}") from None


def _int_list(text: str) -> List[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x != ""]


def _group_for(args, params: CycleParams):
    if getattr(args, "generator", None):
        if len(args.generator) != params.d:
            raise SystemExit(EXIT_USAGE)
        return cyclic_group(translation(args.generator, params))
    return trivial_group(params)


# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    reports = []
    failed = False
    for path in args.paths:
        try:
            text = open(path).read()
        except OSError as exc:
            print(f"{path}: cannot read ({exc})", file=sys.stderr)
            failed = True
            continue
        try:
            cert = certify.parse_certificate(text)
        except certify.CertificateError as exc:
            print(f"{path}: {exc}", file=sys.stderr)
            failed = True
            continue
        report = certify.verify_certificate(cert, path=path)
        reports.append(report)
        if args.format == "text":
            print(report.summary())
        if not report.passed:
            failed = True
    if args.format == "structured":
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_exact(args) -> int:
    params = CycleParams(args.p, args.d)
    if params.size > args.guard:
        raise InstanceTooLargeError(
            f"p^d = {params.size} exceeds guard {args.guard} (raise with --guard)")
    budget = None
    if args.time is not None or args.nodes is not None:
        budget = Budget(node_limit=args.nodes, time_limit=args.time)
    t0 = time.monotonic()
    if args.generator:
        group = _group_for(args, params)
        graph = build_conflict_graph(group, params, guard=args.guard)
        res = max_weight_is(graph.to_weighted_graph(), budget=budget)
        weight, optimal, nodes = res.solution.weight, res.optimal, res.nodes
        cert_text = certify.emit_solution(graph, res.solution.vertices)
    else:
        from .torus import alpha_exact

        # symmetry-reduced exact solve of the full (vertex-transitive) instance
        weight, optimal, nodes = alpha_exact(params, budget=budget)
        cert_text = None
    elapsed = time.monotonic() - t0
    payload = {
        "command": "exact",
        "p": args.p,
        "d": args.d,
        "generator": args.generator,
        "weight": weight,
        "optimal": optimal,
        "nodes": nodes,
        "elapsed": round(elapsed, 3),
    }
    if args.format == "structured":
        print(json.dumps(payload, indent=2))
    else:
        flag = "optimal" if optimal else "best found (budget exhausted)"
        print(f"G({args.d},{args.p}) instance: weight {weight} ({flag}), "
              f"{nodes} nodes, {elapsed:.2f}s")
    if cert_text is not None:
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(cert_text)
            print(f"certificate written to {args.out}")
        elif args.format == "text":
            sys.stdout.write(cert_text)
    return EXIT_OK


def cmd_search(args) -> int:
    params = CycleParams(args.p, args.d)
    seed = args.seed
    if seed is None:
        seed = int.from_bytes(os.urandom(6), "little")
    print(f"seed {seed}")
    overrides = dict(rng_seed=seed, time_limit=args.time,
                     max_iterations=args.iterations, ball_radius=args.radius,
                     restarts=args.restarts, target_weight=args.target)
    if args.config:
        config = SearchConfig.from_key_value_text(open(args.config).read(), **overrides)
    else:
        defaults = SearchConfig()
        config = SearchConfig(**{
            "rng_seed": seed,
            "time_limit": args.time if args.time is not None else defaults.time_limit,
            "max_iterations": args.iterations or defaults.max_iterations,
            "ball_radius": args.radius if args.radius is not None else defaults.ball_radius,
            "restarts": args.restarts or defaults.restarts,
            "target_weight": args.target,
        })
    report_dir = args.report_dir
    if report_dir:
        os.makedirs(report_dir, exist_ok=True)
    if args.sweep:
        return _search_sweep(args, params, config, report_dir)
    group = _group_for(args, params)
    graph = build_conflict_graph(group, params)
    sink, close_sink = _stats_sink(report_dir)
    t0 = time.monotonic()
    result = run_search(graph, config, sink=sink)
    elapsed = time.monotonic() - t0
    close_sink()
    cert_text = certify.emit_solution(
        graph, result.best.vertices,
        comment=f"search seed {seed}, weight {result.best.weight}")
    artifacts = {}
    if report_dir:
        cert_path = os.path.join(report_dir, "best.cert")
        with open(cert_path, "w") as fh:
            fh.write(cert_text)
        artifacts["certificate"] = cert_path
        artifacts["stats"] = os.path.join(report_dir, "stats.jsonl")
        if not args.no_figures:
            from .figures import plot_trajectory

            fig_path = os.path.join(report_dir, "trajectory.png")
            try:
                plot_trajectory(result.stats.trajectory, fig_path,
                                title=f"search p={args.p} d={args.d} seed={seed}")
                artifacts["trajectory_figure"] = fig_path
            except Exception as exc:   # rendering failures must not kill a run
                print(f"figure rendering failed: {exc}", file=sys.stderr)
        manifest = {
            "command": "search",
            "p": args.p,
            "d": args.d,
            "generator": args.generator,
            "seed": seed,
            "config": {k: getattr(config, k) for k in config.__annotations__},
            "wall_time": round(elapsed, 3),
            "best_weight": result.best.weight,
            "artifacts": artifacts,
        }
        man_path = os.path.join(report_dir, "manifest.json")
        with open(man_path, "w") as fh:
            json.dump(manifest, fh, indent=2)
            fh.write("\n")
    if args.format == "structured":
        print(json.dumps({
            "command": "search", "p": args.p, "d": args.d, "seed": seed,
            "best_weight": result.best.weight,
            "stats": result.stats.to_dict(), "artifacts": artifacts}, indent=2))
    else:
        print(f"best weight {result.best.weight} after {result.stats.iterations} "
              f"iterations ({result.stats.improvements} improvements, "
              f"refill optimality {result.stats.refill_optimality_rate:.3f}, "
              f"{elapsed:.2f}s)")
        if not report_dir:
            sys.stdout.write(cert_text)
    return EXIT_OK


def _search_sweep(args, params: CycleParams, config: SearchConfig,
                  report_dir: Optional[str]) -> int:
    from dataclasses import replace

    gens = enumerate_generators(params, mode="translations")
    share = config.time_limit / max(1, len(gens))

    def one(idx_gen):
        idx, gen = idx_gen
        graph = build_conflict_graph(cyclic_group(gen), params)
        if graph.n == 0:
            return gen, None
        cfg = replace(config, time_limit=share, rng_seed=config.rng_seed + 1000 * idx)
        res = run_search(graph, cfg)
        return gen, res

    tasks = list(enumerate(gens))
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(one, tasks))
    else:
        results = [one(t) for t in tasks]
    rows = [{
        "generator": list(gen.offsets),
        "group_order": len(cyclic_group(gen).elements),
        "best_weight": res.best.weight if res else 0,
        "iterations": res.stats.iterations if res else 0,
    } for gen, res in results]
    usable = [t for t in results if t[1] is not None]
    if not usable:
        print("no generator admits any admissible orbit", file=sys.stderr)
        return EXIT_FAIL
    best_gen, best_res = max(usable, key=lambda t: t[1].best.weight)
    if args.format == "structured":
        print(json.dumps({"command": "search-sweep", "p": args.p, "d": args.d,
                          "rows": rows,
                          "best": {"generator": list(best_gen.offsets),
                                   "weight": best_res.best.weight}}, indent=2))
    else:
        for row in rows:
            print(f"generator {tuple(row['generator'])} order {row['group_order']:>4} "
                  f"-> best {row['best_weight']}")
        print(f"best generator {tuple(best_gen.offsets)} with weight {best_res.best.weight}")
    if report_dir:
        graph = build_conflict_graph(cyclic_group(best_gen), params)
        cert_path = os.path.join(report_dir, "best.cert")
        with open(cert_path, "w") as fh:
            fh.write(certify.emit_solution(graph, best_res.best.vertices,
                                           comment="sweep best"))
        with open(os.path.join(report_dir, "sweep.json"), "w") as fh:
            json.dump(rows, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def _stats_sink(report_dir: Optional[str]):
    if not report_dir:
        return None, lambda: None
    fh = open(os.path.join(report_dir, "stats.jsonl"), "w")

    def sink(record: dict):
        fh.write(json.dumps(record) + "\n")

    return sink, fh.close


def cmd_bounds(args) -> int:
    cells = bounds_mod.assemble_table(p_values=tuple(args.p_values), d_max=args.d_max)
    caps = [bounds_mod.capacity_bounds(p, cells) for p in args.p_values if p % 2 == 1]
    if args.format == "structured":
        print(json.dumps({
            "cells": [cell.__dict__ for cell in cells],
            "capacity": [{
                "p": c.p,
                "lower": c.lower_display,
                "upper": c.upper_display,
                "witness": f"{c.best_alpha}^(1/{c.best_d})",
            } for c in caps],
        }, indent=2))
    else:
        print(bounds_mod.format_table(cells))
        print("Shannon capacity bounds (lower rounded down, upper rounded up):")
        for c in caps:
            print(f"  c(C_{c.p}) >= {c.best_alpha}^(1/{c.best_d}) > {c.lower_display}"
                  f"   and   c(C_{c.p}) < {c.upper_display}")
    if args.report_dir:
        os.makedirs(args.report_dir, exist_ok=True)
        csv_path = os.path.join(args.report_dir, "bounds.csv")
        with open(csv_path, "w") as fh:
            fh.write("p,d,lower,upper,lower_key,upper_key\n")
            for cell in cells:
                fh.write(f"{cell.p},{cell.d},{cell.lower},{cell.upper},"
                         f"{cell.lower_key},{cell.upper_key}\n")
        cap_path = os.path.join(args.report_dir, "capacity.csv")
        with open(cap_path, "w") as fh:
            fh.write("p,lower,upper,witness_alpha,witness_d\n")
            for c in caps:
                fh.write(f"{c.p},{c.lower_display},{c.upper_display},"
                         f"{c.best_alpha},{c.best_d}\n")
        with open(os.path.join(args.report_dir, "bounds.json"), "w") as fh:
            json.dump([cell.__dict__ for cell in cells], fh, indent=2)
            fh.write("\n")
        if not args.no_figures:
            from .figures import plot_capacity_bounds, plot_packing_table

            try:
                plot_capacity_bounds(caps, os.path.join(args.report_dir, "capacity.png"))
                plot_packing_table(cells, os.path.join(args.report_dir, "bounds.png"))
            except Exception as exc:
                print(f"figure rendering failed: {exc}", file=sys.stderr)
    return EXIT_OK


def cmd_orbits(args) -> int:
    params = CycleParams(args.p, args.d)
    group = _group_for(args, params)
    graph = build_conflict_graph(group, params, guard=args.guard)
    diag = graph.diagnostics()
    if args.format == "structured":
        print(json.dumps(diag, indent=2))
    else:
        for key, val in diag.items():
            print(f"{key}: {val}")
    if args.export:
        with open(args.export, "w") as fh:
            fh.write(export_edge_list(graph))
        print(f"edge list written to {args.export}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
