"""Command-line interface.

Subcommands: gen-graph, encode, reduce, verify, solve, stats, bench. All
randomness flows from explicit --seed flags and every writer is sorted, so
rerunning a pipeline with identical flags reproduces its output files
byte-for-byte. Exit status is 0 on success and nonzero on errors or failed
verification checks.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .bench import rows_to_csv, run_benchmark
from .encoders import (
    decode_and_validate,
    encode_graph_coloring,
    encode_graph_isomorphism,
    encode_hamilton_cycles,
    encode_max_clique,
    format_variable_map,
    parse_variable_map,
)
from .graphs import (
    erdos_renyi,
    format_edge_list,
    parse_edge_list,
    permute_graph,
    random_permutation,
)
from .qubo import as_fraction, format_qubo, parse_qubo, stats
from .reducer import factor_semi_symmetries, format_trace, parse_trace
from .solver import exhaustive_solve, simulated_anneal
from .verifier import format_report, project_assignment, verify_equivalence


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path: str, text: str) -> None:
    target = Path(path)
    if target.parent != Path("."):
        target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")


def _budget(value: str) -> int | None:
    if value == "max":
        return None
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("ancilla budget must be >= 0 or 'max'")
    return n


def _budget_list(value: str) -> list[int | None]:
    return [_budget(tok) for tok in value.split(",") if tok != ""]


def _size_list(value: str) -> list[int]:
    if ":" in value:
        lo, _, hi = value.partition(":")
        return list(range(int(lo), int(hi) + 1))
    return [int(tok) for tok in value.split(",") if tok != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quboslim",
        description="Encode graph problems as QUBO matrices, factor shared "
        "couplings of conflicting pairs into ancilla variables, and verify "
        "that the energy landscape is preserved.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-graph", help="write a seeded random or permuted graph")
    p.add_argument("--n", type=int, help="vertex count for a random graph")
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--permute-of", metavar="FILE",
                   help="permute this graph's vertices instead of sampling")
    p.add_argument("--out", required=True)

    p = sub.add_parser("encode", help="encode a graph problem as a .qubo file")
    p.add_argument("--problem", required=True,
                   choices=["maxclique", "hamilton", "coloring", "isomorphism"])
    p.add_argument("--graph", required=True)
    p.add_argument("--graph2", help="second graph (isomorphism only)")
    p.add_argument("--colors", type=int, default=3, help="color count (coloring only)")
    p.add_argument("--penalty", help="constraint weight; defaults per problem")
    p.add_argument("--out", required=True)
    p.add_argument("--map", dest="map_file", help="also write the variable map")

    p = sub.add_parser("reduce", help="factor shared couplings into ancillas")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--ancillas", type=_budget, required=True,
                   help="ancilla budget (integer or 'max')")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--z", help="fixed penalty weight for every step")
    group.add_argument("--z-mode", choices=["safe", "tight"], default="safe")
    p.add_argument("--out", required=True)
    p.add_argument("--trace", required=True)

    p = sub.add_parser("verify", help="exhaustively check a reduction")
    p.add_argument("--original", required=True)
    p.add_argument("--reduced", required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--report", help="also write the report to this file")

    p = sub.add_parser("solve", help="minimize a .qubo file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--method", choices=["exhaustive", "sa"], default="exhaustive")
    p.add_argument("--sweeps", type=int, default=1000)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t-start", type=float)
    p.add_argument("--t-end", type=float)
    p.add_argument("--ref-energy", help="count restarts reaching this energy")
    p.add_argument("--map", dest="map_file", help="decode the best assignment")
    p.add_argument("--graph", help="graph for decoding")
    p.add_argument("--graph2", help="second graph for isomorphism decoding")

    p = sub.add_parser("stats", help="coupling counts and circuit-cost proxies")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--p", type=int, default=1, help="cost layer count")

    p = sub.add_parser("bench", help="benchmark sweep writing CSV and figures")
    p.add_argument("--problem", required=True,
                   choices=["maxclique", "hamilton", "coloring", "isomorphism"])
    p.add_argument("--sizes", type=_size_list, required=True,
                   help="either lo:hi or a comma list")
    p.add_argument("--seeds-per-size", type=int, default=3)
    p.add_argument("--budgets", type=_budget_list, default=[0, 5, 10],
                   help="comma list of ancilla budgets; 'max' allowed")
    p.add_argument("--z", help="fixed penalty weight")
    p.add_argument("--z-mode", choices=["safe", "tight"], default="safe")
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--colors", type=int, default=3)
    p.add_argument("--seed", type=int, default=0, help="base graph seed")
    p.add_argument("--sweeps", type=int, default=300)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--no-sa", action="store_true", help="skip annealing columns")
    p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    p.add_argument("--out", required=True, help="CSV path")
    return parser


def _cmd_gen_graph(args) -> int:
    if args.permute_of:
        g = parse_edge_list(_read(args.permute_of))
        g = permute_graph(g, random_permutation(g.num_vertices, args.seed))
    else:
        if args.n is None:
            raise ValueError("gen-graph needs --n unless --permute-of is given")
        g = erdos_renyi(args.n, args.edge_prob, args.seed)
    _write(args.out, format_edge_list(g))
    return 0


def _cmd_encode(args) -> int:
    g = parse_edge_list(_read(args.graph))
    penalty = as_fraction(args.penalty) if args.penalty is not None else None
    if args.problem == "maxclique":
        q, vmap = encode_max_clique(g, 3 if penalty is None else penalty)
    elif args.problem == "hamilton":
        q, vmap = encode_hamilton_cycles(g, penalty)
    elif args.problem == "coloring":
        q, vmap = encode_graph_coloring(g, args.colors, penalty)
    else:
        if not args.graph2:
            raise ValueError("isomorphism encoding needs --graph2")
        g2 = parse_edge_list(_read(args.graph2))
        q, vmap = encode_graph_isomorphism(g, g2, penalty)
    _write(args.out, format_qubo(q))
    if args.map_file:
        _write(args.map_file, format_variable_map(vmap))
    return 0


def _cmd_reduce(args) -> int:
    q = parse_qubo(_read(args.infile))
    z_mode = as_fraction(args.z) if args.z is not None else args.z_mode
    qmod, trace = factor_semi_symmetries(q, args.ancillas, z_mode)
    _write(args.out, format_qubo(qmod))
    _write(args.trace, format_trace(trace))
    print(
        f"reduced {q.n} -> {qmod.n} variables, "
        f"{q.num_couplings} -> {qmod.num_couplings} couplings "
        f"({trace.ancilla_count} ancillas)"
    )
    return 0


def _cmd_verify(args) -> int:
    q = parse_qubo(_read(args.original))
    qmod = parse_qubo(_read(args.reduced))
    trace = parse_trace(_read(args.trace))
    report = verify_equivalence(q, qmod, trace)
    text = format_report(report)
    sys.stdout.write(text)
    if args.report:
        _write(args.report, text)
    return 0 if report.all_checks_pass else 1


def _cmd_solve(args) -> int:
    q = parse_qubo(_read(args.infile))
    reference = as_fraction(args.ref_energy) if args.ref_energy is not None else None
    if args.method == "exhaustive":
        result = exhaustive_solve(q)
    else:
        result = simulated_anneal(
            q,
            sweeps=args.sweeps,
            restarts=args.restarts,
            seed=args.seed,
            t_start=args.t_start,
            t_end=args.t_end,
            reference_energy=reference,
        )
    bits = "".join(map(str, result.best_assignment))
    print(f"method: {result.method}")
    print(f"bestEnergy: {result.best_energy}")
    print(f"bestAssignment: {bits}")
    if args.method == "exhaustive" and reference is not None:
        print(f"successFraction: {1.0 if result.best_energy == reference else 0.0:.6f}")
    elif result.success_fraction is not None:
        print(f"successFraction: {result.success_fraction:.6f}")
    if args.map_file:
        if not args.graph:
            raise ValueError("decoding needs --graph")
        vmap = parse_variable_map(_read(args.map_file))
        g = parse_edge_list(_read(args.graph))
        g2 = parse_edge_list(_read(args.graph2)) if args.graph2 else None
        payload, ok = decode_and_validate(vmap, result.best_assignment, g, g2)
        print(f"decoded: {payload}")
        print(f"isValid: {'true' if ok else 'false'}")
    return 0


def _cmd_stats(args) -> int:
    q = parse_qubo(_read(args.infile))
    s = stats(q, args.p)
    print(f"variables: {s.num_variables}")
    print(f"couplings: {s.num_couplings}")
    print(f"density: {s.density}")
    print(f"cnot: {s.cnot_count}")
    print(f"zz-layers: {s.zz_layer_count}")
    return 0


def _cmd_bench(args) -> int:
    z_mode = as_fraction(args.z) if args.z is not None else args.z_mode
    rows = run_benchmark(
        problem=args.problem,
        sizes=args.sizes,
        seeds_per_size=args.seeds_per_size,
        budgets=args.budgets,
        z_mode=z_mode,
        edge_prob=args.edge_prob,
        colors=args.colors,
        base_seed=args.seed,
        sweeps=args.sweeps,
        restarts=args.restarts,
        run_sa=not args.no_sa,
    )
    out = Path(args.out)
    _write(args.out, rows_to_csv(rows))
    print(f"wrote {len(rows)} rows to {out}")
    if not args.no_figures:
        from .plots import render_bench_figures

        for path in render_bench_figures(rows, out.parent, out.stem):
            print(f"wrote figure {path}")
    return 0


_COMMANDS = {
    "gen-graph": _cmd_gen_graph,
    "encode": _cmd_encode,
    "reduce": _cmd_reduce,
    "verify": _cmd_verify,
    "solve": _cmd_solve,
    "stats": _cmd_stats,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
