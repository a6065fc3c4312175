"""Benchmark harness: sweep problem sizes, reduce, verify, and anneal.

Emits one row per (problem, size, seed, ancilla budget). Success on the
reduced matrix is measured after projecting each restart's best assignment
back to the original variables and re-scoring it against the original
matrix, so the before/after columns are directly comparable. Rows are fully
determined by the flags, and the CSV is sorted before writing so reruns are
byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .encoders import (
    encode_graph_coloring,
    encode_graph_isomorphism,
    encode_hamilton_cycles,
    encode_max_clique,
)
from .graphs import erdos_renyi, permute_graph, random_permutation
from .qubo import DEFAULT_ENUMERATION_CAP, QuboMatrix, stats
from .reducer import ReductionTrace, factor_semi_symmetries
from .solver import exhaustive_solve, simulated_anneal
from .verifier import project_assignment, verify_equivalence

# Annealer-hardware metrics (physical qubit count, mean chain length, chain
# break fraction) need a device embedding and are out of scope here.
CSV_HEADER_COMMENT = (
    "# hardware-only annealer metrics (physical qubits, chain length, "
    "chain break fraction) are out of scope; couplings and layer counts "
    "are classical proxies"
)

CSV_FIELDS = (
    "problem",
    "num_vertices",
    "seed",
    "penalty",
    "ancilla_budget",
    "num_ancillas_used",
    "couplings_before",
    "couplings_after",
    "qubits_before",
    "qubits_after",
    "cnot_before",
    "cnot_after",
    "zz_layers_before",
    "zz_layers_after",
    "reduction_percent",
    "success_before",
    "success_after",
    "verify_status",
)


@dataclass(frozen=True)
class BenchRow:
    problem: str
    num_vertices: int
    seed: int
    penalty: Fraction
    ancilla_budget: int | None
    num_ancillas_used: int
    couplings_before: int
    couplings_after: int
    qubits_before: int
    qubits_after: int
    cnot_before: int
    cnot_after: int
    zz_layers_before: int
    zz_layers_after: int
    reduction_percent: Fraction
    success_before: float | None
    success_after: float | None
    verify_status: str


def encode_instance(
    problem: str,
    num_vertices: int,
    seed: int,
    edge_prob: float = 0.5,
    colors: int = 3,
) -> tuple[QuboMatrix, Fraction]:
    """Build one seeded instance with default penalties; returns (matrix, penalty)."""
    g = erdos_renyi(num_vertices, edge_prob, seed)
    if problem == "maxclique":
        penalty = Fraction(3)
        q, _ = encode_max_clique(g, penalty)
    elif problem == "hamilton":
        penalty = Fraction(num_vertices * num_vertices + 1)
        q, _ = encode_hamilton_cycles(g, penalty)
    elif problem == "coloring":
        penalty = Fraction(num_vertices * colors + 1)
        q, _ = encode_graph_coloring(g, colors, penalty)
    elif problem == "isomorphism":
        penalty = Fraction(num_vertices * num_vertices + 1)
        g2 = permute_graph(g, random_permutation(num_vertices, seed + 1))
        q, _ = encode_graph_isomorphism(g, g2, penalty)
    else:
        raise ValueError(f"unknown problem {problem!r}")
    return q, penalty


def run_benchmark(
    problem: str,
    sizes: list[int],
    seeds_per_size: int,
    budgets: list[int | None],
    z_mode: str | int | Fraction = "safe",
    edge_prob: float = 0.5,
    colors: int = 3,
    base_seed: int = 0,
    sweeps: int = 300,
    restarts: int = 20,
    verify_cap: int = DEFAULT_ENUMERATION_CAP,
    p: int = 1,
    run_sa: bool = True,
) -> list[BenchRow]:
    rows: list[BenchRow] = []
    for size in sizes:
        for offset in range(seeds_per_size):
            seed = base_seed + offset
            q, penalty = encode_instance(problem, size, seed, edge_prob, colors=colors)
            before = stats(q, p)
            reference = None
            sa_before = None
            if run_sa:
                if q.n <= verify_cap:
                    reference = exhaustive_solve(q).best_energy
                sa_before = simulated_anneal(
                    q, sweeps=sweeps, restarts=restarts, seed=seed,
                    reference_energy=reference,
                )
            for budget in budgets:
                qmod, trace = factor_semi_symmetries(q, budget, z_mode)
                after = stats(qmod, p)
                verify_status = _verify_status(q, qmod, trace, verify_cap)
                success_after = None
                if run_sa:
                    sa_after = simulated_anneal(
                        qmod, sweeps=sweeps, restarts=restarts, seed=seed
                    )
                    if reference is not None:
                        hits = 0
                        for bits, _ in sa_after.restart_bests:
                            projected = project_assignment(trace, bits)
                            if q.energy(projected) == reference:
                                hits += 1
                        success_after = hits / restarts
                cb, ca = before.num_couplings, after.num_couplings
                rows.append(
                    BenchRow(
                        problem=problem,
                        num_vertices=size,
                        seed=seed,
                        penalty=penalty,
                        ancilla_budget=budget,
                        num_ancillas_used=trace.ancilla_count,
                        couplings_before=cb,
                        couplings_after=ca,
                        qubits_before=q.n,
                        qubits_after=qmod.n,
                        cnot_before=before.cnot_count,
                        cnot_after=after.cnot_count,
                        zz_layers_before=before.zz_layer_count,
                        zz_layers_after=after.zz_layer_count,
                        reduction_percent=Fraction(cb - ca, cb) if cb else Fraction(0),
                        success_before=(
                            sa_before.success_fraction if sa_before is not None else None
                        ),
                        success_after=success_after,
                        verify_status=verify_status,
                    )
                )
    rows.sort(key=_row_key)
    return rows


def _verify_status(
    q: QuboMatrix, qmod: QuboMatrix, trace: ReductionTrace, verify_cap: int
) -> str:
    if q.n > verify_cap or trace.reduced_n > verify_cap:
        return "skipped"
    report = verify_equivalence(q, qmod, trace, max_n=verify_cap)
    ok = report.max_valid_energy_deviation == 0 and report.optimum_preserved
    return "checked" if ok else "failed"


def _row_key(row: BenchRow):
    budget = (1, 0) if row.ancilla_budget is None else (0, row.ancilla_budget)
    return (row.problem, row.num_vertices, row.seed, budget)


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, Fraction):
        return f"{float(value):.6f}"
    return str(value)


def rows_to_csv(rows: list[BenchRow]) -> str:
    lines = [CSV_HEADER_COMMENT, ",".join(CSV_FIELDS)]
    for row in rows:
        cells = []
        for field in CSV_FIELDS:
            value = getattr(row, field)
            if field == "ancilla_budget":
                cells.append("max" if value is None else str(value))
            elif field == "penalty":
                cells.append(str(value))
            else:
                cells.append(_format_cell(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
