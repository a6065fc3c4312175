"""quboslim: QUBO encoders, coupling-sparsifying reduction, and verification."""

from .bench import BenchRow, encode_instance, rows_to_csv, run_benchmark
from .encoders import (
    VariableMap,
    decode_and_validate,
    encode_graph_coloring,
    encode_graph_isomorphism,
    encode_hamilton_cycles,
    encode_max_clique,
    format_variable_map,
    parse_variable_map,
)
from .graphs import (
    Graph,
    complement,
    complete_graph,
    erdos_renyi,
    format_edge_list,
    make_graph,
    parse_edge_list,
    permute_graph,
    random_permutation,
)
from .qubo import (
    QuboMatrix,
    QuboStats,
    as_fraction,
    enumerate_spectrum,
    format_qubo,
    parse_qubo,
    stats,
)
from .reducer import (
    ReductionStep,
    ReductionTrace,
    conflict_list,
    enhance,
    factor_semi_symmetries,
    format_trace,
    most_symmetric_pair,
    parse_trace,
    replay_trace,
)
from .solver import SolveResult, exhaustive_solve, flip_delta, simulated_anneal
from .verifier import (
    EquivalenceReport,
    best_ancilla_energy,
    format_report,
    is_valid_assignment,
    or_completion,
    project_assignment,
    verify_equivalence,
)

__version__ = "0.1.0"

__all__ = [
    "BenchRow",
    "EquivalenceReport",
    "Graph",
    "QuboMatrix",
    "QuboStats",
    "ReductionStep",
    "ReductionTrace",
    "SolveResult",
    "VariableMap",
    "as_fraction",
    "best_ancilla_energy",
    "complement",
    "complete_graph",
    "conflict_list",
    "decode_and_validate",
    "encode_graph_coloring",
    "encode_graph_isomorphism",
    "encode_hamilton_cycles",
    "encode_instance",
    "encode_max_clique",
    "enhance",
    "enumerate_spectrum",
    "erdos_renyi",
    "exhaustive_solve",
    "factor_semi_symmetries",
    "flip_delta",
    "format_edge_list",
    "format_qubo",
    "format_report",
    "format_trace",
    "format_variable_map",
    "is_valid_assignment",
    "make_graph",
    "most_symmetric_pair",
    "or_completion",
    "parse_edge_list",
    "parse_qubo",
    "parse_trace",
    "parse_variable_map",
    "permute_graph",
    "project_assignment",
    "random_permutation",
    "replay_trace",
    "rows_to_csv",
    "run_benchmark",
    "simulated_anneal",
    "stats",
    "verify_equivalence",
    "__version__",
]
