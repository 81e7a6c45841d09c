"""Connected components via pointer-graph label propagation: a two-commit
baseline, the single-commit optimized variant with toggleable hooking rules,
and a semiring-kernel formulation with adaptive sparse product selection."""

from .algorithms import (HookingConfig, IterationTrace, RunResult,
                         ablation_results, ablation_suite, fastsv,
                         simplified_sv, sv_level_config)
from .driver import DriverConfig, choose_kernel, fastsv_la
from .errors import InputError, InvariantError, SvccError, VerificationError
from .graph import (CsrGraph, Labeling, SparseDelta, build_csr,
                    labeling_from_parents)
from .graphio import (GeneratorSpec, generate, read_edge_list,
                      read_matrix_market, write_edge_list)
from .kernels import (KernelStats, assign_min_scatter, count_diff, ewise_min,
                      extract_grandparent, mxspv_sel2nd_min_accum,
                      mxv_sel2nd_min_accum, sparsify_changes)
from .oracle import DisjointSet, bfs_labels, union_find_labels

__version__ = "0.1.0"

__all__ = [
    "CsrGraph", "Labeling", "SparseDelta", "build_csr", "labeling_from_parents",
    "KernelStats", "mxv_sel2nd_min_accum", "mxspv_sel2nd_min_accum",
    "extract_grandparent", "assign_min_scatter", "ewise_min", "count_diff",
    "sparsify_changes",
    "HookingConfig", "IterationTrace", "RunResult", "simplified_sv", "fastsv",
    "ablation_results", "ablation_suite", "sv_level_config",
    "DriverConfig", "choose_kernel", "fastsv_la",
    "DisjointSet", "union_find_labels", "bfs_labels",
    "GeneratorSpec", "generate", "read_matrix_market", "read_edge_list",
    "write_edge_list",
    "SvccError", "InputError", "VerificationError", "InvariantError",
    "__version__",
]
