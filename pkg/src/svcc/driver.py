"""The algorithm re-expressed as semiring kernel calls, with adaptive
dense/sparse product selection.

Per iteration: (1) mngf <-min A.gf (dense over gf, or sparse over the
entries of gf that changed last iteration); (2) scatter-min mngf into f at
the previous iteration's committed f as indices (stochastic hooking);
(3) f <-min mngf (aggressive hooking); (4) f <-min gf (shortcutting);
(5) recompute gf and snapshot f for the next scatter; (6) stop when gf
matches its previous value.

mngf is never cleared: the min accumulator carries lower bounds across
iterations, and because gf only ever decreases, scattering just the changed
entries into the accumulated mngf reproduces the full dense product exactly.
"""

import time
from dataclasses import dataclass

import numpy as np

from .algorithms import ID, IterationTrace, RunResult
from .errors import InvariantError
from .graph import CsrGraph, SparseDelta, labeling_from_parents
from .kernels import (assign_min_scatter, count_diff, ewise_min,
                      extract_grandparent, mxspv_sel2nd_min_accum,
                      mxv_sel2nd_min_accum, sparsify_changes)

_FORCE_MODES = ("auto", "dense_only", "sparse_only")


@dataclass(frozen=True)
class DriverConfig:
    """sparse_threshold: use the sparse product when the fraction of gf
    entries that changed is below this; force_kernel overrides the choice;
    workers bounds kernel-internal parallelism."""

    sparse_threshold: float = 0.1
    force_kernel: str = "auto"
    workers: int = 1

    def __post_init__(self):
        if not 0.0 <= self.sparse_threshold <= 1.0:
            raise ValueError(f"sparse_threshold must be in [0, 1], "
                             f"got {self.sparse_threshold}")
        if self.force_kernel not in _FORCE_MODES:
            raise ValueError(f"force_kernel must be one of {_FORCE_MODES}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def choose_kernel(gf_changed: int, n: int, cfg: DriverConfig) -> str:
    """'sparse' when the changed fraction of gf is under the threshold.

    The first iteration has no previous gf to diff against; callers pass
    gf_changed = n there, which can never be under the threshold, so auto
    mode starts dense without a special case."""
    if cfg.force_kernel == "dense_only":
        return "dense"
    if cfg.force_kernel == "sparse_only":
        return "sparse"
    return "sparse" if gf_changed < cfg.sparse_threshold * n else "dense"


def fastsv_la(g: CsrGraph, cfg: DriverConfig | None = None,
              record_snapshots: bool = False) -> RunResult:
    """Kernel-formulated fastsv; per-iteration state is bit-identical to the
    vertex-level all-flags run regardless of kernel choices or workers."""
    cfg = cfg or DriverConfig()
    n = g.n
    f = np.arange(n, dtype=ID)
    gf = f.copy()
    dup = gf.copy()           # previous iteration's gf, for the stop test
    mngf = gf.copy()          # accumulated minimum neighbor grandparents
    idx_snap = f.copy()       # f as committed at the end of the previous iteration
    trace = []
    snapshots = [] if record_snapshots else None
    pending_delta = None
    next_kernel = choose_kernel(n, n, cfg)
    iteration = 0

    while True:
        iteration += 1
        t0 = time.perf_counter()
        kernel = next_kernel
        if kernel == "sparse":
            if pending_delta is None:
                # forced sparse in iteration 1: the delta is the whole vector
                dx = SparseDelta(indices=np.arange(n, dtype=ID), values=gf.copy())
            else:
                dx = pending_delta
            stats = mxspv_sel2nd_min_accum(g, dx, mngf, workers=cfg.workers)
        else:
            stats = mxv_sel2nd_min_accum(g, gf, mngf, workers=cfg.workers)

        f_before = f.copy()
        assign_min_scatter(f, idx_snap, mngf)
        ewise_min(f, mngf)
        ewise_min(f, gf)
        if f.size and np.any(f > f_before):
            raise InvariantError("parent vector increased during kernel iteration")

        idx_snap = f.copy()
        gf = extract_grandparent(f)
        gf_changed = count_diff(dup, gf)
        trace.append(IterationTrace(
            iteration=iteration, gf_changed=gf_changed,
            f_changed=count_diff(f_before, f), kernel=kernel,
            elapsed=time.perf_counter() - t0, flops=stats.flops))
        if record_snapshots:
            snap = f.copy()
            snap.flags.writeable = False
            snapshots.append(snap)
        if gf_changed == 0:
            break
        next_kernel = choose_kernel(gf_changed, n, cfg)
        pending_delta = sparsify_changes(gf, dup) if next_kernel == "sparse" else None
        dup = gf.copy()

    return RunResult(labeling=labeling_from_parents(f), iterations=iteration,
                     trace=trace, snapshots=snapshots)
