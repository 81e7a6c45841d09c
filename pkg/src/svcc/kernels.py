"""GraphBLAS-style primitives over the (select2nd, min) semiring.

Every kernel is deterministic regardless of worker count or processing
order: min is commutative, associative and idempotent, and all values are
exact int64, so any reduction order produces bit-identical output.

The two matrix–vector kernels accumulate into their output with min and
never clear it. Carrying minima across iterations is load-bearing: it is
what makes feeding only the changed entries (the sparse delta) equivalent
to a fresh dense product when the input vector only ever decreases.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import CsrGraph, SparseDelta

# Scatter chunk size: np.minimum.at calls are not atomic against each other,
# so chunks are processed one at a time; the size only bounds peak memory.
_CHUNK = 1 << 20


@dataclass(frozen=True)
class KernelStats:
    rows_touched: int
    flops: int
    used_sparse_input: bool


def _mxv_rows(graph: CsrGraph, x: np.ndarray, y: np.ndarray, lo: int, hi: int):
    """min over neighbors for rows [lo, hi); writes only y[lo:hi]."""
    offs = graph.row_offsets[lo:hi + 1]
    base, end = offs[0], offs[-1]
    if base == end:
        return
    vals = x[graph.col_indices[base:end]]
    nonempty = np.diff(offs) > 0
    # segment boundaries must come from nonempty rows only: an empty row's
    # offset would otherwise truncate its predecessor's reduceat segment
    starts = (offs[:-1] - base)[nonempty]
    seg = np.minimum.reduceat(vals, starts)
    ys = y[lo:hi]
    ys[nonempty] = np.minimum(ys[nonempty], seg)


def mxv_sel2nd_min_accum(graph: CsrGraph, x: np.ndarray, y: np.ndarray,
                         workers: int = 1) -> KernelStats:
    """y[u] <- min(y[u], min_{v in N(u)} x[v]) for every non-isolated u.

    Dense-input semiring product with min accumulation (y is never cleared).
    Rows are split into contiguous chunks; each chunk writes a disjoint
    slice of y, so chunks may run on separate threads.
    """
    if x.shape != (graph.n,) or y.shape != (graph.n,):
        raise ValueError("vector length must equal vertex count")
    if graph.n:
        bounds = np.linspace(0, graph.n, max(1, workers) + 1, dtype=np.int64)
        spans = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if a < b]
        if workers > 1 and len(spans) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                list(pool.map(lambda s: _mxv_rows(graph, x, y, *s), spans))
        else:
            for lo, hi in spans:
                _mxv_rows(graph, x, y, lo, hi)
    rows = int(np.count_nonzero(graph.degrees)) if graph.n else 0
    return KernelStats(rows_touched=rows, flops=graph.m, used_sparse_input=False)


def mxspv_sel2nd_min_accum(graph: CsrGraph, dx: SparseDelta, y: np.ndarray,
                           workers: int = 1) -> KernelStats:
    """Sparse-input counterpart: y[u] <- min(y[u], min over delta neighbors).

    Push formulation: each delta entry (v, val) scatters val onto N(v).
    Equivalent to the dense kernel when dx holds exactly the entries of x
    that changed and y has accumulated all prior products (see module note).
    Work is proportional to the degrees of the delta vertices, not to m.
    """
    if y.shape != (graph.n,):
        raise ValueError("vector length must equal vertex count")
    idx = np.asarray(dx.indices)
    if idx.size and (idx[0] < 0 or idx[-1] >= graph.n):
        raise ValueError("delta index out of range")
    if idx.size > 1 and not (np.diff(idx) > 0).all():
        raise ValueError("delta indices must be strictly increasing")
    flops = 0
    ro, ci = graph.row_offsets, graph.col_indices
    for lo in range(0, idx.size, _CHUNK):
        part = idx[lo:lo + _CHUNK]
        vals = np.asarray(dx.values)[lo:lo + _CHUNK]
        lens = (ro[part + 1] - ro[part]).astype(np.int64)
        total = int(lens.sum())
        flops += total
        if total == 0:
            continue
        # flatten the CSR row slices of the delta vertices
        cum = np.concatenate([[0], np.cumsum(lens)])
        pos = np.arange(total, dtype=np.int64) - np.repeat(cum[:-1], lens) \
            + np.repeat(ro[part], lens)
        np.minimum.at(y, ci[pos], np.repeat(vals, lens))
    return KernelStats(rows_touched=len(dx), flops=flops, used_sparse_input=True)


def extract_grandparent(f: np.ndarray) -> np.ndarray:
    """gf[u] = f[f[u]]."""
    return f[f]


def assign_min_scatter(f: np.ndarray, indices: np.ndarray,
                       values: np.ndarray) -> int:
    """f[indices[i]] <- min over colliding writes of values[i]; returns the
    number of entries strictly decreased. Indices may repeat."""
    if indices.shape != values.shape:
        raise ValueError("indices and values must have equal length")
    before = f.copy()
    np.minimum.at(f, indices, values)
    return int(np.count_nonzero(f != before))


def ewise_min(a: np.ndarray, b: np.ndarray) -> int:
    """a[i] <- min(a[i], b[i]); returns the count strictly decreased."""
    if a.shape != b.shape:
        raise ValueError("vectors must have equal length")
    changed = int(np.count_nonzero(b < a))
    np.minimum(a, b, out=a)
    return changed


def count_diff(a: np.ndarray, b: np.ndarray) -> int:
    if a.shape != b.shape:
        raise ValueError("vectors must have equal length")
    return int(np.count_nonzero(a != b))


def sparsify_changes(current: np.ndarray, previous: np.ndarray) -> SparseDelta:
    """Delta vector: the entries of `current` that differ from `previous`."""
    if current.shape != previous.shape:
        raise ValueError("vectors must have equal length")
    idx = np.nonzero(current != previous)[0]
    return SparseDelta(indices=idx, values=current[idx].copy())
