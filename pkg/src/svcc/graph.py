"""Core graph and label containers.

The adjacency structure is a symmetric CSR matrix over 0-based vertex ids.
Parent vectors (f, f_next, gf, mngf, dup) are plain int64 numpy arrays; the
functions that consume them document which role they play.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InputError, InvariantError

# Vertex ids are int64 throughout: the id type must be able to address far
# more than 2^32 vertices even though desk-scale tests stay small.
ID_DTYPE = np.int64


@dataclass(frozen=True)
class CsrGraph:
    """Symmetric adjacency in compressed-sparse-row form.

    Invariants (enforced by build_csr, assumed everywhere else):
      * row_offsets has n+1 non-decreasing entries, starting at 0;
      * col_indices holds both orientations of every undirected edge,
        deduplicated, self-loop free, strictly increasing within each row.
    """

    n: int
    row_offsets: np.ndarray
    col_indices: np.ndarray

    @property
    def m(self) -> int:
        """Number of stored entries; an undirected edge contributes two."""
        return int(self.col_indices.size)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.row_offsets)

    def neighbors(self, u: int) -> np.ndarray:
        lo, hi = self.row_offsets[u], self.row_offsets[u + 1]
        return self.col_indices[lo:hi]

    @cached_property
    def row_ids(self) -> np.ndarray:
        """Row id of every stored entry, i.e. the u of each (u, v) slot."""
        out = np.repeat(np.arange(self.n, dtype=ID_DTYPE), self.degrees)
        out.flags.writeable = False
        return out


def build_csr(n, edges) -> CsrGraph:
    """Build a CsrGraph from an edge list.

    Accepts any iterable of (u, v) pairs or an integer array of shape (k, 2).
    Self-loops are dropped (they cannot affect connectivity), duplicates are
    merged, and both orientations of every surviving edge are stored.
    """
    if n < 0:
        raise InputError(f"vertex count must be non-negative, got {n}")
    pairs = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                       dtype=ID_DTYPE)
    if pairs.size == 0:
        pairs = pairs.reshape(0, 2)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise InputError("edges must be (u, v) pairs")

    if pairs.size:
        bad = (pairs < 0) | (pairs >= n)
        if bad.any():
            u, v = pairs[bad.any(axis=1)][0]
            raise InputError(f"edge ({u}, {v}) out of range for n={n}")

    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    both = np.concatenate([pairs, pairs[:, ::-1]]) if pairs.size else pairs

    if both.size and n <= (2**63 - 1) // max(n, 1):
        # fits in a single int64 key: sort+unique on u*n+v is the fast path
        keys = np.unique(both[:, 0] * n + both[:, 1])
        u = keys // n
        v = keys - u * n
    elif both.size:
        uniq = np.unique(both, axis=0)
        u, v = uniq[:, 0], uniq[:, 1]
    else:
        u = v = np.zeros(0, dtype=ID_DTYPE)

    offsets = np.zeros(n + 1, dtype=ID_DTYPE)
    np.add.at(offsets, u + 1, 1)
    offsets = np.cumsum(offsets, dtype=ID_DTYPE)
    cols = np.ascontiguousarray(v)
    offsets.flags.writeable = False
    cols.flags.writeable = False
    return CsrGraph(n=int(n), row_offsets=offsets, col_indices=cols)


@dataclass(frozen=True)
class Labeling:
    """Final component labels: representative = minimum id in the component."""

    labels: np.ndarray
    component_count: int
    sizes: dict = field(compare=False)


def labeling_from_parents(f: np.ndarray) -> Labeling:
    """Finalize a converged parent vector into a Labeling.

    The caller must have reached a star forest: every vertex points directly
    at its root. Anything else means the algorithm stopped too early.
    """
    f = np.asarray(f, dtype=ID_DTYPE)
    if f.size and not np.array_equal(f[f], f):
        raise InvariantError("algorithm terminated on non-star forest")
    reps, counts = np.unique(f, return_counts=True)
    labels = f.copy()
    labels.flags.writeable = False
    return Labeling(
        labels=labels,
        component_count=int(reps.size),
        sizes={int(r): int(c) for r, c in zip(reps, counts)},
    )


@dataclass(frozen=True)
class SparseDelta:
    """Sparse vector of (index, value) pairs with strictly increasing indices.

    Houses the changed entries of gf between consecutive iterations."""

    indices: np.ndarray
    values: np.ndarray

    def __len__(self) -> int:
        return int(self.indices.size)
