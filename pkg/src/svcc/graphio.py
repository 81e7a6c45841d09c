"""Graph ingestion (Matrix Market coordinate files, edge lists) and
deterministic generators for the convergence test suite.

Random families use numpy's default PCG64 generator seeded explicitly, so a
given spec reproduces the same graph on any platform. component_mix gives
each block its own stream via SeedSequence(seed).spawn(blocks).
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graph import CsrGraph, build_csr


def read_matrix_market(path) -> CsrGraph:
    """Parse a Matrix Market coordinate file into a symmetric CsrGraph.

    Accepts pattern/integer/real fields with general or symmetric
    qualifiers. Values are ignored (connectivity is unweighted), indices are
    converted from 1-based, and the usual symmetrize/dedup/self-loop rules
    apply."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].lower().startswith("%%matrixmarket"):
        raise InputError(f"{path}: missing MatrixMarket header at line 1")
    header = lines[0].lower().split()
    if len(header) < 5 or header[1] != "matrix":
        raise InputError(f"{path}: malformed header at line 1")
    layout, field, qualifier = header[2], header[3], header[4]
    if layout == "array":
        raise InputError(f"{path}: array (dense) format is unsupported")
    if layout != "coordinate":
        raise InputError(f"{path}: unknown format '{layout}' at line 1")
    if field not in ("pattern", "integer", "real"):
        raise InputError(f"{path}: unsupported field '{field}' at line 1")
    if qualifier not in ("general", "symmetric"):
        raise InputError(f"{path}: unsupported qualifier '{qualifier}' at line 1")

    dims = None
    edges = []
    declared = 0
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        tokens = line.split()
        if dims is None:
            if len(tokens) != 3:
                raise InputError(f"{path}: expected 'rows cols nnz' at line {lineno}")
            try:
                rows, cols, declared = (int(t) for t in tokens)
            except ValueError:
                raise InputError(f"{path}: non-integer dimension at line {lineno}")
            if rows != cols:
                raise InputError(f"{path}: adjacency matrix must be square "
                                 f"({rows}x{cols} at line {lineno})")
            dims = rows
            continue
        if len(tokens) not in (2, 3):
            raise InputError(f"{path}: malformed entry at line {lineno}")
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise InputError(f"{path}: non-integer index at line {lineno}")
        if not (1 <= i <= dims and 1 <= j <= dims):
            raise InputError(f"{path}: index out of bounds at line {lineno}")
        edges.append((i - 1, j - 1))
    if dims is None:
        raise InputError(f"{path}: missing dimension line")
    if len(edges) != declared:
        raise InputError(f"{path}: header declares {declared} entries, "
                         f"found {len(edges)}")
    return build_csr(dims, edges)


def read_edge_list(path) -> CsrGraph:
    """Whitespace-separated 0-based pairs, '#' comments; n = 1 + max id.
    An empty file is the n=0 graph."""
    edges = []
    max_id = -1
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise InputError(f"{path}: expected two ids at line {lineno}")
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise InputError(f"{path}: non-integer token at line {lineno}")
            if u < 0 or v < 0:
                raise InputError(f"{path}: negative id at line {lineno}")
            edges.append((u, v))
            max_id = max(max_id, u, v)
    return build_csr(max_id + 1, edges)


def write_edge_list(g: CsrGraph, path) -> None:
    """Write one 'u v' line per undirected edge (u < v).

    If the highest-numbered vertex is isolated, a 'k k' self-loop line is
    emitted for it: the reader computes n from the maximum id and drops
    self-loops, so this keeps the vertex count through a round trip."""
    with open(path, "w", encoding="utf-8") as fh:
        _write_edges(g, fh)


def _write_edges(g: CsrGraph, fh) -> None:
    for u in range(g.n):
        for v in g.neighbors(u):
            if v > u:
                fh.write(f"{u} {v}\n")
    if g.n > 0 and g.degrees[g.n - 1] == 0:
        fh.write(f"{g.n - 1} {g.n - 1}\n")


@dataclass(frozen=True)
class GeneratorSpec:
    """Deterministic graph generator parameters.

    family selects the shape; the other fields are family-specific:
      path/cycle/star/complete: n
      grid2d: rows, cols
      gnp: n, p, seed
      component_mix: blocks, block_n, block_p, seed
    """

    family: str
    n: int = 0
    p: float = 0.0
    seed: int = 0
    blocks: int = 0
    block_n: int = 0
    block_p: float = 0.0
    rows: int = 0
    cols: int = 0


def _gnp_pair_edges(n: int, p: float, rng) -> np.ndarray:
    """G(n, p) via geometric skips over the linearized upper triangle.

    Expected work is O(p * n^2) draws instead of n^2 Bernoulli trials."""
    total = n * (n - 1) // 2
    if total == 0 or p <= 0.0:
        return np.zeros((0, 2), dtype=np.int64)
    picked = []
    pos = -1
    batch = max(256, int(total * p * 1.2) + 16)
    while pos < total:
        skips = rng.geometric(p, size=batch)
        pts = pos + np.cumsum(skips)
        pos = int(pts[-1])
        picked.append(pts[pts < total])
    t = np.concatenate(picked)
    # invert t -> (u, v) over the row-major upper triangle; float sqrt gets
    # within one row of the answer, the fixup loop lands it exactly
    nn = 2 * n - 1
    u = np.floor((nn - np.sqrt(nn * nn - 8.0 * t)) / 2).astype(np.int64)
    for _ in range(3):
        row_start = u * n - u * (u + 1) // 2
        u[row_start > t] -= 1
        row_start = u * n - u * (u + 1) // 2
        next_start = (u + 1) * n - (u + 1) * (u + 2) // 2
        u[next_start <= t] += 1
    row_start = u * n - u * (u + 1) // 2
    v = t - row_start + u + 1
    return np.stack([u, v], axis=1)


def _family_edges(spec: GeneratorSpec):
    fam = spec.family
    if fam == "path":
        _require(spec.n >= 1, "path needs n >= 1")
        return spec.n, [(i, i + 1) for i in range(spec.n - 1)]
    if fam == "cycle":
        _require(spec.n >= 1, "cycle needs n >= 1")
        edges = [(i, i + 1) for i in range(spec.n - 1)]
        if spec.n > 1:
            edges.append((spec.n - 1, 0))
        return spec.n, edges
    if fam == "star":
        _require(spec.n >= 1, "star needs n >= 1")
        return spec.n, [(0, i) for i in range(1, spec.n)]
    if fam == "complete":
        _require(spec.n >= 1, "complete needs n >= 1")
        return spec.n, [(u, v) for u in range(spec.n) for v in range(u + 1, spec.n)]
    if fam == "grid2d":
        _require(spec.rows >= 1 and spec.cols >= 1, "grid2d needs rows, cols >= 1")
        r, c = spec.rows, spec.cols
        edges = []
        for i in range(r):
            for j in range(c):
                u = i * c + j
                if j + 1 < c:
                    edges.append((u, u + 1))
                if i + 1 < r:
                    edges.append((u, u + c))
        return r * c, edges
    if fam == "gnp":
        _require(spec.n >= 0, "gnp needs n >= 0")
        _require(0.0 <= spec.p <= 1.0, "gnp needs p in [0, 1]")
        rng = np.random.default_rng(spec.seed)
        return spec.n, _gnp_pair_edges(spec.n, spec.p, rng)
    if fam == "component_mix":
        _require(spec.blocks >= 1, "component_mix needs blocks >= 1")
        _require(spec.block_n >= 1, "component_mix needs block_n >= 1")
        _require(0.0 <= spec.block_p <= 1.0, "component_mix needs block_p in [0, 1]")
        children = np.random.SeedSequence(spec.seed).spawn(spec.blocks)
        chunks = []
        for b, child in enumerate(children):
            rng = np.random.default_rng(child)
            block = _gnp_pair_edges(spec.block_n, spec.block_p, rng)
            chunks.append(block + b * spec.block_n)
        edges = np.concatenate(chunks) if chunks else np.zeros((0, 2), np.int64)
        return spec.blocks * spec.block_n, edges
    raise InputError(f"unknown generator family '{fam}'")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InputError(message)


def generate(spec: GeneratorSpec) -> CsrGraph:
    """Build the graph described by `spec`. Pure function of its arguments."""
    n, edges = _family_edges(spec)
    return build_csr(n, edges)
