"""Shared graph fixtures.

The suite is a fixed population of small structured graphs plus seeded
random ones. It is built once per session; tests that sweep "every suite
graph" all see the same instances.
"""

import numpy as np
import pytest

from svcc import GeneratorSpec, build_csr, generate, union_find_labels

GNP_SIZES = (200, 500, 1000, 2000)
GNP_PS = (0.002, 0.01, 0.05)
GRID_SHAPES = ((2, 2), (3, 3), (4, 4), (5, 5), (8, 8), (2, 32), (4, 16), (7, 9))
COMPLETE_SIZES = (2, 3, 4, 5, 8, 13, 21, 34, 55, 64)


def suite_specs():
    specs = []
    for n in range(1, 65):
        specs.append((f"path{n}", GeneratorSpec("path", n=n)))
        specs.append((f"cycle{n}", GeneratorSpec("cycle", n=n)))
        specs.append((f"star{n}", GeneratorSpec("star", n=n)))
    for n in COMPLETE_SIZES:
        specs.append((f"complete{n}", GeneratorSpec("complete", n=n)))
    for r, c in GRID_SHAPES:
        specs.append((f"grid{r}x{c}", GeneratorSpec("grid2d", rows=r, cols=c)))
    for p in GNP_PS:
        for seed in range(20):
            n = GNP_SIZES[seed % len(GNP_SIZES)]
            specs.append((f"gnp-n{n}-p{p}-s{seed}",
                          GeneratorSpec("gnp", n=n, p=p, seed=seed)))
    for blocks in range(2, 51, 4):
        specs.append((f"mix{blocks}", GeneratorSpec(
            "component_mix", blocks=blocks, block_n=30, block_p=0.1,
            seed=1000 + blocks)))
    return specs


@pytest.fixture(scope="session")
def suite():
    """List of (name, CsrGraph) pairs covering the whole fixture population."""
    return [(name, generate(spec)) for name, spec in suite_specs()]


@pytest.fixture(scope="session")
def suite_labels(suite):
    """name -> oracle labels for every suite graph."""
    return {name: union_find_labels(g.n, edges_of(g)).labels
            for name, g in suite}


def edges_of(graph):
    """Undirected edge list (u < v) recovered from a symmetric CSR graph."""
    rows = graph.row_ids
    cols = graph.col_indices
    keep = rows < cols
    return list(zip(rows[keep].tolist(), cols[keep].tolist()))


def random_graph(rng, max_n=16, density=2.0):
    """Small random multigraph input, returned as (n, raw edge list, CsrGraph).

    Raw edges may repeat and include self-loops on purpose: build_csr is
    expected to clean them up.
    """
    n = int(rng.integers(1, max_n + 1))
    k = int(rng.integers(0, max(1, int(n * density)) + 1))
    edges = [(int(rng.integers(0, n)), int(rng.integers(0, n)))
             for _ in range(k)]
    return n, edges, build_csr(n, edges)
