"""Ground-truth connectivity oracles: sequential union-find plus a BFS
cross-check. Deliberately simple and slow; every acceptance test compares
against these."""

from collections import deque

import numpy as np

from .graph import CsrGraph, Labeling, labeling_from_parents


class DisjointSet:
    """Union by rank with path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def union_find_labels(n: int, edges) -> Labeling:
    """Labels by minimum vertex id per component.

    Union-find roots are arbitrary representatives, so a min-relabel pass
    maps each root to the smallest id seen in its class."""
    ds = DisjointSet(n)
    for u, v in edges:
        ds.union(int(u), int(v))
    smallest = {}
    for u in range(n):
        r = ds.find(u)
        if r not in smallest:
            # ids are scanned in ascending order, so first hit is the min
            smallest[r] = u
    labels = np.fromiter((smallest[ds.find(u)] for u in range(n)),
                         dtype=np.int64, count=n)
    return labeling_from_parents(labels)


def bfs_labels(g: CsrGraph) -> Labeling:
    """Second, independent oracle: BFS from each unvisited vertex in
    ascending id order, so every start vertex is its component's minimum."""
    labels = np.full(g.n, -1, dtype=np.int64)
    for s in range(g.n):
        if labels[s] != -1:
            continue
        labels[s] = s
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if labels[v] == -1:
                    labels[v] = s
                    queue.append(int(v))
    return labeling_from_parents(labels)
