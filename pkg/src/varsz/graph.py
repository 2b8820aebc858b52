"""Simple undirected graphs, edge-list parsing and structural predicates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

UNREACHABLE = -1


class GraphError(ValueError):
    """Raised for malformed graphs or violated graph preconditions."""


class DisconnectedGraphError(GraphError):
    def __init__(self, msg: str = "graph not connected"):
        super().__init__(msg)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        seen: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop edge at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        return cls(
            n=n,
            edges=tuple(sorted(seen)),
            adjacency=tuple(tuple(sorted(a)) for a in adj),
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def to_csr(self) -> csr_matrix:
        if self.m == 0:
            return csr_matrix((self.n, self.n), dtype=np.int8)
        e = np.asarray(self.edges, dtype=np.int64)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        data = np.ones(len(rows), dtype=np.int8)
        return csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)


def parse_edge_list(text: str | bytes) -> Graph:
    """Parse whitespace-separated vertex pairs, one edge per line.

    Blank lines and lines starting with ``#`` are skipped. The vertex count is
    one more than the largest id seen; ids that never appear become isolated
    vertices (and the graph is then disconnected).
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphError(f"line {lineno}: expected 2 tokens, got {len(tokens)}")
        if not all(t.isascii() and t.isdigit() for t in tokens):
            raise GraphError(f"line {lineno}: malformed token in {line!r}")
        u, v = int(tokens[0]), int(tokens[1])
        if u == v:
            raise GraphError(f"line {lineno}: loop edge at vertex {u}")
        pairs.append((u, v))
    if not pairs:
        raise GraphError("empty input")
    n = 1 + max(max(p) for p in pairs)
    return Graph.from_edges(n, pairs)


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; unreachable vertices get ``UNREACHABLE``."""
    if not 0 <= source < g.n:
        raise GraphError(f"source {source} out of range for n={g.n}")
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = du
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return UNREACHABLE not in bfs_distances(g, 0)


def all_pairs_distances(g: Graph) -> np.ndarray:
    """n x n int32 matrix of hop distances.

    Raises DisconnectedGraphError for disconnected graphs.
    """
    if not is_connected(g):
        raise DisconnectedGraphError()
    if g.n <= 1:
        return np.zeros((g.n, g.n), dtype=np.int32)
    d = shortest_path(g.to_csr(), method="D", directed=False, unweighted=True)
    return d.astype(np.int32)


def diameter(g: Graph, dm: np.ndarray | None = None) -> int:
    if g.n < 2:
        raise GraphError("diameter needs at least 2 vertices")
    if dm is None:
        dm = all_pairs_distances(g)
    return int(dm.max())


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def biconnected_components(g: Graph) -> list[set[tuple[int, int]]]:
    """Edge sets of the blocks, via iterative Hopcroft-Tarjan."""
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    blocks: list[set[tuple[int, int]]] = []
    edge_stack: list[tuple[int, int]] = []
    adj = g.adjacency

    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, iter(adj[w])))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                block = set()
                while True:
                    a, b = edge_stack.pop()
                    block.add((a, b) if a < b else (b, a))
                    if (a, b) == (parent, u):
                        break
                blocks.append(block)
    return blocks


def is_block_graph(g: Graph) -> bool:
    """True iff every biconnected component induces a complete subgraph."""
    for block in biconnected_components(g):
        verts = {v for e in block for v in e}
        k = len(verts)
        if len(block) != k * (k - 1) // 2:
            return False
    return True
