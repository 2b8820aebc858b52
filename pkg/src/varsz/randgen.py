"""Seeded random connected graphs.

All randomness comes from :class:`SplitMix64` (Steele, Lea and Flood's
64-bit generator, the seeding routine of the xoshiro family) so that streams
are reproducible from the seed alone, in any language:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output z ^ (z >> 31)

Bounded integers use rejection (draws at or above the largest multiple of the
bound are discarded, then ``r mod bound``); floats in ``[0, 1)`` use the top
53 bits. Vertex pairs ``u < v`` are indexed lexicographically.
"""

from __future__ import annotations

import bisect
import heapq

from .graph import Graph, is_connected

MASK64 = (1 << 64) - 1
RETRY_CAP = 100_000


class InfeasibleParametersError(ValueError):
    pass


class RetryCapExceeded(RuntimeError):
    def __init__(self, attempts: int):
        super().__init__(f"no connected sample after {attempts} attempts")
        self.attempts = attempts


class SplitMix64:
    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            r = self.next_u64()
            if r < limit:
                return r % bound

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


class _PairIndex:
    """Lexicographic numbering of the pairs ``u < v`` on ``n`` vertices."""

    def __init__(self, n: int):
        self.n = n
        self.offsets = [u * (2 * n - u - 1) // 2 for u in range(n)]

    def pair(self, idx: int) -> tuple[int, int]:
        u = bisect.bisect_right(self.offsets, idx) - 1
        return u, u + 1 + idx - self.offsets[u]

    def index(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self.offsets[u] + v - u - 1


def _sample_distinct(rng: SplitMix64, population: int, count: int) -> list[int]:
    """First ``count`` entries of a lazy Fisher-Yates shuffle of ``range(population)``."""
    swapped: dict[int, int] = {}
    out = []
    for i in range(count):
        j = i + rng.below(population - i)
        out.append(swapped.get(j, j))
        swapped[j] = swapped.get(i, i)
    return out


def random_gnm(n: int, m: int, rng: SplitMix64) -> Graph:
    """Uniform G(n, m), possibly disconnected."""
    pairs = _PairIndex(n)
    return Graph.from_edges(n, (pairs.pair(i) for i in _sample_distinct(rng, n * (n - 1) // 2, m)))


def random_gnm_connected(n: int, m: int, seed: int, max_attempts: int = RETRY_CAP) -> Graph:
    """Uniform over connected graphs with n vertices and m edges, by rejection."""
    if n < 1 or not n - 1 <= m <= n * (n - 1) // 2:
        raise InfeasibleParametersError(f"no connected graph with n={n}, m={m}")
    rng = SplitMix64(seed)
    for _ in range(max_attempts):
        g = random_gnm(n, m, rng)
        if is_connected(g):
            return g
    raise RetryCapExceeded(max_attempts)


def random_gnp_connected(n: int, p: float, seed: int, max_attempts: int = RETRY_CAP) -> Graph:
    """G(n, p) conditioned on connectivity, by rejection."""
    if n < 1:
        raise InfeasibleParametersError(f"need n >= 1, got {n}")
    if not 0 < p <= 1:
        raise InfeasibleParametersError(f"edge probability must lie in (0, 1], got {p}")
    rng = SplitMix64(seed)
    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for _ in range(max_attempts):
        g = Graph.from_edges(n, [e for e in all_pairs if rng.uniform() < p])
        if is_connected(g):
            return g
    raise RetryCapExceeded(max_attempts)


def _prufer_tree(n: int, rng: SplitMix64) -> list[tuple[int, int]]:
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.below(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def random_tree_plus_edges(n: int, m: int, seed: int) -> Graph:
    """Uniform labeled spanning tree (Pruefer code) plus ``m - n + 1`` uniform extra edges.

    Always connected, so it works in sparse regimes where rejection from
    G(n, m) almost never succeeds. Not uniform over connected graphs.
    """
    if n < 1 or not n - 1 <= m <= n * (n - 1) // 2:
        raise InfeasibleParametersError(f"no connected graph with n={n}, m={m}")
    rng = SplitMix64(seed)
    tree = _prufer_tree(n, rng)
    pairs = _PairIndex(n)
    used = {pairs.index(u, v) for u, v in tree}
    free = [i for i in range(n * (n - 1) // 2) if i not in used]
    extra = [free[i] for i in _sample_distinct(rng, len(free), m - (n - 1))]
    return Graph.from_edges(n, tree + [pairs.pair(i) for i in extra])


def random_block_graph(n: int, seed: int, max_block: int = 4) -> Graph:
    """Random block graph: cliques of size 2..max_block glued at single vertices."""
    if n < 1:
        raise InfeasibleParametersError(f"need n >= 1, got {n}")
    if max_block < 2:
        raise ValueError("max_block must be at least 2")
    rng = SplitMix64(seed)
    edges: list[tuple[int, int]] = []
    size = min(n, 2 + rng.below(max_block - 1))
    count = size
    edges.extend((a, b) for a in range(size) for b in range(a + 1, size))
    while count < n:
        anchor = rng.below(count)
        size = min(n - count + 1, 2 + rng.below(max_block - 1))
        members = [anchor, *range(count, count + size - 1)]
        edges.extend((a, b) for i, a in enumerate(members) for b in members[i + 1:])
        count += size - 1
    return Graph.from_edges(n, edges)


def random_seed_stream(seed: int, count: int) -> list[int]:
    """``count`` derived 64-bit seeds, for seeding independent generator instances."""
    rng = SplitMix64(seed)
    return [rng.next_u64() for _ in range(count)]

