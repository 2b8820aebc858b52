"""Distance and Szeged-term sequences, variable Wiener/Szeged indices and the gap.

Both indices only depend on two multisets of positive integers: the pairwise
distances ``d_i`` (length ``N = n(n-1)/2``) and the edge products
``n_i = n_u(v) * n_v(u)`` (length ``m``). An :class:`IndexProfile` keeps both,
sorted decreasingly, together with their distinct values and multiplicities so
that evaluating ``sum x**alpha`` costs one power per distinct value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .graph import (
    Graph,
    GraphError,
    all_pairs_distances,
    diameter,
    is_bipartite,
    is_block_graph,
)

_EDGE_CHUNK = 2048


def szeged_terms(g: Graph, dm: np.ndarray) -> np.ndarray:
    """Products ``n_u(v) * n_v(u)`` over all edges, sorted decreasingly.

    Vertices equidistant from both endpoints count for neither side.
    """
    if g.m == 0:
        return np.zeros(0, dtype=np.int64)
    edges = np.asarray(g.edges, dtype=np.int64)
    out = np.empty(g.m, dtype=np.int64)
    for start in range(0, g.m, _EDGE_CHUNK):
        chunk = edges[start:start + _EDGE_CHUNK]
        du = dm[chunk[:, 0]]
        dv = dm[chunk[:, 1]]
        nu = np.count_nonzero(du < dv, axis=1).astype(np.int64)
        nv = np.count_nonzero(dv < du, axis=1).astype(np.int64)
        out[start:start + len(chunk)] = nu * nv
    return np.sort(out)[::-1].copy()


def distance_sequence(dm: np.ndarray) -> np.ndarray:
    """Upper-triangle entries of a distance matrix, sorted decreasingly."""
    iu = np.triu_indices(dm.shape[0], k=1)
    return np.sort(dm[iu].astype(np.int64))[::-1].copy()


def _compress(seq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    values, counts = np.unique(seq, return_counts=True)
    return values[::-1].astype(np.float64), counts[::-1].astype(np.float64)


@dataclass(frozen=True)
class IndexProfile:
    """The two sorted integer sequences of a connected graph plus summary counts.

    ``bipartite`` and ``block`` are structural flags; they are ``None`` when
    the profile was built from bare sequences instead of a graph.
    """

    d_seq: np.ndarray
    n_seq: np.ndarray
    n: int
    diam: int
    bipartite: bool | None = None
    block: bool | None = None
    _d_vals: np.ndarray = field(init=False, repr=False, compare=False)
    _d_cnts: np.ndarray = field(init=False, repr=False, compare=False)
    _n_vals: np.ndarray = field(init=False, repr=False, compare=False)
    _n_cnts: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        d = np.asarray(self.d_seq, dtype=np.int64)
        s = np.asarray(self.n_seq, dtype=np.int64)
        if len(d) != self.n * (self.n - 1) // 2:
            raise GraphError(f"distance sequence has length {len(d)}, expected N={self.n * (self.n - 1) // 2}")
        if len(s) > len(d):
            raise GraphError("more edges than vertex pairs")
        if np.any(np.diff(d) > 0) or np.any(np.diff(s) > 0):
            raise GraphError("sequences must be sorted decreasingly")
        if (len(d) and d[-1] < 1) or (len(s) and s[-1] < 1):
            raise GraphError("sequence entries must be positive")
        d.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "d_seq", d)
        object.__setattr__(self, "n_seq", s)
        dv, dc = _compress(d)
        nv, nc = _compress(s)
        object.__setattr__(self, "_d_vals", dv)
        object.__setattr__(self, "_d_cnts", dc)
        object.__setattr__(self, "_n_vals", nv)
        object.__setattr__(self, "_n_cnts", nc)

    @property
    def m(self) -> int:
        return len(self.n_seq)

    @property
    def N(self) -> int:
        return len(self.d_seq)

    @property
    def is_complete(self) -> bool:
        return self.m == self.N

    @property
    def wiener(self) -> int:
        return int(self.d_seq.sum())

    @property
    def szeged(self) -> int:
        return int(self.n_seq.sum())

    @cached_property
    def gap_function(self) -> "GapFunction":
        return GapFunction(self)

    def n_padded(self) -> np.ndarray:
        """``n_seq`` extended with zeros to length N."""
        out = np.zeros(self.N, dtype=np.int64)
        out[: self.m] = self.n_seq
        return out


def build_profile(g: Graph, dm: np.ndarray | None = None, *, check: bool = False) -> IndexProfile:
    """IndexProfile of a connected graph with at least two vertices.

    With ``check=True`` the edge-sequence/distance-sequence majorization is
    asserted (it always holds for connected graphs).
    """
    if g.n < 2:
        raise GraphError("index profile needs at least 2 vertices")
    if dm is None:
        dm = all_pairs_distances(g)
    p = IndexProfile(
        d_seq=distance_sequence(dm),
        n_seq=szeged_terms(g, dm),
        n=g.n,
        diam=diameter(g, dm),
        bipartite=is_bipartite(g),
        block=is_block_graph(g),
    )
    if check:
        from .majorization import majorizes

        assert majorizes(p.n_seq, p.d_seq), "edge terms fail to majorize distances"
    return p


class PowerSumGap:
    """``h(alpha) = sum c_j * a_j**alpha - sum e_j * b_j**alpha`` over weighted values.

    ``a`` are the edge terms and ``b`` the distances, each given as distinct
    values with integer multiplicities. Sums use ``math.fsum``; alpha in
    {0, 1} is evaluated in exact integer arithmetic.
    """

    def __init__(self, n_vals, n_cnts, d_vals, d_cnts):
        self.n_vals = np.asarray(n_vals, dtype=np.float64)
        self.n_cnts = np.asarray(n_cnts, dtype=np.float64)
        self.d_vals = np.asarray(d_vals, dtype=np.float64)
        self.d_cnts = np.asarray(d_cnts, dtype=np.float64)
        self._sz_int = sum(int(v) * int(c) for v, c in zip(self.n_vals, self.n_cnts))
        self._w_int = sum(int(v) * int(c) for v, c in zip(self.d_vals, self.d_cnts))
        self._m = int(self.n_cnts.sum())
        self._N = int(self.d_cnts.sum())

    def szeged_alpha(self, alpha: float) -> float:
        if alpha == 0:
            return float(self._m)
        if alpha == 1:
            return float(self._sz_int)
        return math.fsum(self.n_cnts * np.power(self.n_vals, alpha))

    def wiener_alpha(self, alpha: float) -> float:
        if alpha == 0:
            return float(self._N)
        if alpha == 1:
            return float(self._w_int)
        return math.fsum(self.d_cnts * np.power(self.d_vals, alpha))

    def __call__(self, alpha: float) -> float:
        if alpha == 0:
            return float(self._m - self._N)
        if alpha == 1:
            return float(self._sz_int - self._w_int)
        return math.fsum(np.concatenate([self.n_cnts * np.power(self.n_vals, alpha),
                                         -self.d_cnts * np.power(self.d_vals, alpha)]))

    def derivative(self, alpha: float) -> float:
        return math.fsum(np.concatenate([
            self.n_cnts * np.log(self.n_vals) * np.power(self.n_vals, alpha),
            -self.d_cnts * np.log(self.d_vals) * np.power(self.d_vals, alpha),
        ]))

    def many(self, alphas) -> np.ndarray:
        """Vectorized evaluation on a grid (plain float dot products)."""
        a = np.asarray(alphas, dtype=np.float64)[:, None]
        return np.power(self.n_vals, a) @ self.n_cnts - np.power(self.d_vals, a) @ self.d_cnts

    @property
    def is_degenerate(self) -> bool:
        """Identical sequences (complete graphs) give an identically zero gap."""
        return (len(self.n_vals) == len(self.d_vals)
                and np.array_equal(self.n_vals, self.d_vals)
                and np.array_equal(self.n_cnts, self.d_cnts))

    @property
    def scale(self) -> float:
        """Magnitude for scale-relative tolerances: the classical Szeged index."""
        return float(self._sz_int)


class GapFunction(PowerSumGap):
    """The gap function of one :class:`IndexProfile`."""

    def __init__(self, profile: IndexProfile):
        self.profile = profile
        super().__init__(profile._n_vals, profile._n_cnts, profile._d_vals, profile._d_cnts)


def wiener_alpha(p: IndexProfile, alpha: float) -> float:
    return p.gap_function.wiener_alpha(alpha)


def szeged_alpha(p: IndexProfile, alpha: float) -> float:
    return p.gap_function.szeged_alpha(alpha)


def gap(p: IndexProfile, alpha: float) -> float:
    """``Sz^alpha - W^alpha``; exact at alpha in {0, 1}."""
    return p.gap_function(alpha)


def gap_derivative(p: IndexProfile, alpha: float) -> float:
    return p.gap_function.derivative(alpha)


def classical_indices(p: IndexProfile) -> tuple[int, int]:
    """Exact ``(W, Sz)``."""
    return p.wiener, p.szeged
