"""The counterexample family G(k, l) and its closed-form indices.

G(k, l) is the complete graph on ``v_1..v_k`` with the Hamiltonian cycle
``v_1 v_2 ... v_k v_1`` removed, every ``v_i`` joined to ``u_1``, and a path
``u_1 u_2 ... u_{l+1}`` hanging off ``u_1``. Vertex ids: ``v_i -> i-1`` and
``u_j -> k+j-1``. The closed forms assume ``k >= 6``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .critical import DEFAULT_STEP, DEFAULT_TOL_X, scan_roots
from .graph import Graph
from .invariants import PowerSumGap


@dataclass(frozen=True)
class GklParams:
    k: int
    ell: int

    def __post_init__(self):
        if self.k < 6:
            raise ValueError(f"k must be at least 6, got {self.k}")
        if self.ell < 1:
            raise ValueError(f"ell must be at least 1, got {self.ell}")

    @property
    def n(self) -> int:
        return self.k + self.ell + 1

    @property
    def m(self) -> int:
        return math.comb(self.k, 2) + self.ell


def build_gkl(p: GklParams) -> Graph:
    k, ell = p.k, p.ell
    edges = []
    for a in range(k):
        for b in range(a + 1, k):
            if (b - a) % k not in (1, k - 1):
                edges.append((a, b))
    u1 = k
    edges.extend((u1, a) for a in range(k))
    edges.extend((k + j, k + j + 1) for j in range(ell))
    return Graph.from_edges(p.n, edges)


def distance_census(p: GklParams) -> dict[int, int]:
    """Number of vertex pairs at each distance."""
    k, ell = p.k, p.ell
    census = {1: math.comb(k, 2) + ell, 2: 2 * k + ell - 1}
    for i in range(3, ell + 2):
        census[i] = k + ell + 1 - i
    return census


def szeged_census(p: GklParams) -> dict[int, int]:
    """Multiplicity of each edge term ``n_u(v) * n_v(u)``."""
    k, ell = p.k, p.ell
    census: dict[int, int] = {}
    terms = [(4, k), (9, math.comb(k, 2) - 2 * k), (ell + 3, k)]
    terms += [((k + i) * (ell + 1 - i), 1) for i in range(1, ell + 1)]
    for value, count in terms:
        census[value] = census.get(value, 0) + count
    return census


def closed_form_gap(p: GklParams) -> PowerSumGap:
    dc = distance_census(p)
    sc = szeged_census(p)
    return PowerSumGap(list(sc), list(sc.values()), list(dc), list(dc.values()))


def wiener_alpha_closed(p: GklParams, alpha: float) -> float:
    return closed_form_gap(p).wiener_alpha(alpha)


def szeged_alpha_closed(p: GklParams, alpha: float) -> float:
    return closed_form_gap(p).szeged_alpha(alpha)


def count_roots(
    p: GklParams,
    lo: float = DEFAULT_STEP,
    hi: float = 1.0,
    step: float = DEFAULT_STEP,
    tol_x: float = DEFAULT_TOL_X,
) -> int:
    """Number of sign-change roots of the closed-form gap on ``[lo, hi]``."""
    h = closed_form_gap(p)
    roots, _ = scan_roots(h, lo, hi, step, tol_x, 1e-9 * h.scale, exact_points=(1.0,))
    return len(roots)


def search_multiroot(
    k_range: Iterable[int],
    ell_range: Iterable[int],
    lo: float = DEFAULT_STEP,
    hi: float = 1.0,
    step: float = DEFAULT_STEP,
    tol_x: float = DEFAULT_TOL_X,
    min_roots: int = 3,
) -> list[tuple[GklParams, int]]:
    """All ``(k, l)`` cells whose closed-form gap has at least ``min_roots`` roots."""
    ells = list(ell_range)
    hits = []
    for k in k_range:
        for ell in ells:
            p = GklParams(k, ell)
            c = count_roots(p, lo, hi, step, tol_x)
            if c >= min_roots:
                hits.append((p, c))
    return hits


def gkl_grid_values(p: GklParams, alphas) -> np.ndarray:
    return closed_form_gap(p).many(np.asarray(alphas, dtype=np.float64))
