"""Majorization of unequal-length sequences and sufficient conditions for a unique root.

A decreasing sequence ``x`` majorizes ``y`` when every prefix sum of ``x``
dominates the matching prefix sum of ``y``, the shorter one padded with zeros.
The certificate checks below are each sufficient for the gap function to have
exactly one positive root; none of them is necessary, so a failed check means
"not certified" and nothing more.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .invariants import IndexProfile, gap

REL_TOL = 1e-12


class NotARootError(ValueError):
    pass


class CertificateKind(str, enum.Enum):
    BLOCK_GRAPH = "BlockGraph"
    SPARSE_REGIME = "SparseRegime"
    BIPARTITE = "Bipartite"
    DIAMETER_2 = "Diameter2"
    DIAMETER_3_SPARSE = "Diameter3Sparse"
    CONDITION_I = "ConditionI"
    CONDITION_II = "ConditionII"
    POWER_MEAN = "PowerMean"
    POWERED_MAJORIZATION = "PoweredMajorization"


# cheapest first; the first kind that holds names the certificate
CHECK_ORDER = tuple(CertificateKind)


@dataclass(frozen=True)
class Certificate:
    kind: CertificateKind | None
    holds: bool
    detail: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.kind.value if self.kind is not None else "none"


def _as_sorted_array(x: Sequence[float] | np.ndarray, label: str) -> np.ndarray:
    a = np.asarray(x)
    if a.ndim != 1:
        raise ValueError(f"{label} must be one-dimensional")
    if len(a) > 1 and np.any(np.diff(a) > 0):
        raise ValueError(f"{label} is not sorted decreasingly")
    return a


def _prefix_dominates(px: np.ndarray, py: np.ndarray, rel_tol: float) -> np.ndarray:
    if rel_tol == 0:
        return px >= py
    return px >= py - rel_tol * np.abs(py)


def majorizes(x, y, rel_tol: float = 0.0) -> bool:
    """True iff decreasing ``x`` majorizes decreasing ``y`` (zero-padded).

    Integer inputs are compared exactly. ``rel_tol`` loosens each prefix
    comparison to ``sum x >= sum y - rel_tol * |sum y|`` for float inputs.
    """
    a = _as_sorted_array(x, "x")
    b = _as_sorted_array(y, "y")
    k = max(len(a), len(b))
    integer = np.issubdtype(a.dtype, np.integer) and np.issubdtype(b.dtype, np.integer)
    dtype = np.int64 if integer else np.float64
    pa = np.zeros(k, dtype=dtype)
    pb = np.zeros(k, dtype=dtype)
    pa[: len(a)] = a
    pb[: len(b)] = b
    return bool(np.all(_prefix_dominates(np.cumsum(pa), np.cumsum(pb), 0.0 if integer else rel_tol)))


def karamata_gap_check(x: Sequence[int], y: Sequence[int], f: Callable[[float], float]) -> bool:
    """Check ``sum f(x) >= sum f(y) + (sum x - sum y)`` for majorizing integer sequences.

    ``f`` must be convex and increasing on the nonnegative reals with
    ``f(0) = 0`` and ``f(1) = 1``; under those hypotheses the inequality always
    holds, so ``False`` flags a bug rather than a counterexample.
    """
    xs = [int(v) for v in x]
    ys = [int(v) for v in y]
    if any(v < 0 for v in xs + ys):
        raise ValueError("sequences must be nonnegative")
    if not majorizes(np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64)):
        raise ValueError("x does not majorize y")
    t = sum(xs) - sum(ys)
    lhs = math.fsum(f(v) for v in xs)
    rhs = math.fsum([*(f(v) for v in ys), t])
    return lhs >= rhs - REL_TOL * max(abs(rhs), 1.0)


def check_condition_I(p: IndexProfile) -> Certificate:
    """Single crossing: ``n_i >= d_i`` up to some index j and ``n_i <= d_i`` after it.

    The reported ``j`` is the longest valid prefix (1-based count).
    """
    diff = p.n_padded() - p.d_seq
    below = np.flatnonzero(diff < 0)
    j = int(below[0]) if len(below) else p.N
    holds = not np.any(diff[j:] > 0)
    return Certificate(CertificateKind.CONDITION_I, holds, {"j": j} if holds else {})


def check_condition_II(p: IndexProfile) -> Certificate:
    """Prefix products of ``n_i`` dominate those of ``d_i`` for every j <= m (log form)."""
    m = p.m
    ln_n = np.cumsum(np.log(p.n_seq.astype(np.float64)))
    ln_d = np.cumsum(np.log(p.d_seq[:m].astype(np.float64)))
    ok = ln_n >= ln_d - REL_TOL * np.maximum(np.abs(ln_d), 1.0)
    holds = bool(np.all(ok))
    detail = {} if holds else {"first_failure": int(np.flatnonzero(~ok)[0]) + 1}
    return Certificate(CertificateKind.CONDITION_II, holds, detail)


def check_power_mean(p: IndexProfile, alpha: float) -> Certificate:
    """Power mean of the distances at least ``(m/N)**(1/alpha) * diam``.

    Evaluated in the equivalent form ``sum d_i**alpha >= m * diam**alpha``.
    """
    if alpha <= 0:
        raise ValueError("power-mean check needs alpha > 0")
    total = math.fsum(np.power(p.d_seq.astype(np.float64), alpha))
    threshold = p.m * p.diam ** alpha
    holds = total >= threshold - REL_TOL * threshold
    mu = (total / p.N) ** (1 / alpha)
    return Certificate(
        CertificateKind.POWER_MEAN,
        bool(holds),
        {"mu_alpha": mu, "bound": (p.m / p.N) ** (1 / alpha) * p.diam},
    )


def sparse_bound(n: int) -> float:
    return (n ** (4 / 3) - n ** (1 / 3)) / 4


def check_sparse_regime(n: int, m: int) -> Certificate:
    if n < 2:
        raise ValueError("sparse-regime check needs n >= 2")
    bound = sparse_bound(n)
    return Certificate(CertificateKind.SPARSE_REGIME, m <= bound, {"bound": bound})


def powered_majorization(p: IndexProfile, alpha: float) -> Certificate:
    """``(n_i**alpha)`` majorizes ``(d_i**alpha)``, checked on the first m prefixes.

    Longer prefixes need no check at a root: the left side is then the whole
    of ``Sz^alpha = W^alpha``, which bounds every prefix of the distances.
    """
    x = np.power(p.n_seq.astype(np.float64), alpha)
    y = np.power(p.d_seq[: p.m].astype(np.float64), alpha)
    return Certificate(CertificateKind.POWERED_MAJORIZATION, majorizes(x, y, rel_tol=REL_TOL))


def root_tolerance(p: IndexProfile) -> float:
    return 1e-9 * max(p.szeged, 1)


def certify_uniqueness(p: IndexProfile, alpha_root: float, tol_f: float | None = None) -> Certificate:
    """Run every sufficient condition at a root; name the first one that holds.

    ``detail["checks"]`` maps each certificate kind to its verdict.
    """
    if p.is_complete:
        raise NotARootError("complete graph: the gap vanishes identically")
    if alpha_root <= 0:
        raise NotARootError(f"roots are positive, got alpha={alpha_root}")
    tol = root_tolerance(p) if tol_f is None else tol_f
    h = gap(p, alpha_root)
    if abs(h) > tol:
        raise NotARootError(f"|h({alpha_root})| = {abs(h):.3g} exceeds tolerance {tol:.3g}")

    results: dict[CertificateKind, Certificate] = {
        CertificateKind.BLOCK_GRAPH: Certificate(CertificateKind.BLOCK_GRAPH, bool(p.block)),
        CertificateKind.SPARSE_REGIME: check_sparse_regime(p.n, p.m),
        CertificateKind.BIPARTITE: Certificate(CertificateKind.BIPARTITE, bool(p.bipartite)),
        CertificateKind.DIAMETER_2: Certificate(CertificateKind.DIAMETER_2, p.diam == 2),
        CertificateKind.DIAMETER_3_SPARSE: Certificate(
            CertificateKind.DIAMETER_3_SPARSE, p.diam == 3 and 2 * p.m <= p.N
        ),
        CertificateKind.CONDITION_I: check_condition_I(p),
        CertificateKind.CONDITION_II: check_condition_II(p),
        CertificateKind.POWER_MEAN: check_power_mean(p, alpha_root),
        CertificateKind.POWERED_MAJORIZATION: powered_majorization(p, alpha_root),
    }
    checks = {k.value: results[k].holds for k in CHECK_ORDER}
    for kind in CHECK_ORDER:
        c = results[kind]
        if c.holds:
            return Certificate(kind, True, {**c.detail, "alpha": alpha_root, "checks": checks})
    return Certificate(None, False, {"alpha": alpha_root, "checks": checks})
