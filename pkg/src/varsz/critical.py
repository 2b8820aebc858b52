"""Root location for the gap function and per-graph conjecture verdicts."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Protocol, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .invariants import GapFunction, IndexProfile
from .majorization import Certificate, certify_uniqueness

DEFAULT_LO = 1e-3
DEFAULT_HI = 1.5
DEFAULT_STEP = 1e-3
DEFAULT_TOL_X = 1e-10
WEAK_ALPHAS = (1.1, 1.5, 2.0, 3.0)

_MAX_BISECT = 200


class ScalarFunction(Protocol):
    def __call__(self, alpha: float) -> float: ...

    def many(self, alphas: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class Root:
    alpha: float
    bracket: tuple[float, float]
    derivative_sign: int  # +1 crossing upward, -1 downward


@dataclass
class RootReport:
    scan_interval: tuple[float, float]
    roots: list[Root]
    suspected_tangencies: list[tuple[float, float]] = field(default_factory=list)
    degenerate: bool = False
    tol_x: float = DEFAULT_TOL_X
    tol_f: float = 0.0

    @property
    def alphas(self) -> list[float]:
        return [r.alpha for r in self.roots]


class VerdictKind(str, enum.Enum):
    CERTIFIED_UNIQUE = "CertifiedUnique"
    MULTIPLE_ROOTS = "MultipleRoots"
    SINGLE_ROOT_UNCERTIFIED = "SingleRootUncertified"


@dataclass(frozen=True)
class StrongVerdict:
    kind: VerdictKind
    certificate: Certificate | None = None
    alpha_g: float | None = None


def _sign(v: float) -> int:
    return (v > 0) - (v < 0)


def make_grid(lo: float, hi: float, step: float, exact_points: Iterable[float] = ()) -> np.ndarray:
    """Points ``lo + i*step`` up to ``hi`` (always included), with exact points spliced in."""
    k = int(math.floor((hi - lo) / step + 1e-9))
    grid = lo + step * np.arange(k + 1)
    if hi - grid[-1] > 1e-9 * step:
        grid = np.append(grid, hi)
    else:
        grid[-1] = hi
    for x in exact_points:
        if lo <= x <= hi:
            i = int(np.argmin(np.abs(grid - x)))
            if abs(grid[i] - x) <= 1e-6 * step:
                grid[i] = x
            else:
                grid = np.sort(np.append(grid, x))
    return grid


def _zero_bracket(f: Callable[[float], float], x: float, tol_x: float) -> tuple[tuple[float, float], int]:
    """Bracket of width tol_x around an exact zero, if the signs on either side differ."""
    a, b = x - 0.4 * tol_x, x + 0.4 * tol_x
    sa, sb = _sign(f(a)), _sign(f(b))
    if sa * sb < 0:
        return (a, b), sb
    return (x, x), 0


def bisect(f: Callable[[float], float], a: float, b: float, tol_x: float, tol_f: float) -> Root:
    """Refine a sign-change bracket until it is at most ``tol_x`` wide and ``|f| <= tol_f``."""
    fa, fb = f(a), f(b)
    if _sign(fa) * _sign(fb) >= 0:
        raise ValueError(f"[{a}, {b}] does not bracket a sign change")
    direction = 1 if fb > 0 else -1
    for _ in range(_MAX_BISECT):
        if b - a <= tol_x and min(abs(fa), abs(fb)) <= tol_f:
            break
        mid = 0.5 * (a + b)
        if not a < mid < b:
            break
        fm = f(mid)
        if fm == 0:
            bracket, _ = _zero_bracket(f, mid, tol_x)
            return Root(float(mid), bracket, direction)
        if _sign(fm) == _sign(fa):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    alpha = a if abs(fa) <= abs(fb) else b
    return Root(float(alpha), (float(a), float(b)), direction)


def scan_roots(
    f: ScalarFunction,
    lo: float,
    hi: float,
    step: float,
    tol_x: float,
    tol_f: float,
    exact_points: Sequence[float] = (),
) -> tuple[list[Root], list[tuple[float, float]]]:
    """All sign-change roots of ``f`` on ``[lo, hi]`` plus suspected tangencies.

    Sign changes between grid points are refined by bisection. Interior local
    minima of ``|f|`` are polished with a bounded 1-D minimizer: a dip through
    zero yields two roots, a dip to within ``tol_f`` becomes a suspected
    tangency.
    """
    if not lo < hi:
        raise ValueError(f"invalid interval ({lo}, {hi})")
    if step <= 0:
        raise ValueError(f"grid step must be positive, got {step}")
    grid = make_grid(lo, hi, step, exact_points)
    vals = np.asarray(f.many(grid), dtype=np.float64)
    for x in exact_points:
        hit = np.flatnonzero(grid == x)
        if len(hit):
            vals[hit] = f(x)
    signs = np.sign(vals).astype(int)

    roots: list[Root] = []
    tangencies: list[tuple[float, float]] = []
    root_cells: set[int] = set()
    nz = np.flatnonzero(signs != 0)

    for a_i, b_i in zip(nz[:-1], nz[1:]):
        opposite = signs[a_i] != signs[b_i]
        if b_i == a_i + 1:
            if opposite:
                # recheck with the scalar path before bisecting
                fa, fb = f(grid[a_i]), f(grid[b_i])
                if _sign(fa) * _sign(fb) < 0:
                    roots.append(bisect(f, grid[a_i], grid[b_i], tol_x, tol_f))
                    root_cells.add(int(a_i))
            continue
        zeros = grid[a_i + 1:b_i]
        if opposite and len(zeros) == 1:
            bracket, sgn = _zero_bracket(f, float(zeros[0]), tol_x)
            roots.append(Root(float(zeros[0]), bracket, sgn or int(signs[b_i])))
        else:
            tangencies.append((float(grid[a_i]), float(grid[b_i])))
        root_cells.update(range(int(a_i), int(b_i)))

    # exact zeros at the ends of the grid
    if len(nz):
        for edge, inner in ((0, nz[0]), (len(grid) - 1, nz[-1])):
            if signs[edge] == 0 and abs(edge - inner) == 1:
                bracket, sgn = _zero_bracket(f, float(grid[edge]), tol_x)
                if sgn:
                    roots.append(Root(float(grid[edge]), bracket, sgn))

    # interior local minima of |f| away from detected crossings
    absv = np.abs(vals)
    mid = slice(1, len(grid) - 1)
    dips = (
        (signs[mid] != 0)
        & (signs[:-2] == signs[mid]) & (signs[2:] == signs[mid])
        & (absv[mid] <= absv[:-2]) & (absv[mid] <= absv[2:])
    )
    for i in np.flatnonzero(dips) + 1:
        i = int(i)
        if {i - 1, i} & root_cells:
            continue
        s = int(signs[i])
        a, b = float(grid[i - 1]), float(grid[i + 1])
        res = minimize_scalar(lambda x: s * f(x), bounds=(a, b), method="bounded",
                              options={"xatol": tol_x})
        xmin, fmin = float(res.x), float(s * f(res.x))
        if fmin < 0:
            roots.append(bisect(f, a, xmin, tol_x, tol_f))
            roots.append(bisect(f, xmin, b, tol_x, tol_f))
        elif fmin <= tol_f:
            tangencies.append((a, b))

    roots.sort(key=lambda r: r.alpha)
    tangencies.sort()
    return roots, tangencies


def find_roots(
    gf,
    lo: float = DEFAULT_LO,
    hi: float = DEFAULT_HI,
    grid_step: float = DEFAULT_STEP,
    tol_x: float = DEFAULT_TOL_X,
    tol_f: float | None = None,
) -> RootReport:
    """Locate every sign change of the gap function on ``[lo, hi]``.

    ``gf`` is a :class:`GapFunction` or any object with ``__call__``, ``many``,
    ``scale`` and ``is_degenerate``. Complete graphs give a degenerate report
    with no roots. ``alpha = 1`` is evaluated exactly, so block graphs get
    their root there without rounding.
    """
    if not 0 < lo < hi:
        raise ValueError(f"invalid scan interval ({lo}, {hi})")
    if grid_step <= 0:
        raise ValueError(f"grid step must be positive, got {grid_step}")
    if tol_f is None:
        tol_f = 1e-9 * max(gf.scale, 1.0)
    if gf.is_degenerate:
        return RootReport((lo, hi), [], degenerate=True, tol_x=tol_x, tol_f=tol_f)
    roots, tangencies = scan_roots(gf, lo, hi, grid_step, tol_x, tol_f, exact_points=(1.0,))
    return RootReport((lo, hi), roots, tangencies, tol_x=tol_x, tol_f=tol_f)


def strong_conjecture_verdict(p: IndexProfile, report: RootReport) -> StrongVerdict:
    lo, hi = report.scan_interval
    if lo > 0.01 or hi < 1.5:
        raise ValueError("verdict needs a scan covering (0.01, 1.5]")
    if report.degenerate:
        raise ValueError("complete graph: no verdict")
    if len(report.roots) >= 2:
        return StrongVerdict(VerdictKind.MULTIPLE_ROOTS)
    if not report.roots:
        raise ValueError("scan found no root; a non-complete connected graph always has one in (0, 1]")
    alpha = report.roots[0].alpha
    cert = certify_uniqueness(p, alpha, tol_f=max(report.tol_f, 1e-9 * max(p.szeged, 1)))
    if cert.holds:
        return StrongVerdict(VerdictKind.CERTIFIED_UNIQUE, cert, alpha)
    return StrongVerdict(VerdictKind.SINGLE_ROOT_UNCERTIFIED, cert, alpha)


def weak_conjecture_check(gf: GapFunction, alphas: Sequence[float] = WEAK_ALPHAS) -> bool:
    """True iff ``h(alpha) > h(1) >= 0`` for every supplied ``alpha > 1``."""
    bad = [a for a in alphas if not a > 1]
    if bad:
        raise ValueError(f"weak-conjecture exponents must exceed 1, got {bad}")
    if gf.is_degenerate:
        raise ValueError("complete graph: the gap vanishes identically")
    h1 = gf(1.0)
    return h1 >= 0 and all(gf(a) > h1 for a in alphas)
