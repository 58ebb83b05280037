"""KS-time: the time at which an initial volume has spread to saturation.

Solves ``log dV(t0) = 0`` by bracket expansion plus bisection in the log
domain. The log-volume is a log-sum-exp of linear functions of ``t`` and hence
convex, so it has at most one positive root; it exists iff some width is
positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import lambertw, logsumexp

from .spectra import NATURAL_UNITS, PoleSpectrum, UnitSystem
from .volume import VolumeElement, rates


class KsSolverError(ArithmeticError):
    pass


class NoPositiveRoot(KsSolverError):
    def __init__(self, message=None):
        super().__init__(
            message
            or "no pole has positive width, so the volume never spreads; "
            "solve the time-reversed spectrum instead (time_reverse)"
        )


class NonConvergence(KsSolverError):
    def __init__(self, bracket: tuple[float, float], iterations: int):
        super().__init__(
            f"no convergence after {iterations} iterations, bracket [{bracket[0]!r}, {bracket[1]!r}]"
        )
        self.bracket = bracket
        self.iterations = iterations


class InvalidVolume(KsSolverError, ValueError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    rel_tol: float = 1e-12
    max_iter: int = 200
    scan_points: int = 1024

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be > 0")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.scan_points < 2:
            raise ValueError("scan_points must be >= 2")


DEFAULT_CONFIG = SolverConfig()

_SCAN_BLOCK = 1 << 20


@dataclass(frozen=True)
class KsSolution:
    """Root of the saturation equation.

    ``t0`` is in the time unit of the spectrum, ``T0 = t0/t_R``. ``tolerance``
    is the certified bound on ``residual``: ``rel_tol * t0 * max|2 gamma/hbar|``.
    """

    t0: float
    T0: float
    residual: float
    bracket: tuple[float, float]
    iterations: int
    tolerance: float = 0.0


def _check_volume(dv0: float) -> None:
    if not (0.0 < dv0 <= 1.0) or math.isnan(dv0):
        raise InvalidVolume(f"initial volume must lie in (0, 1], got {dv0!r}")


def _saturation_root(r: np.ndarray, dv0: float, t_start: float, t_R: float, cfg: SolverConfig) -> KsSolution:
    """Smallest positive root of ``log(dv0) - log(N) + LSE(r*t)``."""
    offset = math.log(dv0) - math.log(r.size)

    def f(t):
        return offset + float(logsumexp(r * t))

    iterations = 0
    lo, hi = 0.0, t_start
    while f(hi) <= 0.0:
        iterations += 1
        if iterations > cfg.max_iter:
            raise NonConvergence((lo, hi), iterations - 1)
        lo, hi = hi, 2.0 * hi

    if np.any(r < 0):
        # mixed signs: locate the first crossing on a log-spaced grid
        grid = np.geomspace(t_start, hi, cfg.scan_points)
        block = max(1, _SCAN_BLOCK // r.size)
        values = np.concatenate([
            offset + logsumexp(np.outer(grid[i:i + block], r), axis=1)
            for i in range(0, grid.size, block)
        ])
        positive = values > 0.0
        if positive.any():
            first = int(np.argmax(positive))
            hi = float(grid[first])
            lo = float(grid[first - 1]) if first > 0 else 0.0

    while hi - lo > cfg.rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        iterations += 1
        if iterations > cfg.max_iter:
            raise NonConvergence((lo, hi), iterations - 1)
        if f(mid) > 0.0:
            hi = mid
        else:
            lo = mid

    t0 = 0.5 * (lo + hi)
    scale = t0 * float(np.max(np.abs(r)))
    return KsSolution(
        t0=t0,
        T0=t0 / t_R,
        residual=abs(f(t0)),
        bracket=(lo, hi),
        iterations=iterations,
        tolerance=cfg.rel_tol * scale,
    )


def _trivial() -> KsSolution:
    return KsSolution(t0=0.0, T0=0.0, residual=0.0, bracket=(0.0, 0.0), iterations=0)


def solve_ks_time(s: PoleSpectrum, v: VolumeElement | float, cfg: SolverConfig = DEFAULT_CONFIG) -> KsSolution:
    """KS-time ``t0`` with ``dV(t0) = 1`` for spectrum ``s``.

    Raises NoPositiveRoot when every width is <= 0 and ``dv0 < 1``.
    """
    dv0 = v.dv0 if isinstance(v, VolumeElement) else float(v)
    _check_volume(dv0)
    if dv0 == 1.0:
        return _trivial()
    r = rates(s)
    if not np.any(r > 0):
        raise NoPositiveRoot()
    t_R = s.units.t_R
    return _saturation_root(r, dv0, cfg.rel_tol * t_R, t_R, cfg)


def solve_gamow(n: int, dv0: float, cfg: SolverConfig = DEFAULT_CONFIG, units: UnitSystem = NATURAL_UNITS) -> KsSolution:
    """KS-time of the time-reversed Gamow model with ``n`` bath oscillators.

    Solves ``(n+1) = dv0 * sum_{k=0..n} exp(2 k T0)`` in units of ``t_R``.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"Gamow model needs at least one bath level, got {n!r}")
    _check_volume(dv0)
    if dv0 == 1.0:
        return _trivial()
    r = 2.0 * np.arange(int(n) + 1, dtype=np.float64)
    sol = _saturation_root(r, dv0, cfg.rel_tol, 1.0, cfg)
    if units.t_R == 1.0:
        return sol
    t_R = units.t_R
    return KsSolution(
        t0=sol.T0 * t_R,
        T0=sol.T0,
        residual=sol.residual,
        bracket=(sol.bracket[0] * t_R, sol.bracket[1] * t_R),
        iterations=sol.iterations,
        tolerance=sol.tolerance,
    )


def asymptotic_fixed_point(dv0: float) -> float:
    """Root ``x > 1`` of ``x = ln(x/dv0)``, i.e. ``x = -W_{-1}(-dv0)``.

    Real only for ``dv0 <= 1/e``.
    """
    if not 0.0 < dv0 <= math.exp(-1.0):
        raise ValueError(f"x = ln(x/dv0) has no real root for dv0={dv0!r} (need dv0 <= 1/e)")
    x = float(-lambertw(-dv0, k=-1).real)
    # lambertw returns nan a rounding error past the branch point -1/e, where x = 1
    return x if math.isfinite(x) else 1.0


def asymptotic_T0(dv0: float, n: int) -> float:
    """Large-``n`` estimate ``x/(2n)`` of the Gamow KS-time."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return asymptotic_fixed_point(dv0) / (2.0 * n)


def asymptotic_slope(dv0: float) -> float:
    """Large-``n`` slope of ``h_KS(n)``: ``2 ln(1/dv0) / x``."""
    return 2.0 * math.log(1.0 / dv0) / asymptotic_fixed_point(dv0)
