"""KS-entropy, Lyapunov exponents and lifetimes from a solved KS-time."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ks_solver import KsSolution
from .spectra import NATURAL_UNITS, PoleSpectrum, UnitSystem
from .volume import VolumeElement, log_mean_growth


def _dv0(v) -> float:
    return v.dv0 if isinstance(v, VolumeElement) else float(v)


def ks_entropy_from_time(sol: KsSolution, v: VolumeElement | float, units: UnitSystem = NATURAL_UNITS) -> float:
    """``h_KS = ln(1/dv0) / t0`` (equivalently ``(gamma0/hbar) ln(1/dv0) / T0``)."""
    if not sol.t0 > 0:
        raise ValueError("KS-entropy is undefined for t0 = 0 (volume already spread)")
    dv0 = _dv0(v)
    if not 0.0 < dv0 < 1.0:
        raise ValueError(f"initial volume must lie in (0, 1), got {dv0!r}")
    return (units.gamma0 / units.hbar) * math.log(1.0 / dv0) / sol.T0


def ks_time(h_ks: float) -> float:
    """``tau_KS = 1/h_KS``."""
    return 1.0 / h_ks


def lyapunov_sum_at(s: PoleSpectrum, sol: KsSolution) -> float:
    """Sum of positive Lyapunov exponents from the poles at the KS-time.

    ``(1/t0) log((1/N) sum_i exp(2 gamma_i t0/hbar))``.
    """
    return log_mean_growth(s, sol.t0) / sol.t0


def per_mode_exponent(h_ks: float, n_bath: int, units: UnitSystem = NATURAL_UNITS) -> tuple[float, float, float]:
    """Split ``h_KS`` equally over ``n_bath`` oscillators.

    Returns ``(sigma_prime, sigma0, alpha)``: the per-mode exponent of the
    reversed system, the (negative) exponent of the dissipative original, and
    the dimensionless coupling ``sigma_prime * hbar / gamma0``.
    """
    if n_bath < 1:
        raise ValueError("n_bath must be >= 1")
    if h_ks < 0:
        raise ValueError("h_ks must be >= 0")
    sigma_prime = h_ks / n_bath
    return sigma_prime, -sigma_prime, sigma_prime * units.hbar / units.gamma0


@dataclass(frozen=True)
class PesinReport:
    h_ks: float
    lyap_sum: float
    sigma_per_mode: float
    sigma_original: float
    alpha: float
    reversed: bool = True
    pole_sum: float = math.nan
    tau_ks: float = math.nan

    def as_dict(self) -> dict:
        return {
            "h_ks": self.h_ks,
            "tau_ks": self.tau_ks,
            "lyap_sum": self.lyap_sum,
            "pole_sum": self.pole_sum,
            "sigma_per_mode": self.sigma_per_mode,
            "sigma_original": self.sigma_original,
            "alpha": self.alpha,
            "reversed": self.reversed,
        }


def pesin_report(s: PoleSpectrum, sol: KsSolution, v: VolumeElement | float, n_bath: int | None = None, reversed: bool = True) -> PesinReport:
    """Full report for a solved (expanding) spectrum.

    ``n_bath`` defaults to ``len(s) - 1``, the bath size of a Gamow spectrum
    (whose k=0 pole is the bare oscillator); single-pole spectra use 1.
    """
    if n_bath is None:
        n_bath = max(len(s) - 1, 1)
    h = ks_entropy_from_time(sol, v, s.units)
    sigma_prime, sigma0, alpha = per_mode_exponent(h, n_bath, s.units)
    return PesinReport(
        h_ks=h,
        lyap_sum=h,
        sigma_per_mode=sigma_prime,
        sigma_original=sigma0,
        alpha=alpha,
        reversed=reversed,
        pole_sum=lyapunov_sum_at(s, sol),
        tau_ks=ks_time(h),
    )


@dataclass(frozen=True)
class LifetimeTable:
    """Per-level decay rates ``lambda_n`` (magnitudes) and lifetimes ``t_n = 1/lambda_n``.

    The dissipative exponent of level n is ``-lambda_n``.
    """

    levels: np.ndarray
    lyapunov: np.ndarray
    lifetime: np.ndarray
    sign: int = -1

    def rows(self):
        return list(zip(self.levels.tolist(), self.lyapunov.tolist(), self.lifetime.tolist()))

    @property
    def signed_lyapunov(self) -> np.ndarray:
        return self.sign * self.lyapunov


def lifetimes(alpha: float, n_bath: int, units: UnitSystem = NATURAL_UNITS) -> LifetimeTable:
    """``lambda_n = n alpha gamma0/hbar`` and ``t_n = hbar/(n alpha gamma0)`` for n = 1..n_bath."""
    if not alpha > 0:
        raise ValueError("alpha must be > 0")
    if n_bath < 1:
        raise ValueError("n_bath must be >= 1")
    n = np.arange(1, int(n_bath) + 1, dtype=np.float64)
    rate = alpha * units.gamma0 / units.hbar
    lam = n * rate
    t = units.t_R / (n * alpha)
    return LifetimeTable(levels=n.astype(int), lyapunov=lam, lifetime=t)


def self_consistent_alpha(h_ks: float, n_bath: int, units: UnitSystem = NATURAL_UNITS) -> float:
    return h_ks * units.hbar / (n_bath * units.gamma0)


def generalized_pesin_residual(s: PoleSpectrum, sol: KsSolution, alpha: float, n_bath: int | None = None) -> float:
    """``H_KS = sum sigma' - alpha N gamma0/hbar``: Lyapunov sum minus the escape rate.

    Zero for the self-consistent coupling. ``n_bath`` defaults to ``len(s) - 1``.
    """
    if n_bath is None:
        n_bath = max(len(s) - 1, 1)
    escape_rate = alpha * n_bath * s.units.gamma0 / s.units.hbar
    return lyapunov_sum_at(s, sol) - escape_rate
