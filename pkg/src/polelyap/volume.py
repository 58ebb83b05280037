"""Phase-space volume carried by the pole spectrum.

An initial cell of volume ``dv0`` (fraction of the bounded region, i.e. the
inverse quasiclassical parameter) evolves as

    dV(t) = dv0/N * sum_i exp(2 gamma_i t / hbar)

All sums are done as a max-shifted log-sum-exp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .spectra import PoleSpectrum

_LOG_FLOAT_MAX = math.log(np.finfo(np.float64).max)


class VolumeOverflowError(OverflowError):
    """The evolved volume is not representable as a float; ``log_volume`` holds its log."""

    def __init__(self, log_volume: float):
        super().__init__(f"volume exp({log_volume:.6g}) overflows float64")
        self.log_volume = log_volume


@dataclass(frozen=True)
class VolumeElement:
    dv0: float
    saturation: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.dv0 <= 1.0):
            raise ValueError(f"initial volume must lie in (0, 1], got {self.dv0!r}")
        if self.saturation != 1.0:
            raise ValueError("saturation volume is fixed at 1")

    @property
    def quasiclassical_parameter(self) -> float:
        """``q = S/hbar = 1/dv0``."""
        return 1.0 / self.dv0


@dataclass(frozen=True)
class EscapeFactor:
    gamma_escape: float
    time: float

    @property
    def contraction(self) -> float:
        """Measure ratio ``exp(-gamma_escape)``."""
        return math.exp(-self.gamma_escape)


def rates(s: PoleSpectrum) -> np.ndarray:
    """Growth rates ``2 gamma_i / hbar`` of the diagonal volume terms."""
    return 2.0 * s.gammas / s.units.hbar


def log_mean_growth(s: PoleSpectrum, t: float) -> float:
    """``log((1/N) sum_i exp(2 gamma_i t/hbar))``."""
    return float(logsumexp(rates(s) * t)) - math.log(len(s))


def log_volume(s: PoleSpectrum, v: VolumeElement, t: float) -> float:
    return math.log(v.dv0) + log_mean_growth(s, t)


def evolve_volume(s: PoleSpectrum, v: VolumeElement, t: float) -> float:
    if t == 0:
        return v.dv0
    lv = log_volume(s, v, t)
    if lv > _LOG_FLOAT_MAX:
        raise VolumeOverflowError(lv)
    return math.exp(lv)


def escape_factor(s: PoleSpectrum, t: float) -> EscapeFactor:
    """Contraction exponent of the conditionally invariant measure after time ``t``.

    ``mu(T_t A) = exp(-gamma) mu(A)``; the unit-step map is ``t = 1`` and its
    inverse is the same call on ``time_reverse(s)``.
    """
    return EscapeFactor(-log_mean_growth(s, t), t)
