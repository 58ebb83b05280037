"""Pole spectra of non-Hermitian Hamiltonians.

A spectrum is an ordered set of complex eigenvalues ``E_k = hbar*omega_k + i*gamma_k``.
Only the imaginary parts enter the phase-space volume dynamics; the real parts
are carried along so spectrum files round-trip.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

import numpy as np


@dataclass(frozen=True)
class UnitSystem:
    """Action unit ``hbar`` and reference resonance width ``gamma0``."""

    hbar: float = 1.0
    gamma0: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "gamma0"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and > 0, got {value!r}")

    @property
    def t_R(self) -> float:
        """Relaxation (decoherence) time ``hbar / gamma0``."""
        return self.hbar / self.gamma0


NATURAL_UNITS = UnitSystem()


class Pole(NamedTuple):
    omega: float
    gamma: float


@dataclass(frozen=True, eq=False)
class PoleSpectrum:
    """Ordered pole spectrum stored as two float64 arrays.

    ``gamma < 0`` marks a decaying mode. The arrays are made read-only so a
    spectrum can be shared freely.
    """

    omegas: np.ndarray
    gammas: np.ndarray
    units: UnitSystem = field(default=NATURAL_UNITS)

    def __post_init__(self):
        omegas = np.array(self.omegas, dtype=np.float64).reshape(-1)
        gammas = np.array(self.gammas, dtype=np.float64).reshape(-1)
        if gammas.size < 1:
            raise ValueError("a spectrum needs at least one pole")
        if omegas.shape != gammas.shape:
            raise ValueError(
                f"omegas and gammas differ in length ({omegas.size} != {gammas.size})"
            )
        if not (np.all(np.isfinite(omegas)) and np.all(np.isfinite(gammas))):
            raise ValueError("pole components must be finite")
        omegas.flags.writeable = False
        gammas.flags.writeable = False
        object.__setattr__(self, "omegas", omegas)
        object.__setattr__(self, "gammas", gammas)

    @classmethod
    def from_poles(cls, poles: Iterable[Pole | tuple[float, float]], units: UnitSystem = NATURAL_UNITS):
        pairs = [tuple(p) for p in poles]
        if not pairs:
            raise ValueError("a spectrum needs at least one pole")
        omegas, gammas = zip(*pairs)
        return cls(np.asarray(omegas), np.asarray(gammas), units)

    @classmethod
    def from_gammas(cls, gammas, units: UnitSystem = NATURAL_UNITS):
        """Spectrum with the given widths and zero frequencies."""
        gammas = np.asarray(gammas, dtype=np.float64)
        return cls(np.zeros_like(gammas), gammas, units)

    @property
    def poles(self) -> tuple[Pole, ...]:
        return tuple(Pole(float(w), float(g)) for w, g in zip(self.omegas, self.gammas))

    @property
    def eigenvalues(self) -> np.ndarray:
        """Complex eigenvalues ``hbar*omega + i*gamma``."""
        return self.units.hbar * self.omegas + 1j * self.gammas

    def __len__(self) -> int:
        return self.gammas.size

    def __iter__(self) -> Iterator[Pole]:
        return iter(self.poles)

    def __eq__(self, other):
        if not isinstance(other, PoleSpectrum):
            return NotImplemented
        return (
            self.units == other.units
            and np.array_equal(self.omegas, other.omegas)
            and np.array_equal(self.gammas, other.gammas)
        )

    __hash__ = None

    def __repr__(self):
        return f"PoleSpectrum(N={len(self)}, units={self.units})"


def gamow_spectrum(levels: int, units: UnitSystem = NATURAL_UNITS, omega0: float = 1.0) -> PoleSpectrum:
    """Decaying Gamow-model spectrum ``z_k = k(hbar*omega0 - i*gamma0)``, k = 0..levels.

    Returns ``levels + 1`` poles; the k=0 pole is the bare oscillator with
    zero width.
    """
    if int(levels) != levels or levels < 1:
        raise ValueError(f"Gamow model needs at least one bath level, got {levels!r}")
    k = np.arange(int(levels) + 1, dtype=np.float64)
    # -(k*gamma0) keeps every width an exact multiple of gamma0
    return PoleSpectrum(k * omega0, -(k * units.gamma0), units)


def time_reverse(s: PoleSpectrum) -> PoleSpectrum:
    """Apply ``t -> -t``, which flips the sign of every width."""
    return PoleSpectrum(s.omegas, -s.gammas, s.units)


def has_positive_width(s: PoleSpectrum) -> bool:
    """True when some pole grows in time, a precondition for volume spreading."""
    return bool(np.any(s.gammas > 0))


def _parse_header(line: str) -> dict[str, float]:
    values = {}
    for token in line.lstrip("#").split():
        if "=" not in token:
            continue
        key, _, raw = token.partition("=")
        if key in ("hbar", "gamma0"):
            values[key] = float(raw)
    return values


def read_spectrum(path: str | os.PathLike) -> PoleSpectrum:
    """Read ``omega gamma`` lines; an optional ``# hbar=<v> gamma0=<v>`` comment sets units."""
    unit_kw: dict[str, float] = {}
    poles = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                unit_kw.update(_parse_header(line))
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'omega gamma', got {line!r}")
            try:
                poles.append((float(parts[0]), float(parts[1])))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    if not poles:
        raise ValueError(f"{path}: no poles found")
    return PoleSpectrum.from_poles(poles, UnitSystem(**unit_kw))


def write_spectrum(s: PoleSpectrum, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(f"# hbar={s.units.hbar!r} gamma0={s.units.gamma0!r}\n")
        for w, g in zip(s.omegas.tolist(), s.gammas.tolist()):
            fh.write(f"{w!r} {g!r}\n")
