"""Lyapunov exponents and KS-entropy from the poles of a non-Hermitian Hamiltonian."""

from .ks_solver import (
    InvalidVolume,
    KsSolution,
    KsSolverError,
    NoPositiveRoot,
    NonConvergence,
    SolverConfig,
    asymptotic_T0,
    asymptotic_fixed_point,
    asymptotic_slope,
    solve_gamow,
    solve_ks_time,
)
from .pesin import (
    LifetimeTable,
    PesinReport,
    generalized_pesin_residual,
    ks_entropy_from_time,
    ks_time,
    lifetimes,
    lyapunov_sum_at,
    per_mode_exponent,
    pesin_report,
    self_consistent_alpha,
)
from .spectra import (
    NATURAL_UNITS,
    Pole,
    PoleSpectrum,
    UnitSystem,
    gamow_spectrum,
    has_positive_width,
    read_spectrum,
    time_reverse,
    write_spectrum,
)
from .sweep import (
    FitResult,
    SweepGrid,
    SweepResult,
    compare_table1,
    emit,
    fit_hks,
    fit_hks_through_origin,
    run_sweep,
)
from .volume import (
    EscapeFactor,
    VolumeElement,
    VolumeOverflowError,
    escape_factor,
    evolve_volume,
    log_volume,
)

__version__ = "0.1.0"
