# %% [markdown]
# # Lifetimes, escape and limit cases

# %%
import numpy as np

from polelyap import (
    NoPositiveRoot, PoleSpectrum, UnitSystem, escape_factor, gamow_spectrum, ks_entropy_from_time,
    lifetimes, per_mode_exponent, solve_gamow, solve_ks_time, time_reverse,
)

# %% [markdown]
# Level n decays at rate n*alpha*gamma0/hbar, so its lifetime is t_R/(n alpha).

# %%
table = lifetimes(1.5, 5, UnitSystem(hbar=1.0, gamma0=2.0))
for n, lam, t in table.rows():
    print(f"n={n}  lambda={lam:.3f}  t_n={t:.4f}")

# %% [markdown]
# Contraction of the conditionally invariant measure over one unit of time.

# %%
s = gamow_spectrum(10)
for t in (0.1, 0.5, 1.0):
    print(f"t={t}: decaying gamma={escape_factor(s, t).gamma_escape:.4f}"
          f"  reversed gamma={escape_factor(time_reverse(s), t).gamma_escape:.4f}")

# %% [markdown]
# Without widths nothing spreads and every exponent vanishes. As t_R shrinks the
# dissipative exponent runs off to minus infinity.

# %%
try:
    solve_ks_time(PoleSpectrum.from_gammas(np.zeros(4)), 1e-3)
except NoPositiveRoot as exc:
    print("no widths:", exc)
print("per-mode exponents at h_KS=0:", per_mode_exponent(0.0, 10))

for t_R in (1.0, 0.1, 0.01, 0.001):
    units = UnitSystem(gamma0=1.0 / t_R)
    sol = solve_gamow(100, 1e-3, units=units)
    sigma0 = per_mode_exponent(ks_entropy_from_time(sol, 1e-3, units), 100, units)[1]
    print(f"t_R={t_R:<6}  sigma0={sigma0:.4g}")
