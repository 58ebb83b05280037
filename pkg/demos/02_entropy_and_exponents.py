# %% [markdown]
# # KS-entropy, Lyapunov exponents and the coupling constant
#
# h_KS grows linearly with the number of bath oscillators. Its slope is the
# per-oscillator Lyapunov exponent of the reversed system; the dissipative
# original carries the same exponent with a minus sign.

# %%
from polelyap import SweepGrid, gamow_spectrum, pesin_report, run_sweep, solve_ks_time, time_reverse
from polelyap.ks_solver import asymptotic_slope
from polelyap.sweep import dense_grid_n

result = run_sweep(SweepGrid(n_values=dense_grid_n()))
for dv, fits in result.fits.items():
    f = fits["free"]
    print(f"dV={dv:.0e}: h_KS = ({f.slope:.4f} +- {f.slope_stderr:.4f}) N + {f.intercept:.3f}"
          f"   through origin: {fits['origin'].slope:.4f}   large-N limit: {asymptotic_slope(dv):.4f}")
mean, spread = result.aggregate_alpha
print(f"alpha = {mean:.2f} +- {spread:.2f}")

# %% [markdown]
# A single solved system, with the pole-side Lyapunov sum next to the entropy.

# %%
s = time_reverse(gamow_spectrum(1000))
sol = solve_ks_time(s, 1e-9)
report = pesin_report(s, sol, 1e-9)
for key, value in report.as_dict().items():
    print(f"{key:>15s} = {value}")
