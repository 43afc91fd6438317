"""Measured tail decay of computed waves against the linear prediction."""
# %%
from rosenau_waves import EquationParams, Family, Grid, SinglePower, ab_coefficients, decay_fit, solve

grid = Grid()

# %% [markdown]
# Monotone tails: Rosenau-RLW, alpha = -1, cs = 1.1. The fit is a straight line
# through log|phi| on the right half, refined spectrally before fitting.

# %%
p = EquationParams(alpha=-1.0, family=Family.ROSENAU_RLW)
fit = decay_fit(solve(p, 1.1, SinglePower(1), grid).profile, ab_coefficients(p, 1.1))
print(f"monotone:    fitted {fit.fitted_rate:.6f}  predicted {fit.predicted_rate:.6f}  window {fit.window}")

# %% [markdown]
# Oscillatory tails: Rosenau at cs = 1.5. The envelope through the local maxima
# gives the rate, zero crossings give the wavenumber.

# %%
q = EquationParams(family=Family.ROSENAU)
fit = decay_fit(solve(q, 1.5, SinglePower(1), grid).profile, ab_coefficients(q, 1.5))
print(f"oscillatory: rate {fit.fitted_rate:.6f} vs {fit.predicted_rate:.6f}, "
      f"wavenumber {fit.oscillation_wavenumber:.6f} vs {fit.predicted_oscillation:.6f}")
