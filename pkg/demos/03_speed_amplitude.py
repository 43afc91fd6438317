"""Amplitude as a function of speed for the Rosenau equation."""
# %%
import numpy as np

from rosenau_waves import EquationParams, Family, Grid, SinglePower, speed_amplitude_sweep

# %% [markdown]
# With g(u) = u^2/2 the Rosenau profile equation is homogeneous. Rescaling
# phi(X) = (cs-1) psi(X (cs-1)^(1/4) / cs^(1/4)) suggests amplitude ~ cs - 1, and the
# sweep confirms the straight line. Below eps the coercivity gate skips the solve.

# %%
speeds = [0.9, 1.2, 1.5, 2.0, 2.5, 3.0]
rows = speed_amplitude_sweep(EquationParams(family=Family.ROSENAU), SinglePower(1), speeds, Grid(), jobs=4)
for r in rows:
    amp = "-" if r.amplitude is None else f"{r.amplitude:.6f}"
    print(f"cs={r.cs:4.1f}  amplitude={amp:>9s}  {r.status}")

ok = [r for r in rows if r.converged]
slope = np.polyfit([r.cs for r in ok], [r.amplitude for r in ok], 1)
print("linear fit amplitude = %.6f cs + %.6f" % tuple(slope))
