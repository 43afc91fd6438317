"""Where does a given speed sit in the (b, a) plane, and which waves to expect?"""
# %%
import numpy as np

from rosenau_waves import EquationParams, Family, ab_coefficients, characteristic_roots, family_regime
from rosenau_waves.errors import DegenerateSpeed

# %% [markdown]
# Rosenau-RLW with alpha = -1 and eps = beta = 1. Just above eps the linear
# part has four real exponents, so tails are monotone.

# %%
rlw = EquationParams(alpha=-1.0, family=Family.ROSENAU_RLW)
for cs in (1.05, 1.1, 1.2, 1.4):
    rep = family_regime(rlw, cs)
    print(f"cs={cs:5.2f}  {rep.label.value:8s}  waves={[w.value for w in rep.predicted_waves]}  "
          f"coercive={rep.coercive}")

# %% [markdown]
# The tail exponents are the roots of lambda^4 - b lambda^2 + a. The one with the
# smallest positive real part sets the decay rate of the wave.

# %%
roots = characteristic_roots(ab_coefficients(rlw, 1.1)).roots
print("roots:", np.round(roots, 6))
print("slowest decay:", min(r.real for r in roots if r.real > 0))

# %% [markdown]
# Flip the sign of alpha and the same speed lands among complex exponents:
# the tails oscillate as they decay.

# %%
rep = family_regime(EquationParams(alpha=1.0, family=Family.ROSENAU_RLW), 1.5)
print(rep.label.value, [w.value for w in rep.predicted_waves])

# %% [markdown]
# A dense scan over speeds for a Rosenau-Kawahara equation shows the labels change
# at the family thresholds. At cs = gamma/beta = 2 the fourth-order term vanishes
# and the profile equation degenerates, which the classifier refuses.

# %%
kaw = EquationParams(gamma=2.0, eta=-0.5, family=Family.ROSENAU_KAWAHARA)
last = None
for cs in np.round(np.arange(0.5, 3.0, 0.01), 2):
    try:
        rep = family_regime(kaw, float(cs))
        lab = (rep.label.value, tuple(w.value for w in rep.predicted_waves))
    except DegenerateSpeed:
        lab = ("degenerate", ())
    if lab != last:
        print(f"from cs={cs:.2f}: {lab[0]} {list(lab[1])}")
        last = lab
