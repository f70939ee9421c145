# %% [markdown]
# # Thermal behaviour
#
# Above the saturation field the ground state is a product state, yet a
# small temperature creates pair correlations before heating washes them
# out again. At high T every measure decays as T^(-2L).

# %%
import numpy as np

from xxdiscord import DISCORD, LINEAR, VON_NEUMANN, ThermoContext, minimize_measure, sweep
from xxdiscord.thermo import ThermoParams, pair_state_thermo

Ts = [0.0, 0.02, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6]
for L in (1, 3):
    rows = sweep(ThermoContext(1.2), "temperature", Ts, L=L, measures=("I2",))
    print(f"L={L}, B=1.2J:", " ".join(f"{r.I2:.3e}" for r in rows))

# %% [markdown]
# ## Power-law decay
#
# Values near 1e-16 are round-off for differences of order-one entropies, so
# longer separations are fitted over a cooler window.

# %%
windows = {1: (30.0, 100.0), 2: (30.0, 100.0), 3: (5.0, 15.0)}
for L, (lo, hi) in windows.items():
    Ts = np.geomspace(lo, hi, 6)
    for name, m in (("I2", LINEAR), ("I1", VON_NEUMANN), ("D", DISCORD)):
        v = [minimize_measure(pair_state_thermo(L, ThermoParams(0.0, 1.0, t)), m).value for t in Ts]
        slope = np.polyfit(np.log(Ts), np.log(v), 1)[0]
        print(f"L={L} {name}: slope {slope:+.3f}")
