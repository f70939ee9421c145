# %% [markdown]
# # Transition fields against separation and temperature
#
# At T = 0 the I2 transition field shrinks like 1/sqrt(L); the prefactor is
# pi times the limit of alpha_L sqrt(L). Heating pushes the fields down, and
# for L >= 2 they eventually fall off as a power of J/T.

# %%
import numpy as np

from xxdiscord import LINEAR, ThermoContext, measurement_transition_field, phase_diagram
from xxdiscord.thermo import ThermoParams, eta

ground = ThermoContext(0.0)
print(f"{'L':>3} {'B_t':>9} {'B_t sqrt(L)':>12} {'pi eta_L':>9}")
for L in (1, 2, 3, 5, 10, 20, 40):
    bt = measurement_transition_field(ground, L, LINEAR).B_t
    print(f"{L:3d} {bt:9.5f} {bt * np.sqrt(L):12.5f} {np.pi * eta(L, ThermoParams(0.0)):9.5f}")

# %% [markdown]
# ## Temperature dependence

# %%
Ts = np.geomspace(0.01, 5.0, 8)
recs = phase_diagram(ground, [1, 2, 3, 5], Ts, LINEAR)
for L in (1, 2, 3, 5):
    line = " ".join(f"{r.B_t:8.4g}" for r in recs if r.L == L)
    print(f"L={L}: {line}")

# %% [markdown]
# High temperature: B_t(L=1) tends to J/2 and B_t(L) ~ (J/2)(J/4T)^(L-1).

# %%
hot = ThermoContext(0.0, 1.0, 50.0)
for L in (1, 2):
    print(L, measurement_transition_field(hot, L, LINEAR).B_t, 0.5 * (1 / 200) ** (L - 1))
