# %% [markdown]
# # Correlations of nearest neighbours in the ground state
#
# Field sweep of the infinite chain at T = 0 for L = 1, with every measure
# the library knows about. The measurement orientation of I2 flips where the
# Bell-like eigenstate stops dominating the pair; I1 instead passes through a
# short window where an oblique measurement wins.

# %%
import numpy as np

from xxdiscord import (DISCORD, LINEAR, VON_NEUMANN, ThermoContext,
                       eigenstate_crossing_field, measurement_transition_field,
                       sweep)

ctx = ThermoContext(0.0)
rows = sweep(ctx, "field", np.linspace(0.0, 1.2, 13), L=1)
print(f"{'B':>5} {'I2':>9} {'I1':>9} {'D':>9} {'C':>9}  phase_I2       dominant")
for r in rows:
    print(f"{r.B:5.2f} {r.I2:9.5f} {r.I1:9.5f} {r.D:9.5f} {r.C:9.5f}  {r.phase_I2:<14} {r.dominant}")

# %% [markdown]
# At B = 0 the state only depends on g1 = 1/pi, so the first row can be
# checked by hand: I2 = 2/pi^2 + 8/pi^4.

# %%
print(rows[0].I2, 2 / np.pi ** 2 + 8 / np.pi ** 4)

# %% [markdown]
# ## Where the orientation changes

# %%
B_c = eigenstate_crossing_field(ctx, 1)
rec2 = measurement_transition_field(ctx, 1, LINEAR)
rec1 = measurement_transition_field(ctx, 1, VON_NEUMANN)
recD = measurement_transition_field(ctx, 1, DISCORD)
s = ctx.replace(B=rec2.B_t).pair_state(1)
print(f"crossing field B_c   = {B_c:.6f}")
print(f"I2 transition B_t    = {rec2.B_t:.6f}   <s_z> there = {s.delta:.4f}")
print(f"I1 oblique window    = ({rec1.crossover[0]:.4f}, {rec1.crossover[1]:.4f})")
print(f"discord transition   = {recD.B_t}")
