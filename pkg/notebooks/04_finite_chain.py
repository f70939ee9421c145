# %% [markdown]
# # Finite rings
#
# For N spins the ground state changes only at the critical fields B_k, so
# every measure is a staircase in B. Just below saturation the chain holds a
# single flipped spin spread over the ring, and every pair looks the same.

# %%
import numpy as np

from xxdiscord import FiniteContext, LINEAR, critical_fields, measurement_transition_field, sweep
from xxdiscord.analysis import w_state_discord

N = 40
Bk = critical_fields(N)
print("highest critical fields:", np.round(Bk[:5], 5))

# %%
ctx = FiniteContext(N, 0.5 * (Bk[0] + Bk[1]))
rows = sweep(ctx, "separation", range(1, N // 2 + 1), measures=("I2", "I1", "D", "C"))
print({(r.I2, r.I1) for r in rows})
print("4/N^2 =", 4 / N ** 2, " 2/N =", 2 / N)
w = w_state_discord(N)
print(f"D = {w.exact:.6f}, estimate {w.estimate:.6f}, relative gap {w.rel_gap:.3f}")

# %% [markdown]
# ## Transition fields snap to critical fields

# %%
for L in (1, 2, 5, 10):
    rec = measurement_transition_field(FiniteContext(N, 0.0), L, LINEAR)
    k = int(np.argmin(np.abs(Bk - rec.B_t)))
    print(f"L={L:2d}: B_t = {rec.B_t:.5f} = B_{k + 1}")
