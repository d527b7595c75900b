# %% [markdown]
# # Guarantees as functions of m and K

# %%
import numpy as np

from monroe_cc import bounds

x, ratio = bounds.sampling_crossover()
print(f"sampling and greedy meet at K/m = {x:.4f} with ratio {ratio:.4f}")

# %%
m = 1000
for frac in np.arange(0.1, 0.6, 0.1):
    K = int(frac * m)
    print(f"K/m={frac:.1f}  greedy={bounds.monroe_greedy_bound(m, K):.3f}  "
          f"sampling={bounds.sampling_expected_ratio(m, K):.3f}")

# %% [markdown]
# How much of each ballot is needed?

# %%
for P in (50, 200, 522, 1000):
    print(f"P={P:5d}  Monroe greedy guarantee {bounds.monroe_truncated_bound(6000, 460, P):.3f}")
for Q in (5, 10, 30, 60):
    print(f"Q={Q:5d}  CC covering guarantee {bounds.cc_truncated_bound(6000, 460, Q):.3f}")
