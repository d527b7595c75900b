# %% [markdown]
# # Approximating Chamberlin-Courant
# Covering the top-x window of every voter (P) versus greedy marginal gain
# and beam search.

# %%
import numpy as np

from monroe_cc import (ElectionRule, GeneratorConfig, ScoringFunction, brute_force_winners,
                       cc_algo_c, cc_algo_gm, cc_algo_p, cc_algo_p_delta, generate)
from monroe_cc.bounds import cc_p_bound, cc_p_window

for K in (1, 3, 10, 100):
    print(f"K={K:3d} window x/m={cc_p_window(1000, K) / 1000:.3f} bound={cc_p_bound(K):.3f}")

# %%
rows = []
for seed in range(30):
    p = generate(GeneratorConfig(model="mallows", n=100, m=10, seed=seed))
    psf = ScoringFunction.borda_dec(10)
    opt = brute_force_winners(p, psf, ElectionRule.chamberlin_courant(3)).l1
    rows.append([f(p, psf, 3).l1 / opt for f in (cc_algo_p, cc_algo_gm, cc_algo_c)])
print("P, GM, C mean C/C_opt:", np.round(np.mean(rows, axis=0), 3))

# %% [markdown]
# Ignoring a small fraction of voters gives an egalitarian guarantee.

# %%
p = generate(GeneratorConfig(n=200, m=50, seed=2))
rep = cc_algo_p_delta(p, ScoringFunction.borda_dec(50), 10, delta=0.1)
print(rep.params, "worst voter:", rep.l_min)
