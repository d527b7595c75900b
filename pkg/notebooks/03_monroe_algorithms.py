# %% [markdown]
# # Approximating Monroe
# Greedy (A), greedy plus reassignment (B), beam search (C), marginal greedy
# (GM) and random sampling (R) against the exact optimum on small IC elections.

# %%
import numpy as np

from monroe_cc import (ElectionRule, GeneratorConfig, ScoringFunction, algo_a, algo_b, algo_c,
                       algo_gm, algo_r, brute_force_winners, generate)

algorithms = {
    "A": lambda p, s, K, seed: algo_a(p, s, K),
    "B": lambda p, s, K, seed: algo_b(p, s, K),
    "C": lambda p, s, K, seed: algo_c(p, s, K, d=15),
    "GM": lambda p, s, K, seed: algo_gm(p, s, K),
    "R": lambda p, s, K, seed: algo_r(p, s, K, samples=100, seed=seed),
}
ratios = {name: [] for name in algorithms}
K = 3
for seed in range(40):
    p = generate(GeneratorConfig(n=100, m=10, seed=seed))
    psf = ScoringFunction.borda_dec(10)
    opt = brute_force_winners(p, psf, ElectionRule.monroe(K)).l1
    for name, run in algorithms.items():
        ratios[name].append(run(p, psf, K, seed).l1 / opt)

# %%
for name, vals in ratios.items():
    print(f"{name:3s} mean C/C_opt = {np.mean(vals):.3f}  std = {np.std(vals):.3f}")

# %% [markdown]
# The worst-case guarantee of A only becomes meaningful for large m and K.

# %%
from monroe_cc.bounds import monroe_greedy_bound

for m, K in [(10, 3), (100, 10), (6000, 460)]:
    print(m, K, round(monroe_greedy_bound(m, K), 4))
