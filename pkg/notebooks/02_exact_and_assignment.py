# %% [markdown]
# # Optimal assignments and exact winners
# For a fixed committee the best assignment is a transportation problem; the
# optimal committee is found by enumerating all K-subsets.

# %%
from monroe_cc import (ElectionRule, GeneratorConfig, PreferenceProfile, ScoringFunction,
                       brute_force_winners, capacitated_assignment, cc_assignment, evaluate,
                       generate)

# three voters preferring a to b, one preferring b; two seats of capacity two
p = PreferenceProfile(2, [(0, 1), (0, 1), (0, 1), (1, 0)])
psf = ScoringFunction.borda_dec(2)
monroe = capacitated_assignment(p, psf, [0, 1], 2, require_balanced=True)
cc = cc_assignment(p, psf, [0, 1])
print("Monroe:", monroe.assigned, evaluate(p, psf, monroe))
print("CC:    ", cc.assigned, evaluate(p, psf, cc))

# %%
p = generate(GeneratorConfig(n=30, m=7, seed=4))
psf = ScoringFunction.borda_dec(7)
for K in (1, 2, 3):
    mon = brute_force_winners(p, psf, ElectionRule.monroe(K))
    ccw = brute_force_winners(p, psf, ElectionRule.chamberlin_courant(K))
    print(f"K={K}: Monroe {mon.committee} l1={mon.l1}   CC {ccw.committee} l1={ccw.l1}")
# CC drops the load constraint, so it is never worse.

# %% [markdown]
# The same problem as an integer program, for an external solver.

# %%
import sys

from monroe_cc import emit_ilp

emit_ilp(PreferenceProfile(2, [(0, 1), (1, 0)]), ScoringFunction.borda_dec(2),
         ElectionRule.monroe(1), sys.stdout)
