# %% [markdown]
# # Synthetic profiles
# Impartial culture, Polya urn and Mallows mixtures, and how correlated they are.

# %%
import numpy as np

from monroe_cc import GeneratorConfig, generate, kendall_tau, read_profile, write_profile

profiles = {model: generate(GeneratorConfig(model=model, n=60, m=8, seed=1))
            for model in ("ic", "urn", "mallows")}

# %%
def mean_tau(p):
    r = p.rankings
    return np.mean([kendall_tau(r[i], r[j]) for i in range(len(r)) for j in range(i)])


for model, p in profiles.items():
    distinct = len(set(p.rankings))
    print(f"{model:8s} distinct ballots={distinct:3d}  mean Kendall tau={mean_tau(p):.2f}")
# IC sits near m(m-1)/4 = 14; the urn repeats ballots and pulls the average down.

# %% [markdown]
# Profiles round-trip through the PrefLib text format.

# %%
import io

buf = io.StringIO()
write_profile(profiles["urn"], buf, title="urn demo")
print(buf.getvalue()[:300])
buf.seek(0)
again = read_profile(buf)
assert sorted(again.rankings) == sorted(profiles["urn"].rankings)
