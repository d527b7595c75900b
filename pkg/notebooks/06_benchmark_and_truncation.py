# %% [markdown]
# # Benchmark harness and truncated ballots
# The library function behind `monroe-cc benchmark`: seeded repetitions,
# per-instance rows and summary rows.

# %%
from monroe_cc.cli import run_benchmark

rows = run_benchmark(model="ic", n=100, m=10, K=3, reps=30, seed=0, with_opt=True,
                     algorithms=[("monroe", "a"), ("monroe", "b"), ("cc", "p")])
for r in rows:
    if r["row"] == "summary":
        print(f"{r['rule']}:{r['algorithm']}  C/C_opt {r['mean_ratio_to_opt']:.3f} "
              f"± {r['std_ratio_to_opt']:.3f}   C/C_ideal {r['mean_ratio_to_ideal']:.3f}")

# %% [markdown]
# Algorithms see only the top P positions; quality is measured on full ballots.

# %%
rows = run_benchmark(model="urn", n=200, m=20, K=4, reps=5, seed=1, sweep=True,
                     algorithms=[("monroe", "c"), ("cc", "c")])
for rule in ("monroe", "cc"):
    curve = [r["mean_ratio_to_ideal"] for r in rows if r["row"] == "summary" and r["rule"] == rule]
    print(rule, " ".join(f"{v:.2f}" for v in curve))
