# %% [markdown]
# How far is the greedy code from optimal?
# ========================================
#
# For a dozen clients the exhaustive search is cheap: it walks every row space
# of F_2^m in echelon form, smallest dimension first.

# %%
import numpy as np

from pliable import SuiteSpec, field_size_instance, minrank_fit, optimal_code_length, run_benchmark

rows = run_benchmark(SuiteSpec("gap", seed=2024, trials=10, ns=(12,), ms=(4, 5, 6)))
for m in (4, 5, 6):
    gaps = [r.gap for r in rows if r.m == m]
    print(m, "mean gap", np.mean(gaps), "max", max(gaps))

# %%
# the field matters: every 1- and 2-subset of four messages
inst = field_size_instance(4)
for q in (2, 3):
    res = optimal_code_length(inst, q=q)
    print(f"q={q}: K*={res.length}, searched {res.examined} row spaces")
    print(res.witness.to_array())

# %%
# minimum rank over fitting matrices gives the same number; the full fixture
# has 2^30 fitting matrices, so take its first three 2-subset clients
from pliable import Instance

small = Instance(4, inst.requests[4:7])
print(minrank_fit(small, 2), optimal_code_length(small, 2).length)
