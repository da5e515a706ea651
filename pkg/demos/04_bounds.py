# %% [markdown]
# Random instances: lower bound and a constant-weight code
# ========================================================

# %%
import numpy as np

from pliable import bound_report, constant_weight_code, encode, lower_bound, random_instance, verify
from pliable.bounds import GOLDEN, lower_bound_coefficient

ps = np.linspace(0.05, 0.95, 19)
for p in ps:
    print(f"p={p:.2f}  c(p)={lower_bound_coefficient(p):.3f}")
print("peak at", GOLDEN)

# %%
print(bound_report(256, 0.5, m=128))

# %%
code = constant_weight_code(128, 256, 0.5)
print(code.rows, "rows, weights", code.to_array().sum(axis=1)[:5])
hits = [verify(code, random_instance(128, 256, 0.5, s)).all_satisfied for s in range(20)]
print("constant-weight code satisfied", sum(hits), "of", len(hits))

# %%
lens = [encode(random_instance(128, 256, 0.5, s)).reduced_len for s in range(20)]
print("greedy lengths", lens, "floor", lower_bound(256, 0.5))
