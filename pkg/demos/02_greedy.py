# %% [markdown]
# Greedy encoding
# ===============
#
# Messages are peeled by effective degree, grouped dyadically, and every group
# costs two binary rows. Each message in a group gets (1,0), (0,1) or (1,1).

# %%
import math

from pliable import complete, encode, encode_t, random_instance, sort_messages, verify

inst = random_instance(m=24, n=64, p=0.3, seed=1)
s = sort_messages(inst)
print("order:", s.order[:8], "...")
print("effective degrees:", [s.effective_degree[j] for j in s.order[:8]])

# %%
res = encode(inst)
print("raw rows:", res.raw_len, "after row reduction:", res.reduced_len)
print("verified:", verify(res.reduced, inst).all_satisfied)
for rnd in res.rounds:
    print(f"round {rnd.index}: {len(rnd.active)} active, groups",
          [(g.s, len(g.messages), len(g.clients), len(g.sat)) for g in rnd.groups])

# %%
# the length guarantee, against what we actually use
for n in (64, 128, 256, 512):
    m = math.ceil(n ** 0.75)
    lens = [encode(random_instance(m, n, 0.3, s)).raw_len for s in range(10)]
    print(n, max(lens), round(2 / math.log2(1.5) * math.log2(n) ** 2, 1))

# %%
# complete instances need every one of the m messages' worth of rows
print([encode(complete(m)).reduced_len for m in range(2, 9)])

# %% [markdown]
# Asking for t messages per client: weights halve on every decode.

# %%
t_inst = random_instance(m=38, n=128, p=0.3, seed=3, t=5)
t_res = encode_t(t_inst)
print("rows:", t_res.raw_len, "rounds:", len(t_res.rounds))
for rnd in t_res.rounds[:5]:
    print(f"  weight {rnd.weight_before:7.3f} -> {rnd.weight_after:7.3f}")
print("everyone got 5:", all(len(d) == 5 for d in t_res.decoded))
