# %% [markdown]
# Which messages can a client recover?
# ====================================
#
# A client that lacks the messages in R sees x = A b. It recovers b_j exactly
# when column j of A is not in the span of the other requested columns.

# %%
from pliable import Instance, Matrix, decodable_set, verify

A = Matrix.from_rows([[1, 1, 0, 0],
                      [1, 0, 1, 1]])
print(A.to_array())

# %%
# client requesting {1, 3, 4}: a_3 + a_4 = 0 so neither of them is recoverable,
# but a_1 stands apart
print(decodable_set(A, {1, 3, 4}))

# %%
inst = Instance.from_sets(4, [{1, 2}, {1, 3}, {2, 3}, {1, 3, 4}, {2, 4}])
rep = verify(Matrix.from_rows([[1, 1, 0, 0], [0, 1, 0, 0]]), inst)
for i, D in enumerate(rep.decodable, start=1):
    print(i, sorted(inst.requests[i - 1]), "->", sorted(D))
print("all satisfied:", rep.all_satisfied)

# %% [markdown]
# With t = 2 a client has to recover two messages. One row is never enough.

# %%
two = Instance.from_sets(2, [{1, 2}], t=2)
print(verify(Matrix.identity(2), two).all_satisfied, verify(Matrix.from_rows([[1, 1]]), two).all_satisfied)
