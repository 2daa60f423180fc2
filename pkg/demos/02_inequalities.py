# %% [markdown]
# # Checking the trace inequalities
# Each checker returns a report whose `relative_slack` is non-negative when
# the claimed inequality holds, plus the intermediate quantities.

# %%
import numpy as np

from altlab import (
    check_alt,
    check_bourin,
    check_general,
    check_t_family,
    check_water,
    check_waterwine,
)

a = np.diag([2.0, 1.0])
b = np.array([[2.0, 1.0], [1.0, 1.0]])

for rep in (check_alt(a, b, 0.5, 2.0), check_water(a, b, 0.5, 2.0), check_waterwine(a, b, 0.5, 2.0)):
    print(f"{rep.ineq_id:<10} lhs={rep.lhs:.6f} rhs={rep.rhs:.6f} verdict={rep.verdict}")

# %% [markdown]
# The water-wine bound sits between the plain trace and the water bound;
# the two norm reformulations agree with it.

# %%
ww = check_waterwine(a, b, 0.5, 2.0)
print("wine <= Tr[(ABA)^rq] <= water-wine <= water:",
      ww.extras["wine"], ww.extras["trace_aba_rq"], ww.rhs, ww.extras["water"])
print("formulation gap:", ww.extras["formulation_gap"])

# %% [markdown]
# For r >= 1 the inequality reverses; the report is oriented so that the
# slack is still non-negative.

# %%
rev = check_alt(a, b, 2.0, 1.0)
print("r = 2:", rev.lhs, "<=", rev.rhs, rev.verdict)

# %% [markdown]
# Between the two bounds there is a one-parameter family, proven for
# t in [1 - r, 1]. Below that it is only explored.

# %%
rng = np.random.default_rng(3)
hits = 0
for _ in range(200):
    g1, g2 = (rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(2))
    x, y = g1 @ g1.conj().T, g2 @ g2.conj().T
    hits += check_t_family(x, y, 0.5, 1.0, 0.25).verdict == "violated"
print("t = 0.25 violations out of 200:", hits)

# %% [markdown]
# Reverse bound with the Ky Fan constant, componentwise on eigenvalues.

# %%
rep = check_bourin(np.diag([1.0, 2.0]), np.array([[1.5, 0.4], [0.4, 1.5]]), 2.0, 1.9, 1.1)
print("K =", rep.extras["K"], "worst component slack:", rep.relative_slack)

# %% [markdown]
# The symmetrised bound for general A, B. At p = 1 it holds. For p > 1 the
# nilpotent B below breaks it, while the power-mean bound that the block
# dilation actually delivers still holds.

# %%
nil = np.array([[0.0, 1.0], [0.0, 0.0]])
for p in (1.0, 2.0, float("inf")):
    rep = check_general(np.eye(2), nil, 1.0, p)
    print(f"p={p}: lhs={rep.lhs:.4f} rhs={rep.rhs:.4f} {rep.verdict}; "
          f"power mean {rep.extras['power_mean']['rhs']:.4f}")
