# %% [markdown]
# # Tightness probe
# Hill climbing on the ratio lhs/rhs. For a proven inequality the ratio
# approaches 1 from below; outside the proven range it can cross 1.

# %%
from altlab import IneqParams, Witness, probe_tightness
from altlab.probe import replay

w = probe_tightness("waterwine", IneqParams(r=0.5, q=1.0), 3, 4000, seed=0)
print(f"best ratio {w.ratio:.15f} from restart {w.restart}")
for it, ratio in w.trajectory[:: max(1, len(w.trajectory) // 8)]:
    print(f"  iteration {it:>5}: 1 - ratio = {1 - ratio:.2e}")

# %% [markdown]
# What does a near-equality witness look like? Commuting pairs are one
# extremal family, but the climb need not land there. With this seed both
# inputs collapse to (numerically) rank one and do not commute. The ratio is
# homogeneous in each input, so the overall scale of B drifts freely.

# %%
import numpy as np

a, b = (m.data for m in w.inputs)
print("spectrum of A:", np.round(np.linalg.eigvalsh(a), 4))
print("spectrum of B:", np.round(np.linalg.eigvalsh(b), 4))
print("||AB - BA|| / (||A|| ||B||):",
      np.linalg.norm(a @ b - b @ a) / (np.linalg.norm(a) * np.linalg.norm(b)))

# %% [markdown]
# Witnesses save and replay exactly.

# %%
import tempfile, os

path = os.path.join(tempfile.mkdtemp(), "witness.json")
w.save(path)
print("replayed ratio:", replay(Witness.load(path)).ratio)

# %% [markdown]
# Exploratory regime: t below 1 - r.

# %%
x = probe_tightness("t_family", IneqParams(r=0.5, q=1.0, t=0.0), 2, 1000, seed=0)
print(f"t = 0: ratio {x.ratio:.4f} ({x.regime})")
