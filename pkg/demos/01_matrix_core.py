# %% [markdown]
# # Matrix core
# Eigenvalues, powers, moduli and the congruence products every checker is
# built from. Everything below runs on the package's own Jacobi solver.

# %%
import numpy as np

from altlab import PsdMatrix, congruence, hermitian_eig, modulus, polar, psd_power, svd

rng = np.random.default_rng(0)
g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
h = (g + g.conj().T) / 2

w, v = hermitian_eig(h)
print("eigenvalues (descending):", np.round(w, 6))
print("residual ||Hv - vw||:", np.linalg.norm(h @ v - v * w))

# %% [markdown]
# Fractional powers of a PSD matrix compose the way scalars do.

# %%
p = PsdMatrix(g @ g.conj().T / 4)
root = psd_power(p, 0.5)
print("||P^1/2 P^1/2 - P|| =", np.linalg.norm(root.data @ root.data - p.data))
print("||(P^0.3)^(1/0.3) - P|| =", np.linalg.norm(psd_power(psd_power(p, 0.3), 1 / 0.3).data - p.data))

# %% [markdown]
# Singular values, the modulus |X| = (X*X)^(1/2) and the polar factorisation.

# %%
left, s, right = svd(g)
print("singular values:", np.round(s, 6))
u, m = polar(g)
print("||U|X| - X|| =", np.linalg.norm(u @ m.data - g))
print("|X| equals modulus(X):", np.allclose(m.data, modulus(g).data))

# %% [markdown]
# Congruences X P X* keep their small eigenvalues accurate to machine
# precision relative to the largest one, which matters once they are raised
# to fractional powers.

# %%
x = np.diag([1.0, 1e-6, 1e-9])
print("eigenvalues of X I X*:", congruence(x, np.eye(3)).eig.eigenvalues)
