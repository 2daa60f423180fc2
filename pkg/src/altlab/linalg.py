"""Dense complex linear algebra on small matrices.

Everything spectral goes through one cyclic complex Jacobi eigensolver
(:func:`hermitian_eig`); the SVD, matrix powers, polar and Jordan
decompositions and the Loewner-order test are all built on top of it.

General matrices are plain ``complex128`` numpy arrays. Hermitian and
positive semidefinite matrices are wrapped in :class:`HermitianMatrix` and
:class:`PsdMatrix`, which validate on construction and cache their
eigendecomposition, so repeated powers of the same matrix cost one solve.
"""
from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass

import numpy as np

from ._jacobi import jacobi_eigh, one_sided_polish
from .errors import ConvergenceError, DomainError, RangeError

EIG_TOL = 1e-14
EIG_MAX_SWEEPS = 100
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
# eigenvalues at or below this fraction of lambda_max are rounding noise
SNAP_CUTOFF = 1e-14
# singular values of products carry ~100 eps of noise along null directions,
# so they snap at a coarser fraction of sigma_max
SV_SNAP_CUTOFF = 1e-12
# ... and below this one a matrix counts as singular
ZERO_CUTOFF = 1e-12
LOEWNER_TOL = 1e-9
# column orthogonality reached by the one-sided Jacobi polish
POLISH_TOL = 1e-14
POLISH_MAX_SWEEPS = 30

_eig_settings = contextvars.ContextVar("eig_settings", default=(EIG_TOL, EIG_MAX_SWEEPS))


@contextlib.contextmanager
def eig_precision(tol, max_sweeps):
    """Temporarily change the Jacobi stopping rule for this context."""
    token = _eig_settings.set((float(tol), int(max_sweeps)))
    try:
        yield
    finally:
        _eig_settings.reset(token)


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def __iter__(self):
        yield self.eigenvalues
        yield self.eigenvectors


@dataclass(frozen=True)
class SingularDecomposition:
    """``X = left @ diag(singular_values) @ right^H`` with unitary factors."""

    singular_values: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def __iter__(self):
        yield self.left
        yield self.singular_values
        yield self.right


def as_matrix(x) -> np.ndarray:
    """Return ``x`` as a finite 2-D complex128 array (copied, read-only)."""
    if isinstance(x, HermitianMatrix):
        return x.data
    m = np.array(x, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DomainError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    # a finite sum implies finite entries; only scan when it is not
    if not np.isfinite(m.sum()) and not np.all(np.isfinite(m)):
        raise DomainError("matrix has NaN or infinite entries")
    m.setflags(write=False)
    return m


def _frob(m):
    return float(np.linalg.norm(m))


def dagger(m):
    return m.conj().T


class HermitianMatrix:
    """A square matrix equal to its conjugate transpose.

    The input must be Hermitian to ``1e-12`` relative Frobenius error; it is
    then symmetrised to ``(H + H^H) / 2``. Pass ``check=False`` for products
    that are Hermitian by construction (rounding is then symmetrised away
    without complaint).
    """

    __slots__ = ("data", "_eig")

    def __init__(self, data, *, check=True):
        if not check and isinstance(data, np.ndarray) and data.dtype == np.complex128:
            m = data
        else:
            m = as_matrix(data)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError(f"Hermitian matrix must be square, got {m.shape}")
        if check:
            asym = _frob(m - dagger(m))
            if asym > HERMITIAN_TOL * max(1.0, _frob(m)):
                raise DomainError(f"matrix is not Hermitian (||H - H*||_F = {asym:.3e})")
        h = (m + dagger(m)) / 2
        h.setflags(write=False)
        self.data = h
        self._eig = None

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def eig(self) -> EigenDecomposition:
        if self._eig is None:
            self._eig = hermitian_eig(self)
        return self._eig

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eig.eigenvalues

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n})"


class PsdMatrix(HermitianMatrix):
    """A positive semidefinite matrix with a cached, clamped spectrum.

    Eigenvalues down to ``-1e-10 * max(1, lambda_max)`` are accepted as
    rounding noise. Those, and positive ones below ``1e-14 * lambda_max``,
    are set to exactly zero and the matrix is rebuilt from the clamped
    spectrum, so rank-deficient inputs stay rank-deficient under powers.
    """

    __slots__ = ()

    def __init__(self, data, *, check=True):
        super().__init__(data, check=check)
        w, v = hermitian_eig(self.data)
        top = max(float(w[0]), 0.0)
        if w[-1] < -PSD_TOL * max(1.0, top):
            raise DomainError(f"matrix is not positive semidefinite (lambda_min = {w[-1]:.3e})")
        small = w <= SNAP_CUTOFF * top
        if np.any(small & (w != 0.0)):
            w = np.where(small, 0.0, w)
            self.data = _rebuild(w, v)
        self._eig = EigenDecomposition(w, v)

    @classmethod
    def from_eig(cls, w, v):
        """Build from a non-increasing non-negative spectrum and unitary ``v``.

        Trusted path: no validation and no further eigensolve.
        """
        obj = cls.__new__(cls)
        w = np.asarray(w, dtype=float)
        w.setflags(write=False)
        obj.data = _rebuild(w, v)
        obj._eig = EigenDecomposition(w, v)
        return obj

    @property
    def is_definite(self) -> bool:
        w = self.eigenvalues
        return bool(w[-1] > ZERO_CUTOFF * w[0])


def _rebuild(w, v):
    m = (v * w) @ dagger(v)
    m = (m + dagger(m)) / 2
    m.setflags(write=False)
    return m


def hermitian_eig(h, *, tol=None, max_sweeps=None) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    Sweeps until the off-diagonal Frobenius mass is at most
    ``tol * ||H||_F`` (default ``1e-14``) and raises
    :class:`ConvergenceError` after ``max_sweeps`` (default 100).
    Eigenvalues come back non-increasing. Defaults can be overridden for a
    whole block of code with :func:`eig_precision`.
    """
    d_tol, d_sweeps = _eig_settings.get()
    tol = d_tol if tol is None else tol
    max_sweeps = d_sweeps if max_sweeps is None else max_sweeps
    m = h.data if isinstance(h, HermitianMatrix) else as_matrix(h)
    if m.shape[0] != m.shape[1]:
        raise DomainError(f"eigendecomposition needs a square matrix, got {m.shape}")
    w, v, sweeps, residual, ok = jacobi_eigh(np.ascontiguousarray(m), tol, max_sweeps)
    if not ok:
        raise ConvergenceError("Jacobi eigensolver did not converge", residual, sweeps)
    w.setflags(write=False)
    v.setflags(write=False)
    return EigenDecomposition(w, v, int(sweeps))


def _complete_orthonormal(cols, n, candidates):
    """Extend the orthonormal columns ``cols`` to a basis of C^n.

    ``candidates`` are tried in order before the standard basis, which keeps
    the completion deterministic.
    """
    basis = list(cols)
    pool = list(candidates) + [np.eye(n, dtype=np.complex128)[:, j] for j in range(n)]
    for c in pool:
        if len(basis) == n:
            break
        x = np.array(c, dtype=np.complex128)
        for _ in range(2):
            for u in basis:
                x = x - u * np.vdot(u, x)
        nx = np.linalg.norm(x)
        if nx > 0.5:
            basis.append(x / nx)
    return basis


def _right_singular(m):
    """Right singular vectors and values of ``m``, sorted non-increasing."""
    _, v = hermitian_eig(dagger(m) @ m)
    b, v, _ = one_sided_polish(np.ascontiguousarray(m @ v), v, POLISH_TOL, POLISH_MAX_SWEEPS)
    norms = np.sqrt(np.sum(b.real ** 2 + b.imag ** 2, axis=0))
    order = np.argsort(-norms, kind="stable")
    return norms[order], v[:, order], b[:, order]


def svd(x) -> SingularDecomposition:
    """Singular value decomposition through the eigendecomposition of ``X^H X``.

    The right factor is the eigenvector matrix of ``X^H X``; singular values
    are the column norms of ``X V`` (the square roots of its eigenvalues,
    without the loss of precision from taking square roots of tiny ones), and
    the left factor is Gram-Schmidt on those columns. Null directions of a
    rank-deficient ``X`` are completed first from the matching right
    singular vectors, then from the standard basis.
    """
    m = as_matrix(x)
    rows, cols = m.shape
    k = min(rows, cols)
    s, v, b = _right_singular(m)
    s = s[:k]
    cutoff = ZERO_CUTOFF * (s[0] if k else 0.0)

    left = []
    for i in range(k):
        if s[i] <= cutoff:
            break
        y = b[:, i].copy()
        for _ in range(2):
            for u in left:
                y = y - u * np.vdot(u, y)
        ny = np.linalg.norm(y)
        if ny <= cutoff:
            break
        left.append(y / ny)
    s = s.copy()
    s[len(left):] = 0.0
    candidates = [v[:, i] for i in range(len(left), k)] if rows == cols else []
    u = np.column_stack(_complete_orthonormal(left, rows, candidates))
    s.setflags(write=False)
    return SingularDecomposition(s, u, v)


def singular_values(x) -> np.ndarray:
    """Singular values, non-increasing. Hermitian input uses |eigenvalues|."""
    if isinstance(x, HermitianMatrix):
        return np.sort(np.abs(x.eigenvalues))[::-1]
    m = as_matrix(x)
    return _right_singular(m)[0][: min(m.shape)]


def psd_power(p, alpha) -> PsdMatrix:
    """Return ``P^alpha`` for positive semidefinite ``P``.

    ``alpha = 0`` gives the identity (``0^0 = 1``). Negative ``alpha`` needs
    ``P`` positive definite.
    """
    if not isinstance(p, PsdMatrix):
        p = PsdMatrix(p)
    alpha = float(alpha)
    w, v = p.eig
    n = p.n
    if alpha == 0.0:
        return PsdMatrix.from_eig(np.ones(n), v)
    if alpha == 1.0:
        return p
    if alpha < 0.0:
        if not p.is_definite:
            raise DomainError(f"negative power {alpha} of a singular matrix")
        wa = (w ** alpha)[::-1]
        v = v[:, ::-1]
    else:
        wa = np.where(w > 0.0, w, 0.0) ** alpha
    if not np.all(np.isfinite(wa)):
        raise RangeError(f"eigenvalue power {alpha} overflows")
    return PsdMatrix.from_eig(wa, v)


def congruence(x, p) -> PsdMatrix:
    """``X P X^H`` for PSD ``P``; PSD by construction.

    Eigenvectors of the product are a starting basis ``U``; a one-sided
    Jacobi pass then orthogonalises the columns of ``Y^H U`` with
    ``Y = X P^{1/2}`` (rotating ``U`` along), and eigenvalues are the squared
    column norms. Clusters of tiny eigenvalues, where the product's own
    eigenvectors are arbitrarily mixed, are thereby resolved to
    ``eps * sigma_max(Y)`` in the singular values instead of
    ``eps * ||X P X^H||`` in the eigenvalues. That matters once fractional
    powers are taken.
    """
    xm = as_matrix(x)
    if not isinstance(p, PsdMatrix):
        p = PsdMatrix(p)
    y = xm @ psd_power(p, 0.5).data
    product = HermitianMatrix(xm @ p.data @ dagger(xm), check=False)
    _, u = product.eig
    z, u, _ = one_sided_polish(np.ascontiguousarray(dagger(y) @ u), np.array(u), POLISH_TOL,
                               POLISH_MAX_SWEEPS)
    sv = np.sqrt(np.sum(z.real ** 2 + z.imag ** 2, axis=0))
    order = np.argsort(-sv, kind="stable")
    sv = sv[order]
    sv = np.where(sv > SV_SNAP_CUTOFF * sv[0], sv, 0.0)
    return PsdMatrix.from_eig(sv ** 2, u[:, order])


def modulus(x) -> PsdMatrix:
    """``|X| = (X^H X)^{1/2}``, assembled from the SVD right factor."""
    if isinstance(x, PsdMatrix):
        return x
    if isinstance(x, HermitianMatrix):
        return hermitian_modulus(x)
    m = as_matrix(x)
    s, v, _ = _right_singular(m)
    top = s[0]
    return PsdMatrix.from_eig(np.where(s > SV_SNAP_CUTOFF * top, s, 0.0), v)


def hermitian_modulus(h) -> PsdMatrix:
    """``|H|`` for Hermitian ``H``, equal to ``plus + minus`` of its Jordan split."""
    if not isinstance(h, HermitianMatrix):
        h = HermitianMatrix(h)
    w, v = h.eig
    a = np.abs(w)
    order = np.argsort(-a, kind="stable")
    return PsdMatrix.from_eig(a[order], v[:, order])


def polar(x):
    """Polar decomposition ``X = U |X|`` of a square matrix.

    For singular ``X`` the unitary factor is completed deterministically from
    the SVD bases, so ``polar`` is a pure function.
    """
    m = as_matrix(x)
    if m.shape[0] != m.shape[1]:
        raise DomainError(f"polar decomposition needs a square matrix, got {m.shape}")
    dec = svd(m)
    u = dec.left @ dagger(dec.right)
    return u, PsdMatrix.from_eig(dec.singular_values, dec.right)


def jordan(h):
    """Split Hermitian ``H`` into ``(plus, minus)`` with ``H = plus - minus``."""
    if not isinstance(h, HermitianMatrix):
        h = HermitianMatrix(h)
    w, v = h.eig
    plus = PsdMatrix.from_eig(np.where(w > 0.0, w, 0.0), v)
    neg = np.where(w < 0.0, -w, 0.0)[::-1]
    minus = PsdMatrix.from_eig(neg, v[:, ::-1])
    return plus, minus


def loewner_margin(x, y) -> float:
    """Smallest eigenvalue of ``Y - X``; non-negative iff ``X <= Y``."""
    xm, ym = as_matrix(x), as_matrix(y)
    if xm.shape != ym.shape:
        raise DomainError(f"dimension mismatch: {xm.shape} vs {ym.shape}")
    d = HermitianMatrix(ym - xm, check=False)
    return float(d.eigenvalues[-1])


def loewner_leq(x, y, tol=LOEWNER_TOL) -> bool:
    """True iff ``X <= Y`` in the Loewner order, up to ``tol`` relative."""
    xm, ym = as_matrix(x), as_matrix(y)
    if xm.shape != ym.shape:
        raise DomainError(f"dimension mismatch: {xm.shape} vs {ym.shape}")
    w = HermitianMatrix(ym - xm, check=False).eigenvalues
    scale = max(abs(w[0]), abs(w[-1]))
    return bool(w[-1] >= -tol * max(1.0, scale))


def contraction_factor(x, y) -> np.ndarray:
    """Hermitian contraction ``K`` with ``X - Y = (X+Y)^{1/2} K (X+Y)^{1/2}``.

    Uses the pseudo-inverse square root of ``X + Y``; eigenvalues at or
    below ``1e-12 * lambda_max`` count as zero.
    """
    x = x if isinstance(x, PsdMatrix) else PsdMatrix(x)
    y = y if isinstance(y, PsdMatrix) else PsdMatrix(y)
    if x.n != y.n:
        raise DomainError(f"dimension mismatch: {x.n} vs {y.n}")
    s = HermitianMatrix(x.data + y.data, check=False)
    w, v = s.eig
    top = max(float(w[0]), 0.0)
    inv = np.zeros_like(w)
    keep = w > ZERO_CUTOFF * top
    inv[keep] = 1.0 / np.sqrt(w[keep])
    root_pinv = (v * inv) @ dagger(v)
    k = root_pinv @ (x.data - y.data) @ root_pinv
    k = (k + dagger(k)) / 2
    k.setflags(write=False)
    return k


def block_dilation(x) -> HermitianMatrix:
    """The Hermitian dilation ``[[0, X], [X^H, 0]]`` of a square ``X``.

    Its modulus is ``diag(|X^H|, |X|)``.
    """
    m = as_matrix(x)
    n, c = m.shape
    if n != c:
        raise DomainError(f"block dilation needs a square matrix, got {m.shape}")
    z = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    z[:n, n:] = m
    z[n:, :n] = dagger(m)
    return HermitianMatrix(z, check=False)


def direct_sum(*blocks) -> np.ndarray:
    mats = [as_matrix(b) for b in blocks]
    rows = sum(b.shape[0] for b in mats)
    cols = sum(b.shape[1] for b in mats)
    out = np.zeros((rows, cols), dtype=np.complex128)
    i = j = 0
    for b in mats:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out
