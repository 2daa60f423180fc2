"""Cyclic complex Jacobi eigensolver, compiled with numba.

Each rotation acts on the (p, q) plane with

    G = [[c, s], [-s * conj(phase), c * conj(phase)]],   phase = a_pq / |a_pq|

which first rotates the off-diagonal entry onto the positive real axis and
then applies the classical real symmetric Schur rotation (Golub & Van Loan,
Alg. 8.4.1). The matrix is updated as G^H A G and the eigenvector
accumulator as V G.
"""
import numba as nb
import numpy as np


@nb.njit(cache=True)
def _off_norm(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            z = a[i, j]
            acc += z.real * z.real + z.imag * z.imag
    return np.sqrt(2.0 * acc)


@nb.njit(cache=True)
def _frob(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(n):
            z = a[i, j]
            acc += z.real * z.real + z.imag * z.imag
    return np.sqrt(acc)


@nb.njit(cache=True, error_model="numpy")
def jacobi_eigh(h, tol, max_sweeps):
    """Diagonalise the Hermitian matrix ``h``.

    Returns ``(w, v, sweeps, residual, converged)`` where ``w`` is sorted
    non-increasing and the columns of ``v`` are the matching eigenvectors.
    Only the upper triangle's conjugate symmetry is assumed, not checked.
    """
    n = h.shape[0]
    a = h.copy()
    v = np.eye(n, dtype=np.complex128)
    target = tol * _frob(a)
    off = _off_norm(a)
    sweeps = 0
    while off > target and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                # negligible against both diagonal entries: drop it
                if sweeps > 3 and abs(app) + 100.0 * mag == abs(app) \
                        and abs(aqq) + 100.0 * mag == abs(aqq):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                phase = apq / mag
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                cph = np.conj(phase)
                gpp = c + 0j
                gpq = s + 0j
                gqp = -s * cph
                gqq = c * cph
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * gpp + akq * gqp
                    a[k, q] = akp * gpq + akq * gqq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = np.conj(gpp) * apk + np.conj(gqp) * aqk
                    a[q, k] = np.conj(gpq) * apk + np.conj(gqq) * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * gpp + vkq * gqp
                    v[k, q] = vkp * gpq + vkq * gqq
        sweeps += 1
        off = _off_norm(a)

    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    order = np.argsort(-w, kind="mergesort")
    return w[order], v[:, order], sweeps, off, off <= target


@nb.njit(cache=True, error_model="numpy")
def one_sided_polish(b, v, tol, max_sweeps):
    """Orthogonalise the columns of ``b`` by one-sided (Hestenes) Jacobi.

    The rotation for the pair (p, q) is the one above, computed from the
    Gram entries ``b_p^H b_p``, ``b_q^H b_q``, ``b_p^H b_q``; it is applied to
    the columns of ``b`` and of ``v``. Column pairs count as orthogonal once
    ``|b_p^H b_q| <= tol * |b_p| |b_q|``, so column norms come out accurate
    relative to each column, not to the largest one. Columns shorter than
    ``tol`` times the longest are rounding noise and are left alone.

    Returns ``(b, v, sweeps)``.
    """
    b = b.copy()
    v = v.copy()
    m, n = b.shape
    top = 0.0
    for j in range(n):
        acc = 0.0
        for k in range(m):
            acc += b[k, j].real * b[k, j].real + b[k, j].imag * b[k, j].imag
        top = max(top, acc)
    floor = tol * tol * top
    sweeps = 0
    rotated = True
    while rotated and sweeps < max_sweeps:
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0j
                for k in range(m):
                    x = b[k, p]
                    y = b[k, q]
                    alpha += x.real * x.real + x.imag * x.imag
                    beta += y.real * y.real + y.imag * y.imag
                    gamma += np.conj(x) * y
                if alpha <= floor or beta <= floor:
                    continue
                mag = abs(gamma)
                if mag == 0.0 or mag <= tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                phase = gamma / mag
                tau = (beta - alpha) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                cph = np.conj(phase)
                gpp = c + 0j
                gpq = s + 0j
                gqp = -s * cph
                gqq = c * cph
                for k in range(m):
                    x = b[k, p]
                    y = b[k, q]
                    b[k, p] = x * gpp + y * gqp
                    b[k, q] = x * gpq + y * gqq
                for k in range(v.shape[0]):
                    x = v[k, p]
                    y = v[k, q]
                    v[k, p] = x * gpp + y * gqp
                    v[k, q] = x * gpq + y * gqq
        sweeps += 1
    return b, v, sweeps
