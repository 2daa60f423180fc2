"""Checkers for the Araki-Lieb-Thirring inequality and its relatives.

Every checker evaluates both sides of one inequality and returns an
:class:`IneqReport` oriented so that ``slack = rhs - lhs >= 0`` means the
claimed inequality holds, whatever the parameter regime. Reversed regimes
(r >= 1 for ALT, q <= 0 for the water bound, ...) swap the sides rather than
the sign convention, so campaign code can treat all checkers alike.

The checkers share some notation:

* wine  = Tr[(A^r B^r A^r)^q], the ALT quantity,
* water = ||A||^(2rq) Tr B^(rq),
* and ``Tr[(ABA)^(rq)]`` is the quantity both of them bound.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, RangeError
from .linalg import (
    HermitianMatrix,
    PsdMatrix,
    as_matrix,
    block_dilation,
    congruence,
    dagger,
    direct_sum,
    hermitian_modulus,
    jordan,
    loewner_leq,
    loewner_margin,
    modulus,
    psd_power,
)
from .norms import INF, kyfan_constant, operator_norm, power_sum_norm, schatten, schatten_index, trace_power

DEFAULT_TOL = 1e-9
EQUALITY_TOL = 1e-9
AGREEMENT_TOL = 1e-9

HOLDS = "holds"
VIOLATED = "violated"
EQUALITY = "equality"


def relative_gap(x, y) -> float:
    """``|x - y| / max(|x|, |y|, 1)``, the comparison used for all agreements."""
    return abs(x - y) / max(abs(x), abs(y), 1.0)


def fingerprint(*mats, seed=None) -> str:
    h = hashlib.sha256()
    for m in mats:
        a = np.ascontiguousarray(as_matrix(m))
        h.update(str(a.shape).encode())
        h.update(a.tobytes())
    if seed is not None:
        h.update(str(seed).encode())
    return h.hexdigest()[:16]


@dataclass
class IneqParams:
    """Scalar parameters; each checker reads only the ones it needs."""

    r: Optional[float] = None
    q: Optional[float] = None
    p: Optional[float] = None
    t: Optional[float] = None
    s: Optional[float] = None
    u: Optional[float] = None
    a: Optional[float] = None
    b: Optional[float] = None

    def as_dict(self):
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass
class IneqReport:
    ineq_id: str
    lhs: float
    rhs: float
    params: dict
    regime: str = "proven"
    extras: dict = field(default_factory=dict)
    fingerprint: str = ""
    tol: float = DEFAULT_TOL
    relative_slack: float = None
    slack: float = None

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        if self.slack is None:
            self.slack = self.rhs - self.lhs
        if self.relative_slack is None:
            self.relative_slack = self.slack / max(abs(self.lhs), abs(self.rhs), 1.0)
        if not (math.isfinite(self.lhs) and math.isfinite(self.rhs)):
            raise RangeError(f"{self.ineq_id}: non-finite side (lhs={self.lhs}, rhs={self.rhs})")

    @property
    def verdict(self) -> str:
        if self.relative_slack < -self.tol:
            return VIOLATED
        if abs(self.relative_slack) <= EQUALITY_TOL:
            return EQUALITY
        return HOLDS

    @property
    def holds(self) -> bool:
        return self.verdict != VIOLATED

    @property
    def ratio(self) -> float:
        """``lhs / rhs``: 1 at equality, above 1 when violated."""
        if self.rhs == 0.0:
            return 1.0 if self.lhs == 0.0 else math.inf
        return self.lhs / self.rhs

    def as_dict(self):
        return {
            "ineq_id": self.ineq_id,
            "params": self.params,
            "regime": self.regime,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "relative_slack": self.relative_slack,
            "verdict": self.verdict,
            "fingerprint": self.fingerprint,
            "extras": self.extras,
        }


def _binding(ineq_id, parts, params, tol, **kw):
    """Report the part with the smallest relative slack.

    ``parts`` maps a name to ``(lhs, rhs)``; all of them land in extras.
    """
    best = None
    extras = kw.pop("extras", {})
    for name, (lhs, rhs) in parts.items():
        rel = (rhs - lhs) / max(abs(lhs), abs(rhs), 1.0)
        extras[name] = {"lhs": float(lhs), "rhs": float(rhs), "relative_slack": rel}
        if best is None or rel < best[0]:
            best = (rel, name, lhs, rhs)
    rel, name, lhs, rhs = best
    extras["binding"] = name
    return IneqReport(ineq_id, lhs, rhs, params, extras=extras, tol=tol, **kw)


def _psd(x, what="matrix"):
    if isinstance(x, PsdMatrix):
        return x
    try:
        return PsdMatrix(x)
    except DomainError as exc:
        raise DomainError(f"{what}: {exc}") from None


def _hermitian(x, what="matrix"):
    if isinstance(x, HermitianMatrix):
        return x
    try:
        return HermitianMatrix(x)
    except DomainError as exc:
        raise DomainError(f"{what}: {exc}") from None


def _square(x, what="matrix"):
    m = as_matrix(x)
    if m.shape[0] != m.shape[1]:
        raise DomainError(f"{what} must be square, got {m.shape}")
    return m


def _same_dim(*mats):
    dims = {as_matrix(m).shape for m in mats}
    if len(dims) != 1:
        raise DomainError(f"dimension mismatch: {sorted(dims)}")


def _need(cond, message):
    if not cond:
        raise DomainError(message)


class _Quantities:
    """Shared building blocks for the water/wine family, computed lazily."""

    def __init__(self, a, b, r, q):
        self.a, self.b, self.r, self.q = a, b, float(r), float(q)
        self._cache = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def a_r(self):
        return self._get("a_r", lambda: psd_power(self.a, self.r))

    @property
    def b_r(self):
        return self._get("b_r", lambda: psd_power(self.b, self.r))

    @property
    def wine_matrix(self):
        return self._get("wm", lambda: congruence(self.a_r, self.b_r))

    @property
    def aba(self):
        return self._get("aba", lambda: congruence(self.a, self.b))

    @property
    def main(self):
        """Tr[(ABA)^(rq)]"""
        return self._get("main", lambda: trace_power(self.aba, self.r * self.q))

    @property
    def wine(self):
        return self._get("wine", lambda: trace_power(self.wine_matrix, self.q))

    @property
    def water(self):
        rq = self.r * self.q
        return self._get(
            "water", lambda: operator_norm(self.a) ** (2.0 * rq) * trace_power(self.b, rq)
        )


def check_alt(A, B, r, q, *, tol=DEFAULT_TOL) -> IneqReport:
    """ALT: Tr[(A^r B^r A^r)^q] <= Tr[(ABA)^(rq)] for 0 <= r <= 1, q >= 0.

    Reversed for r >= 1.
    """
    A, B = _psd(A, "A"), _psd(B, "B")
    _same_dim(A, B)
    _need(q >= 0, f"ALT needs q >= 0, got q = {q}")
    _need(r >= 0, f"ALT needs r >= 0, got r = {r}")
    z = _Quantities(A, B, r, q)
    lhs, rhs = (z.wine, z.main) if r <= 1 else (z.main, z.wine)
    return IneqReport("alt", lhs, rhs, {"r": r, "q": q}, tol=tol,
                      fingerprint=fingerprint(A, B))


def check_water(A, B, r, q, *, tol=DEFAULT_TOL) -> IneqReport:
    """Tr[(ABA)^(rq)] <= ||A||^(2rq) Tr B^(rq) for q >= 0; reversed for q <= 0.

    Negative ``r*q`` needs both matrices positive definite.
    """
    A, B = _psd(A, "A"), _psd(B, "B")
    _same_dim(A, B)
    _need(r >= 0, f"water bound needs r >= 0, got r = {r}")
    if r * q < 0:
        _need(A.is_definite and B.is_definite,
              "negative r*q needs positive definite A and B")
    z = _Quantities(A, B, r, q)
    lhs, rhs = (z.main, z.water) if q >= 0 else (z.water, z.main)
    return IneqReport("water", lhs, rhs, {"r": r, "q": q}, tol=tol,
                      fingerprint=fingerprint(A, B))


def _orient(r, smaller, larger):
    return (smaller, larger) if r <= 1 else (larger, smaller)


def check_waterwine(A, B, r, q, *, tol=DEFAULT_TOL) -> IneqReport:
    """Tr[(ABA)^(rq)] <= water^(1-r) * wine^r for 0 <= r <= 1; reversed for r >= 1.

    For q > 0 the report also carries the two norm formulations

        ||(ABA)^r||_q <= (||A||^(2r) ||B^r||_q)^(1-r) ||A^r B^r A^r||_q^r
        ||(B^(1/2) A^2 B^(1/2))^r||_q <= (||B||^r ||A^(2r)||_q)^(1-r) ||A^r B^r A^r||_q^r

    and ``extras["formulation_gap"]``, the largest relative disagreement
    between quantities the three forms say are equal.
    """
    A, B = _psd(A, "A"), _psd(B, "B")
    _same_dim(A, B)
    _need(q >= 0, f"water-wine bound needs q >= 0, got q = {q}")
    _need(r >= 0, f"water-wine bound needs r >= 0, got r = {r}")
    z = _Quantities(A, B, r, q)
    bound = z.water ** (1.0 - r) * z.wine ** r
    lhs, rhs = _orient(r, z.main, bound)
    extras = {"water": z.water, "wine": z.wine, "trace_aba_rq": z.main}
    if q > 0:
        extras.update(_norm_formulations(z, bound))
    return IneqReport("waterwine", lhs, rhs, {"r": r, "q": q}, tol=tol, extras=extras,
                      fingerprint=fingerprint(A, B))


def _norm_formulations(z, bound):
    r, q = z.r, z.q
    norm_a = operator_norm(z.a)
    wine_norm = schatten(z.wine_matrix, q)

    norm_lhs = schatten(psd_power(z.aba, r), q)
    norm_rhs = (norm_a ** (2 * r) * schatten(z.b_r, q)) ** (1 - r) * wine_norm ** r

    b_half = psd_power(z.b, 0.5)
    a_sq = psd_power(z.a, 2.0)
    a_2r = psd_power(z.a, 2 * r)
    sandwich_lhs = schatten(psd_power(congruence(b_half, a_sq), r), q)
    sandwich_mid = ((operator_norm(b_half) ** (2 * r) * schatten(a_2r, q)) ** (1 - r)
               * schatten(congruence(psd_power(z.b, r / 2), a_2r), q) ** r)
    sandwich_rhs = (operator_norm(z.b) ** r * schatten(a_2r, q)) ** (1 - r) * wine_norm ** r

    gaps = [
        relative_gap(norm_lhs ** q, z.main),
        relative_gap(norm_rhs ** q, bound),
        relative_gap(sandwich_lhs, norm_lhs),
        relative_gap(sandwich_mid, sandwich_rhs),
    ]
    ls, rs = _orient(r, sandwich_lhs, sandwich_rhs)
    return {
        "norm_form": {"lhs": norm_lhs, "rhs": norm_rhs},
        "sandwich_form": {"lhs": sandwich_lhs, "rhs": sandwich_rhs, "middle": sandwich_mid,
                "relative_slack": (rs - ls) / max(abs(ls), abs(rs), 1.0)},
        "formulation_gap": max(gaps),
    }


def check_t_family(A, B, r, q, t, *, tol=DEFAULT_TOL) -> IneqReport:
    """Tr[(ABA)^(rq)] <= water^t * wine^(1-t), proven for 1-r <= t <= 1.

    Below ``t = 1 - r`` the report's regime is "exploratory": a violation
    there is data, not a failure.
    """
    A, B = _psd(A, "A"), _psd(B, "B")
    _same_dim(A, B)
    _need(0 <= r <= 1, f"t-family needs 0 <= r <= 1, got r = {r}")
    _need(q >= 0, f"t-family needs q >= 0, got q = {q}")
    _need(0 <= t <= 1, f"t-family needs 0 <= t <= 1, got t = {t}")
    z = _Quantities(A, B, r, q)
    rhs = z.water ** t * z.wine ** (1.0 - t)
    regime = "proven" if t >= 1.0 - r - 1e-12 else "exploratory"
    return IneqReport("t_family", z.main, rhs, {"r": r, "q": q, "t": t}, regime=regime,
                      tol=tol, extras={"water": z.water, "wine": z.wine},
                      fingerprint=fingerprint(A, B))


def check_bourin(A, B, r, a, b, *, tol=DEFAULT_TOL) -> IneqReport:
    """K^-1 lambda((ABA)^r) <= lambda(A^r B^r A^r) <= K lambda((ABA)^r), componentwise.

    Needs r >= 1 and bI <= B <= aI; K is :func:`kyfan_constant`. The report's
    sides come from the tightest single component.
    """
    A, B = _psd(A, "A"), _psd(B, "B")
    _same_dim(A, B)
    _need(r >= 1, f"Bourin's bound needs r >= 1, got r = {r}")
    eye = np.eye(B.n)
    if not (loewner_leq(b * eye, B) and loewner_leq(B, a * eye)):
        w = B.eigenvalues
        raise DomainError(f"B spectrum [{w[-1]:.6g}, {w[0]:.6g}] not inside [b, a] = [{b}, {a}]")
    k = kyfan_constant(a, b, r)
    z = _Quantities(A, B, r, 1.0)
    outer = z.aba.eigenvalues ** r
    inner = z.wine_matrix.eigenvalues
    # eigenvalues are only known to about eps * lambda_max, so every component
    # is measured against the spectral scale rather than its own size
    scale = max(abs(inner[0]), k * outer[0], 1.0)
    lower_rel = (inner - outer / k) / scale
    upper_rel = (k * outer - inner) / scale
    i, j = int(np.argmin(lower_rel)), int(np.argmin(upper_rel))
    extras = {"K": k, "outer": outer.tolist(), "inner": inner.tolist(), "scale": scale}
    if lower_rel[i] <= upper_rel[j]:
        lhs, rhs, rel, extras["binding"] = outer[i] / k, inner[i], lower_rel[i], f"lower[{i}]"
    else:
        lhs, rhs, rel, extras["binding"] = inner[j], k * outer[j], upper_rel[j], f"upper[{j}]"
    return IneqReport("bourin", lhs, rhs, {"r": r, "a": a, "b": b}, tol=tol, extras=extras,
                      fingerprint=fingerprint(A, B), relative_slack=float(rel))


def check_trace_norm_special(A, B, *, tol=DEFAULT_TOL) -> IneqReport:
    """Tr[AB] <= ||AB||_1 <= (||A|| Tr B Tr[AB])^(1/2) for PSD A, B."""
    A, B = _psd(A, "A"), _psd(B, "B")
    _same_dim(A, B)
    ab = A.data @ B.data
    trace_ab = max(float(np.trace(ab).real), 0.0)
    nuclear = schatten(ab, 1)
    upper = math.sqrt(operator_norm(A) * trace_power(B, 1.0) * trace_ab)
    return _binding("trace_norm", {"lower": (trace_ab, nuclear), "upper": (nuclear, upper)},
                    {}, tol, extras={"trace_ab": trace_ab, "trace_norm_ab": nuclear,
                                     "upper_bound": upper},
                    fingerprint=fingerprint(A, B))


def _gauge(mat, exponent, p):
    """|| |M|^e ||_p^(1/e) for a PSD or general M, from its singular values."""
    if isinstance(mat, HermitianMatrix):
        sv = np.abs(mat.eigenvalues)
    else:
        sv = modulus(mat).eigenvalues
    if p == INF:
        return power_sum_norm(sv, INF)
    return power_sum_norm(sv, exponent * p)


def check_holder(X, Y, s, t, u, p, *, tol=DEFAULT_TOL) -> IneqReport:
    """|| |XY|^u ||_p^(1/u) <= || |X|^s ||_p^(1/s) || |Y|^t ||_p^(1/t), 1/s + 1/t = 1/u.

    When both ``X`` and ``Y`` are :class:`PsdMatrix`, the two-application
    corollary ||(XYX)^u||_p^(1/u) <= ||X^(2s)||_p^(1/s) ||Y^t||_p^(1/t) is
    checked as well and may become the binding part.
    """
    p = schatten_index(p)
    _need(s > 0 and t > 0 and u > 0, f"Hölder exponents must be positive: s={s}, t={t}, u={u}")
    _need(abs(1 / s + 1 / t - 1 / u) <= 1e-12, f"need 1/s + 1/t = 1/u, got s={s}, t={t}, u={u}")
    _same_dim(X, Y)
    x, y = as_matrix(X), as_matrix(Y)
    parts = {"holder": (_gauge(x @ y, u, p), _gauge(x, s, p) * _gauge(y, t, p))}
    if isinstance(X, PsdMatrix) and isinstance(Y, PsdMatrix):
        xyx = congruence(X, Y)
        parts["corollary"] = (_gauge(xyx, u, p), _gauge(X, 2 * s, p) ** 2 * _gauge(Y, t, p))
    params = {"s": s, "t": t, "u": u, "p": p}
    return _binding("holder", parts, params, tol, fingerprint=fingerprint(X, Y))


def check_general_A(A, B, q, p, *, tol=DEFAULT_TOL) -> IneqReport:
    """||(ABA^*)^q||_p <= || |A|^q B^q |A|^q ||_p for any square A, PSD B, q >= 1."""
    p = schatten_index(p)
    _need(q >= 1, f"needs q >= 1, got q = {q}")
    a = _square(A, "A")
    B = _psd(B, "B")
    _same_dim(a, B)
    lhs = schatten(psd_power(congruence(a, B), q), p)
    abs_a_q = psd_power(modulus(a), q)
    rhs = schatten(congruence(abs_a_q, psd_power(B, q)), p)
    return IneqReport("general_A", lhs, rhs, {"q": q, "p": p}, tol=tol,
                      fingerprint=fingerprint(a, B))


def check_lemma_sum_diff(X, Y, p, q=1.0, *, tol=DEFAULT_TOL) -> IneqReport:
    """|| |X - Y|^q ||_p^(1/q) <= || (X + Y)^q ||_p^(1/q) for PSD X, Y.

    ``q = 1`` is the plain statement ||X - Y||_p <= ||X + Y||_p.
    """
    p = schatten_index(p)
    _need(p >= 1, f"needs p >= 1, got p = {p}")
    _need(q >= 1, f"needs q >= 1, got q = {q}")
    X, Y = _psd(X, "X"), _psd(Y, "Y")
    _same_dim(X, Y)
    diff = hermitian_modulus(HermitianMatrix(X.data - Y.data, check=False))
    total = PsdMatrix(X.data + Y.data, check=False)
    lhs = schatten(psd_power(diff, q), p) ** (1.0 / q)
    rhs = schatten(psd_power(total, q), p) ** (1.0 / q)
    return IneqReport("lemma", lhs, rhs, {"p": p, "q": q}, tol=tol,
                      fingerprint=fingerprint(X, Y))


def check_hermitian_B(A, B, q, p, *, tol=DEFAULT_TOL) -> IneqReport:
    """|| |ABA^*|^q ||_p <= || |A|^q |B|^q |A|^q ||_p for square A, Hermitian B."""
    p = schatten_index(p)
    _need(q >= 1, f"needs q >= 1, got q = {q}")
    a = _square(A, "A")
    B = _hermitian(B, "B")
    _same_dim(a, B)
    plus, minus = jordan(B)
    abs_b = PsdMatrix(plus.data + minus.data, check=False)
    aba = HermitianMatrix(a @ B.data @ dagger(a), check=False)
    lhs = schatten(psd_power(hermitian_modulus(aba), q), p)
    rhs = schatten(congruence(psd_power(modulus(a), q), psd_power(abs_b, q)), p)
    return IneqReport("hermitian_B", lhs, rhs, {"q": q, "p": p}, tol=tol,
                      fingerprint=fingerprint(a, B))


def check_general(A, B, q, p, *, tol=DEFAULT_TOL) -> IneqReport:
    """|| |ABA^*|^q ||_p <= || |A|^q (|B|^q + |B^*|^q)/2 |A|^q ||_p for square A, B.

    The report also re-derives the left side through the Hermitian dilation
    of B inside a 2n x 2n problem, and records the bound that route gives,

        (( ||M1||_p^p + ||M2||_p^p ) / 2)^(1/p),   M1 = |A|^q |B^*|^q |A|^q,
                                                    M2 = |A|^q |B|^q |A|^q,

    under ``extras["power_mean"]``. That bound is never below the
    symmetrised right side, and coincides with it at p = 1.
    ``extras["dilation_gap"]`` is the largest relative disagreement between
    the direct and dilated computations.
    """
    p = schatten_index(p)
    _need(p >= 1, f"needs p >= 1, got p = {p}")
    _need(q >= 1, f"needs q >= 1, got q = {q}")
    a, b = _square(A, "A"), _square(B, "B")
    _same_dim(a, b)
    abs_a_q = psd_power(modulus(a), q)
    abs_b_q = psd_power(modulus(b), q)
    abs_bh_q = psd_power(modulus(dagger(b)), q)
    lhs = schatten(psd_power(modulus(a @ b @ dagger(a)), q), p)
    sym = PsdMatrix((abs_b_q.data + abs_bh_q.data) / 2, check=False)
    rhs = schatten(congruence(abs_a_q, sym), p)

    m1 = schatten(congruence(abs_a_q, abs_bh_q), p)
    m2 = schatten(congruence(abs_a_q, abs_b_q), p)
    if p == INF:
        split = max(m1, m2)
        mean = split
        halve = 1.0
    else:
        split = (m1 ** p + m2 ** p) ** (1.0 / p)
        mean = split / 2.0 ** (1.0 / p)
        halve = 2.0 ** (1.0 / p)

    # 2n x 2n route: A -> A (+) A, B -> [[0, B], [B^*, 0]]
    a2 = direct_sum(a, a)
    b2 = block_dilation(b)
    z2 = HermitianMatrix(a2 @ b2.data @ dagger(a2), check=False)
    lhs2 = schatten(psd_power(hermitian_modulus(z2), q), p)
    rhs2 = schatten(congruence(psd_power(modulus(a2), q),
                               psd_power(hermitian_modulus(b2), q)), p)
    gap = max(relative_gap(lhs2 / halve, lhs), relative_gap(rhs2, split))
    extras = {
        "power_mean": {"rhs": mean, "relative_slack": (mean - lhs) / max(lhs, mean, 1.0)},
        "dilation": {"lhs": lhs2, "rhs": rhs2},
        "dilation_gap": gap,
    }
    return IneqReport("general", lhs, rhs, {"q": q, "p": p}, tol=tol, extras=extras,
                      fingerprint=fingerprint(a, b))


def check_proof_steps(A, B, r, *, tol=DEFAULT_TOL) -> IneqReport:
    """The operator inequalities used inside the water and water-wine proofs.

    * ABA <= ||B||^(1-r) A B^r A
    * B^(1/2) A^2 B^(1/2) <= ||A||^2 B
    * ||B^(1-r)|| = ||B||^(1-r)

    A Loewner step X <= Y is reported as lhs = ||X||, rhs = ||X|| +
    lambda_min(Y - X); the norm identity as a two-sided comparison.
    """
    A, B = _psd(A, "A"), _psd(B, "B")
    _same_dim(A, B)
    _need(0 <= r <= 1, f"needs 0 <= r <= 1, got r = {r}")
    norm_a, norm_b = operator_norm(A), operator_norm(B)
    steps = {
        "aba": (congruence(A, B), norm_b ** (1 - r) * congruence(A, psd_power(B, r)).data),
        "water": (congruence(psd_power(B, 0.5), psd_power(A, 2.0)), norm_a ** 2 * B.data),
    }
    parts, extras = {}, {}
    for name, (x, y) in steps.items():
        size = operator_norm(x)
        parts[name] = (size, size + loewner_margin(x, y))
        extras[f"{name}_loewner_leq"] = loewner_leq(x, y, tol)
    left, right = operator_norm(psd_power(B, 1 - r)), norm_b ** (1 - r)
    parts["norm_power"] = (max(left, right), min(left, right))
    return _binding("proof_steps", parts, {"r": r}, tol, extras=extras,
                    fingerprint=fingerprint(A, B))


@dataclass(frozen=True)
class Checker:
    """Registry entry: how to call a checker from matrices and an IneqParams.

    ``inputs`` names the matrix class of each argument ("psd", "pd",
    "general", "hermitian", "bounded" for a spectrum in [b, a]);
    ``params`` are the IneqParams fields passed positionally.
    """

    ineq_id: str
    func: Callable
    inputs: tuple
    params: tuple

    def __call__(self, mats, params: IneqParams, tol=DEFAULT_TOL) -> IneqReport:
        values = []
        for name in self.params:
            v = getattr(params, name)
            if v is None:
                raise DomainError(f"{self.ineq_id} needs parameter {name!r}")
            values.append(v)
        return self.func(*mats, *values, tol=tol)


REGISTRY = {
    c.ineq_id: c
    for c in (
        Checker("alt", check_alt, ("psd", "psd"), ("r", "q")),
        Checker("water", check_water, ("psd", "psd"), ("r", "q")),
        Checker("waterwine", check_waterwine, ("psd", "psd"), ("r", "q")),
        Checker("t_family", check_t_family, ("psd", "psd"), ("r", "q", "t")),
        Checker("bourin", check_bourin, ("psd", "bounded"), ("r", "a", "b")),
        Checker("trace_norm", check_trace_norm_special, ("psd", "psd"), ()),
        Checker("holder", check_holder, ("general", "general"), ("s", "t", "u", "p")),
        Checker("general_A", check_general_A, ("general", "psd"), ("q", "p")),
        Checker("lemma", check_lemma_sum_diff, ("psd", "psd"), ("p",)),
        Checker("hermitian_B", check_hermitian_B, ("general", "hermitian"), ("q", "p")),
        Checker("general", check_general, ("general", "general"), ("q", "p")),
        Checker("proof_steps", check_proof_steps, ("psd", "psd"), ("r",)),
    )
}


def get_checker(ineq_id) -> Checker:
    try:
        return REGISTRY[ineq_id]
    except KeyError:
        raise KeyError(f"unknown inequality {ineq_id!r}; known: {', '.join(REGISTRY)}") from None
