"""Gradient-free tightness search.

Random-restart hill climbing on ``lhs / rhs``: each restart starts from a
fresh seeded sample and perturbs one randomly chosen input per step.
PSD inputs take either ``X <- modulus(X + eps G)`` or the relative move
``X <- (I + eps G) X (I + eps G)^H`` with equal odds; general inputs take
``X + eps G`` and Hermitian ones its Hermitian part. A proposal is kept
only when the ratio improves, and a direction that worked is repeated
until it stops working. ``eps``
falls geometrically from 0.5 to 1e-3 within each restart and is measured
relative to the current matrix's RMS entry size.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .campaign import input_plan, materialize
from .errors import AltLabError, DomainError
from .inequalities import DEFAULT_TOL, REGISTRY, IneqParams, get_checker
from .linalg import HermitianMatrix, PsdMatrix, as_matrix, congruence, dagger, eig_precision, modulus
from .matrixio import matrix_from_doc, matrix_to_doc
from .sampling import complex_gaussian, generator

EPS_START = 0.5
EPS_END = 1e-3
ANOMALY_TOL = 1e-9
RESTARTS = 10
# the perturbation streams live far away from the sample indices
_STREAM_OFFSET = 1 << 40


@dataclass
class Witness:
    ineq_id: str
    params: IneqParams
    inputs: list
    ratio: float
    trajectory: list
    seed: int
    dim: int
    budget: int
    regime: str = "proven"
    restart: int = 0
    report: dict = field(default_factory=dict)
    anomalies: list = field(default_factory=list)

    def as_dict(self):
        return {
            "ineq_id": self.ineq_id,
            "params": self.params.as_dict(),
            "ratio": self.ratio,
            "regime": self.regime,
            "seed": self.seed,
            "dim": self.dim,
            "budget": self.budget,
            "restart": self.restart,
            "trajectory": [[int(i), float(r)] for i, r in self.trajectory],
            "inputs": [matrix_to_doc(m) for m in self.inputs],
            "report": self.report,
            "anomalies": self.anomalies,
        }

    @classmethod
    def from_dict(cls, doc):
        params = IneqParams(**{k: _number(v) for k, v in doc["params"].items()})
        return cls(
            ineq_id=doc["ineq_id"],
            params=params,
            inputs=[matrix_from_doc(m) for m in doc["inputs"]],
            ratio=float(doc["ratio"]),
            trajectory=[(int(i), float(r)) for i, r in doc["trajectory"]],
            seed=int(doc["seed"]),
            dim=int(doc["dim"]),
            budget=int(doc["budget"]),
            regime=doc.get("regime", "proven"),
            restart=int(doc.get("restart", 0)),
            report=doc.get("report", {}),
            anomalies=doc.get("anomalies", []),
        )

    def dumps(self):
        return json.dumps(_jsonable(self.as_dict()), indent=1)

    def save(self, path):
        Path(path).write_text(self.dumps() + "\n")

    @classmethod
    def load(cls, path):
        return cls.from_dict(json.loads(Path(path).read_text()))


def _number(v):
    if isinstance(v, str):
        return float(v)
    return v


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _apply(m, slot, eps, g, relative, params):
    data = as_matrix(m)
    n = data.shape[0]
    scale = float(np.linalg.norm(data)) / n
    if scale == 0.0:
        scale = 1.0
    if relative:
        # eigenvalues rescale, so small ones can keep shrinking
        p = congruence(np.eye(n) + eps * g, m)
    else:
        x = data + eps * scale * g
        if slot == "general":
            return x
        if slot == "hermitian":
            return HermitianMatrix((x + dagger(x)) / 2, check=False)
        p = modulus(x)
    if slot == "bounded":
        # project the spectrum back into [b, a]
        w, v = p.eig
        return PsdMatrix.from_eig(np.clip(w, params.b, params.a), v)
    return p


def _canonical(m):
    """The matrix a witness file reloads to, so replays score identically."""
    for _ in range(3):
        again = matrix_from_doc(matrix_to_doc(m))
        if np.array_equal(as_matrix(again), as_matrix(m)):
            return again
        m = again
    return m


class _Scorer:
    def __init__(self, checker, params, tol):
        self.checker = checker
        self.params = params
        self.tol = tol

    def __call__(self, mats):
        """``(ratio, report)``, or ``None`` for a rejected proposal."""
        try:
            rep = self.checker(mats, self.params, self.tol)
        except (DomainError, ArithmeticError, OverflowError):
            return None
        if rep.rhs == 0.0:
            return None
        return rep.ratio, rep


def _anomaly_check(score, mats, ratio, rep, iteration):
    """Re-evaluate a proven-regime ratio above 1 at tightened precision.

    Returns ``(ratio, report, anomaly)``; ``anomaly`` is a dict when the
    excess survives the re-evaluation.
    """
    with eig_precision(1e-16, 400):
        again = score(mats)
    if again is None:
        return ratio, rep, {"iteration": iteration, "ratio": ratio, "recheck": None,
                            "inputs": [matrix_to_doc(m) for m in mats]}
    r2, rep2 = again
    if r2 > 1.0 + ANOMALY_TOL:
        return r2, rep2, {"iteration": iteration, "ratio": ratio, "recheck": r2,
                          "inputs": [matrix_to_doc(m) for m in mats],
                          "report": _jsonable(rep2.as_dict())}
    return r2, rep2, None


def _restart(args):
    ineq_id, params, dim, seed, restart, steps, offset, init, tol = args
    checker = REGISTRY[ineq_id]
    score = _Scorer(checker, params, tol)
    rng = generator(seed, _STREAM_OFFSET + restart)
    anomalies = []
    if init is not None:
        mats = list(init)
    else:
        mats = materialize(input_plan(checker.inputs, dim, restart), dim, seed,
                           a=params.a, b=params.b)
    mats = [_canonical(m) for m in mats]
    best, best_rep, trajectory = -math.inf, None, []

    def consider(cand, iteration):
        nonlocal best, best_rep, mats
        got = score(cand)
        if got is None:
            return False
        ratio, rep = got
        if rep.regime == "proven" and ratio > 1.0 + ANOMALY_TOL:
            ratio, rep, anomaly = _anomaly_check(score, cand, ratio, rep, iteration)
            if anomaly is not None:
                anomalies.append(anomaly)
                return False
        if ratio > best:
            best, best_rep, mats = ratio, rep, cand
            trajectory.append((offset + iteration, ratio))
            return True
        return False

    consider(mats, 0)
    if best_rep is None:
        raise DomainError(f"{ineq_id}: starting point of restart {restart} has no finite ratio")
    decay = (EPS_END / EPS_START) ** (1.0 / max(steps - 2, 1))
    move = None
    for i in range(1, steps):
        eps = EPS_START * decay ** (i - 1)
        if move is None:
            j = int(rng.integers(len(mats)))
            g = complex_gaussian(rng, dim)
            relative = checker.inputs[j] in ("psd", "bounded") and rng.random() < 0.5
            move = (j, g, relative)
        j, g, relative = move
        cand = list(mats)
        cand[j] = _canonical(_apply(mats[j], checker.inputs[j], eps, g, relative, params))
        # a successful direction is tried again before drawing a new one
        if not consider(cand, i):
            move = None
    return best, best_rep, mats, trajectory, anomalies


def probe_tightness(ineq_id, params: IneqParams, dim: int, budget: int, seed: int = 0,
                    init=None, tol=DEFAULT_TOL, workers: int = 1) -> Witness:
    """Search for inputs pushing ``lhs / rhs`` of ``ineq_id`` towards (or past) 1.

    ``budget`` counts checker evaluations, split over up to ten restarts;
    ``init`` optionally replaces the first restart's starting matrices.
    The best point over all restarts wins, ties going to the lower restart.
    """
    get_checker(ineq_id)
    if int(budget) != budget or budget < 1:
        raise DomainError(f"budget must be a positive integer, got {budget!r}")
    if int(dim) < 1:
        raise DomainError(f"dim must be >= 1, got {dim}")
    budget, dim = int(budget), int(dim)
    n_restarts = min(RESTARTS, budget)
    seg = budget // n_restarts
    jobs = []
    for k in range(n_restarts):
        steps = seg if k < n_restarts - 1 else budget - seg * (n_restarts - 1)
        first = init if (k == 0 and init is not None) else None
        jobs.append((ineq_id, params, dim, seed, k, steps, k * seg, first, tol))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_restart, jobs))
    else:
        results = [_restart(job) for job in jobs]

    best_k = 0
    for k, res in enumerate(results):
        if res[0] > results[best_k][0]:
            best_k = k
    ratio, rep, mats, _, _ = results[best_k]
    trajectory, running = [], -math.inf
    anomalies = []
    for res in results:
        anomalies.extend(res[4])
        for it, r in res[3]:
            if r > running:
                running = r
                trajectory.append((it, r))
    return Witness(ineq_id=ineq_id, params=params, inputs=mats, ratio=ratio,
                   trajectory=trajectory, seed=seed, dim=dim, budget=budget,
                   regime=rep.regime, restart=best_k, report=_jsonable(rep.as_dict()),
                   anomalies=anomalies)


def replay(witness: Witness, tol=DEFAULT_TOL):
    """Re-evaluate a witness's inputs; returns the checker report."""
    return get_checker(witness.ineq_id)(witness.inputs, witness.params, tol)


__all__ = ["Witness", "probe_tightness", "replay", "AltLabError"]
