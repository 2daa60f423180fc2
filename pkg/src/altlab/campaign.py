"""Seeded falsification campaigns over parameter grids.

A campaign evaluates each inequality on ``samples`` random input sets per
(dimension, parameter) cell. Input set ``k`` at a given dimension is shared
by all parameter cells of that dimension (common random numbers), and
every record carries what is needed to regenerate it: campaign seed,
sample indices, sample kinds and dimension.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import AltLabError, DomainError
from .inequalities import (
    DEFAULT_TOL,
    EQUALITY,
    REGISTRY,
    VIOLATED,
    IneqParams,
    fingerprint,
)
from .norms import INF
from .sampling import SampleSpec, sample

SEED_ENV = "ALTLAB_SEED"

R_CAP = 8.0
Q_CAP = 8.0
P_FLOOR = 0.25
MAX_DIM = 64
NEAR_VIOLATION = 1e-6

DEFAULT_DIMS = (1, 2, 3, 4, 6, 8)
DEFAULT_R = (0.1, 0.3, 0.5, 0.7, 0.9, 1.5, 2.0, 4.0)
DEFAULT_Q = (0.5, 1.0, 2.0, 4.0)
DEFAULT_P = (1.0, 1.5, 2.0, 3.0, INF)
DEFAULT_T = (0.5, 0.75, 1.0)
DEFAULT_AB = ((2.0, 1.0), (10.0, 1.0))
DEFAULT_HOLDER = ((2.0, 2.0, 1.0), (3.0, 1.5, 1.0), (1.5, 3.0, 1.0))

CSV_FIELDS = ("ineq_id", "cell", "index", "dim", "kinds", "params", "lhs", "rhs", "slack",
              "relative_slack", "verdict", "regime", "seed", "fingerprint")


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


@dataclass
class CampaignConfig:
    ineqs: list = field(default_factory=lambda: list(REGISTRY))
    dims: list = field(default_factory=lambda: list(DEFAULT_DIMS))
    r: list = field(default_factory=lambda: list(DEFAULT_R))
    q: list = field(default_factory=lambda: list(DEFAULT_Q))
    p: list = field(default_factory=lambda: list(DEFAULT_P))
    t: list = field(default_factory=lambda: list(DEFAULT_T))
    ab: list = field(default_factory=lambda: list(DEFAULT_AB))
    holder: list = field(default_factory=lambda: list(DEFAULT_HOLDER))
    samples: int = 10
    seed: int = field(default_factory=default_seed)
    tol: float = DEFAULT_TOL
    format: str = "jsonl"
    out: Optional[str] = None
    workers: int = 1

    def validate(self, registry=REGISTRY):
        if self.ineqs == "all":
            self.ineqs = list(registry)
        for name in ("ineqs", "dims", "r", "q", "p", "t", "ab", "holder"):
            if not getattr(self, name):
                raise DomainError(f"grid {name!r} is empty")
        unknown = [i for i in self.ineqs if i not in registry]
        if unknown:
            raise DomainError(f"unknown inequality id(s) {unknown}; known: {', '.join(registry)}")
        if int(self.samples) < 1:
            raise DomainError(f"samples must be >= 1, got {self.samples}")
        for d in self.dims:
            if not (isinstance(d, int) and 1 <= d <= MAX_DIM):
                raise DomainError(f"dims must be integers in [1, {MAX_DIM}], got {d!r}")
        for r in self.r:
            if not 0 <= r <= R_CAP:
                raise DomainError(f"r = {r} outside [0, {R_CAP}]")
        for q in self.q:
            if abs(q) > Q_CAP:
                raise DomainError(f"|q| = {abs(q)} exceeds the cap {Q_CAP}")
        for p in self.p:
            if not p >= P_FLOOR:
                raise DomainError(f"p = {p} below the floor {P_FLOOR}")
        for t in self.t:
            if not 0 <= t <= 1:
                raise DomainError(f"t = {t} outside [0, 1]")
        for a, b in self.ab:
            if not a >= b > 0:
                raise DomainError(f"spectrum bounds need a >= b > 0, got a={a}, b={b}")
        for s, t, u in self.holder:
            if abs(1 / s + 1 / t - 1 / u) > 1e-12:
                raise DomainError(f"Hölder exponents need 1/s + 1/t = 1/u, got {(s, t, u)}")
        if self.format not in ("jsonl", "csv"):
            raise DomainError(f"format must be jsonl or csv, got {self.format!r}")
        if not 0 < self.tol < 1:
            raise DomainError(f"tol must lie in (0, 1), got {self.tol}")
        return self


def param_cells(ineq_id, config, registry=REGISTRY) -> list:
    """The IneqParams grid one inequality is evaluated on."""
    r_unit = [r for r in config.r if r <= 1]
    q_pos = [q for q in config.q if q >= 0]
    q_one = [q for q in config.q if q >= 1]
    p_norm = [p for p in config.p if p >= 1]
    if ineq_id in ("alt", "waterwine"):
        return [IneqParams(r=r, q=q) for r in config.r for q in q_pos]
    if ineq_id == "water":
        return [IneqParams(r=r, q=q) for r in config.r for q in config.q]
    if ineq_id == "t_family":
        return [IneqParams(r=r, q=q, t=t) for r in r_unit for q in q_pos for t in config.t]
    if ineq_id == "bourin":
        return [IneqParams(r=r, a=a, b=b) for r in config.r if r >= 1 for a, b in config.ab]
    if ineq_id == "trace_norm":
        return [IneqParams()]
    if ineq_id == "holder":
        return [IneqParams(s=s, t=t, u=u, p=p) for s, t, u in config.holder for p in config.p]
    if ineq_id in ("general_A", "hermitian_B", "general"):
        return [IneqParams(q=q, p=p) for q in q_one for p in p_norm]
    if ineq_id == "lemma":
        return [IneqParams(p=p) for p in p_norm]
    if ineq_id == "proof_steps":
        return [IneqParams(r=r) for r in r_unit]
    # injected checkers: full product of the grids they name
    cells = [{}]
    for name in registry[ineq_id].params:
        cells = [dict(c, **{name: v}) for c in cells for v in getattr(config, name)]
    return [IneqParams(**c) for c in cells]


def input_plan(slots, dim, k) -> list:
    """Sample kinds and indices for input set ``k``.

    Returns one ``(kind, index)`` per slot, or a single
    ``("commuting_pair", index)`` covering two PSD slots. In every block of
    ten sets, set 7 makes the first PSD input rank-deficient, set 8 the
    second, and set 9 draws a commuting pair. Dimension 1 always uses
    scalars.
    """
    psd_slots = [j for j, s in enumerate(slots) if s == "psd"]
    if dim > 1 and len(slots) == 2 and len(psd_slots) == 2 and k % 10 == 9:
        return [("commuting_pair", 2 * k)]
    deficient = None
    if dim > 1 and k % 10 in (7, 8) and k % 10 - 7 < len(psd_slots):
        deficient = psd_slots[k % 10 - 7]
    plan = []
    for j, slot in enumerate(slots):
        idx = 2 * k + j
        if slot in ("psd", "pd"):
            kind = "scalar" if dim == 1 else ("rank_deficient" if j == deficient else "psd")
        elif slot == "bounded":
            kind = "pd_spectrum"
        else:
            kind = slot
        plan.append((kind, idx))
    return plan


def materialize(plan, dim, seed, a=None, b=None) -> list:
    mats = []
    for kind, idx in plan:
        s = sample(SampleSpec(kind, dim, seed, idx, a=a, b=b))
        if kind == "commuting_pair":
            mats.extend(s)
        else:
            mats.append(s)
    return mats


def plan_kinds(plan):
    kinds = []
    for kind, _ in plan:
        kinds.extend([kind, kind] if kind == "commuting_pair" else [kind])
    return kinds


def _json_number(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _flat_extras(extras):
    out = {}
    for key, val in extras.items():
        if isinstance(val, dict):
            for sub, v in val.items():
                if isinstance(v, (int, float, bool, str)):
                    out[f"{key}.{sub}"] = _json_number(v)
        elif isinstance(val, (int, float, bool, str)):
            out[key] = _json_number(val)
    return out


def _evaluate_block(args):
    """All records for one (inequality, dimension) block."""
    ineq_id, dim, cell_offset, config, registry = args
    checker = registry[ineq_id]
    cells = param_cells(ineq_id, config, registry)
    records = []
    for k in range(config.samples):
        plan = input_plan(checker.inputs, dim, k)
        shared = None
        for ci, params in enumerate(cells):
            if "bounded" in checker.inputs:
                mats = materialize(plan, dim, config.seed, a=params.a, b=params.b)
            else:
                if shared is None:
                    shared = materialize(plan, dim, config.seed)
                mats = shared
            rec = {
                "ineq_id": ineq_id,
                "cell": cell_offset + ci,
                "index": k,
                "dim": dim,
                "kinds": plan_kinds(plan),
                "sample_indices": [idx for _, idx in plan],
                "params": {key: _json_number(v) for key, v in params.as_dict().items()},
                "seed": config.seed,
            }
            try:
                rep = checker(mats, params, tol=config.tol)
            except DomainError as exc:
                rec.update(verdict="skipped", reason=str(exc), regime="n/a",
                           fingerprint=fingerprint(*mats, seed=config.seed))
                records.append(rec)
                continue
            rec.update(
                lhs=rep.lhs, rhs=rep.rhs, slack=rep.slack, relative_slack=rep.relative_slack,
                verdict=rep.verdict, regime=rep.regime,
                fingerprint=fingerprint(*mats, seed=config.seed),
                extras=_flat_extras(rep.extras),
            )
            records.append(rec)
    return records


def run_campaign(config: CampaignConfig, registry=REGISTRY) -> list:
    """Evaluate every (inequality, cell, sample); records ordered by (ineq, cell, index)."""
    config.validate(registry)
    blocks = []
    for ineq_id in config.ineqs:
        n_cells = len(param_cells(ineq_id, config, registry))
        if n_cells == 0:
            continue
        for di, dim in enumerate(config.dims):
            blocks.append((ineq_id, dim, di * n_cells, config, registry))
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            chunks = list(pool.map(_evaluate_block, blocks))
    else:
        chunks = [_evaluate_block(b) for b in blocks]
    order = {name: i for i, name in enumerate(config.ineqs)}
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=lambda rec: (order[rec["ineq_id"]], rec["cell"], rec["index"]))
    return records


def proven_violations(records) -> list:
    return [r for r in records if r["verdict"] == VIOLATED and r["regime"] == "proven"]


def summarize(records) -> dict:
    table = {}
    for rec in records:
        row = table.setdefault(rec["ineq_id"], {
            "count": 0, "violations": 0, "exploratory_violations": 0,
            "equalities": 0, "skipped": 0, "min_relative_slack": math.inf,
        })
        row["count"] += 1
        verdict = rec["verdict"]
        if verdict == "skipped":
            row["skipped"] += 1
            continue
        if verdict == VIOLATED:
            key = "violations" if rec["regime"] == "proven" else "exploratory_violations"
            row[key] += 1
        elif verdict == EQUALITY:
            row["equalities"] += 1
        row["min_relative_slack"] = min(row["min_relative_slack"], rec["relative_slack"])
    return table


def format_summary(table) -> str:
    head = f"{'inequality':<12} {'count':>7} {'violated':>8} {'explor.':>8} {'equal':>7} " \
           f"{'skipped':>7} {'min rel. slack':>15}"
    lines = [head, "-" * len(head)]
    exploratory = False
    for name, row in table.items():
        flag = " !" if row["min_relative_slack"] < NEAR_VIOLATION else ""
        lines.append(
            f"{name:<12} {row['count']:>7} {row['violations']:>8} "
            f"{row['exploratory_violations']:>8} {row['equalities']:>7} {row['skipped']:>7} "
            f"{row['min_relative_slack']:>15.3e}{flag}"
        )
        exploratory |= row["exploratory_violations"] > 0
    lines.append("(! marks a minimum relative slack below 1e-6)")
    if exploratory:
        lines.append("EXPLORATORY REGIME: violations below t = 1 - r are outside the proven "
                     "range and do not affect the exit status")
    return "\n".join(lines)


def dumps_records(records, fmt="jsonl") -> str:
    if fmt == "jsonl":
        return "".join(json.dumps(rec, allow_nan=False) + "\n" for rec in records)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for rec in records:
        row = []
        for name in CSV_FIELDS:
            v = rec.get(name, "")
            if isinstance(v, (list, dict)):
                v = json.dumps(v)
            row.append(repr(v) if isinstance(v, float) else v)
        writer.writerow(row)
    return buf.getvalue()


def regenerate_inputs(record, registry=REGISTRY) -> list:
    """Rebuild the exact input matrices behind a campaign record."""
    checker = registry[record["ineq_id"]]
    plan = input_plan(checker.inputs, record["dim"], record["index"])
    params = record["params"]
    return materialize(plan, record["dim"], record["seed"], a=params.get("a"), b=params.get("b"))


__all__ = [
    "AltLabError", "CampaignConfig", "run_campaign", "summarize", "format_summary",
    "dumps_records", "proven_violations", "regenerate_inputs", "param_cells", "input_plan",
]
