"""Command-line front end: ``altlab check | probe | case``.

Exit status: 0 when nothing was violated in a proven regime, 1 when
something was, 2 for usage, input or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .campaign import (
    CampaignConfig,
    default_seed,
    dumps_records,
    format_summary,
    proven_violations,
    run_campaign,
    summarize,
)
from .errors import AltLabError, DomainError, MatrixFormatError
from .inequalities import REGISTRY, VIOLATED, IneqParams, get_checker
from .linalg import HermitianMatrix, PsdMatrix
from .matrixio import load_matrix
from .norms import schatten_index
from .probe import Witness, probe_tightness, replay

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2

SLOT_CLASS = {
    "psd": "positive semidefinite",
    "bounded": "positive semidefinite with spectrum in [b, a]",
    "hermitian": "Hermitian",
    "general": "square",
}


def _floats(text):
    try:
        return [schatten_index(v) if v.strip().lower() in ("inf", "∞") else float(v)
                for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _ineqs(text):
    if text == "all":
        return list(REGISTRY)
    names = [v.strip() for v in text.split(",") if v.strip()]
    unknown = [n for n in names if n not in REGISTRY]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown inequality {', '.join(unknown)}; choose from all, {', '.join(REGISTRY)}")
    return names


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _grid_flags(p, single=False):
    kind = "value" if single else "comma-separated list"
    p.add_argument("--r", type=_floats, help=f"r {kind}")
    p.add_argument("--q", type=_floats, help=f"q {kind}")
    p.add_argument("--p", type=_floats, help=f"Schatten index {kind} ('inf' allowed)")
    p.add_argument("--t", type=_floats, help=f"t {kind} (t-family)")
    p.add_argument("--a", type=_floats, help="upper spectrum bound(s) for B")
    p.add_argument("--b", type=_floats, help="lower spectrum bound(s) for B")
    p.add_argument("--tol", type=float, default=1e-9, help="violation tolerance (default 1e-9)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="altlab", description="Falsification campaigns, tightness probes and single "
                                   "evaluations for Araki-Lieb-Thirring type trace inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)

    chk = sub.add_parser("check", help="run a seeded campaign over parameter grids")
    chk.add_argument("--ineq", type=_ineqs, default=list(REGISTRY),
                     help="comma-separated ids or 'all' (default all)")
    chk.add_argument("--dims", type=_ints, help="dimensions, e.g. 1,2,3")
    _grid_flags(chk)
    chk.add_argument("--samples", type=_positive_int, default=10, help="samples per cell")
    chk.add_argument("--seed", type=int, default=None,
                     help="campaign seed (default $ALTLAB_SEED or 0)")
    chk.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    chk.add_argument("--out", help="record file; '-' writes records to stdout")
    chk.add_argument("--workers", type=_positive_int, default=1)

    prb = sub.add_parser("probe", help="hill-climb towards equality (ratio lhs/rhs -> 1)")
    prb.add_argument("--ineq", required=True, choices=list(REGISTRY))
    prb.add_argument("--dims", type=_ints, default=[3], help="dimension (one value)")
    _grid_flags(prb, single=True)
    prb.add_argument("--budget", type=_positive_int, default=2000, help="checker evaluations")
    prb.add_argument("--seed", type=int, default=None)
    prb.add_argument("--out", help="witness file (JSON, matrices inline)")
    prb.add_argument("--workers", type=_positive_int, default=1)

    case = sub.add_parser("case", help="evaluate one inequality on matrix files")
    case.add_argument("matrices", nargs="*", help="matrix files in checker input order")
    case.add_argument("--ineq", choices=list(REGISTRY))
    case.add_argument("--witness", help="replay a probe witness file instead")
    _grid_flags(case, single=True)
    return parser


def _single(values, name):
    if values is None:
        return None
    if len(values) != 1:
        raise DomainError(f"--{name} takes one value here, got {values}")
    return values[0]


def _params(args):
    return IneqParams(**{k: _single(getattr(args, k), k) for k in "rqptab"})


def _config(args):
    cfg = CampaignConfig(ineqs=args.ineq, samples=args.samples,
                         seed=default_seed() if args.seed is None else args.seed,
                         tol=args.tol, format=args.format, out=args.out, workers=args.workers)
    for name in ("dims", "r", "q", "p", "t"):
        value = getattr(args, name)
        if value is not None:
            setattr(cfg, name, value)
    if args.a is not None or args.b is not None:
        a, b = args.a or [], args.b or []
        if len(a) != len(b):
            raise DomainError("--a and --b need the same number of values")
        cfg.ab = list(zip(a, b))
    return cfg.validate()


def cmd_check(args):
    cfg = _config(args)
    records = run_campaign(cfg)
    text = dumps_records(records, cfg.format)
    summary = format_summary(summarize(records))
    if cfg.out == "-":
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    else:
        if cfg.out:
            Path(cfg.out).write_text(text)
        print(summary)
    bad = proven_violations(records)
    return EXIT_VIOLATED if bad else EXIT_OK


def cmd_probe(args):
    params = _params(args)
    dim = _single(args.dims, "dims")
    seed = default_seed() if args.seed is None else args.seed
    w = probe_tightness(args.ineq, params, dim, args.budget, seed=seed, tol=args.tol,
                        workers=args.workers)
    if args.out:
        w.save(args.out)
    print(f"{w.ineq_id} {params.as_dict()} dim={w.dim} budget={w.budget} seed={w.seed}")
    print(f"best ratio lhs/rhs = {w.ratio:.15g} (restart {w.restart}, regime {w.regime})")
    print(f"1 - ratio = {1.0 - w.ratio:.3e}")
    if w.anomalies:
        print(f"ANOMALIES: {len(w.anomalies)} proven-regime points above ratio 1 + 1e-9 "
              f"survived re-evaluation; see the witness file")
        return EXIT_VIOLATED
    return EXIT_OK


def _coerce(m, slot, index):
    want = SLOT_CLASS[slot]
    try:
        if slot in ("psd", "bounded") and not isinstance(m, PsdMatrix):
            return PsdMatrix(m)
        if slot == "hermitian" and not isinstance(m, HermitianMatrix):
            return HermitianMatrix(m)
    except DomainError as exc:
        raise DomainError(f"input {index + 1}: expected a {want} matrix ({exc})") from None
    return m


def cmd_case(args):
    if args.witness:
        w = Witness.load(args.witness)
        rep = replay(w, tol=args.tol)
        out = rep.as_dict()
        out["witness_ratio"] = w.ratio
        out["replay_ratio"] = rep.ratio
    else:
        if not args.ineq:
            raise DomainError("case needs --ineq (or --witness)")
        checker = get_checker(args.ineq)
        if len(args.matrices) != len(checker.inputs):
            raise DomainError(f"{args.ineq} takes {len(checker.inputs)} matrix files "
                              f"({', '.join(SLOT_CLASS[s] for s in checker.inputs)}), "
                              f"got {len(args.matrices)}")
        mats = []
        for i, (path, slot) in enumerate(zip(args.matrices, checker.inputs)):
            try:
                m = load_matrix(path)
            except MatrixFormatError as exc:
                exc.args = (f"{path}: {exc.args[0]}",)
                raise
            mats.append(_coerce(m, slot, i))
        rep = checker(mats, _params(args), args.tol)
        out = rep.as_dict()
    print(json.dumps(_printable(out), indent=2))
    violated = out["verdict"] == VIOLATED and out["regime"] == "proven"
    return EXIT_VIOLATED if violated else EXIT_OK


def _printable(obj):
    if isinstance(obj, float) and obj in (float("inf"), float("-inf")):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _printable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_printable(v) for v in obj]
    return obj


COMMANDS = {"check": cmd_check, "probe": cmd_probe, "case": cmd_case}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except MatrixFormatError as exc:
        print(f"altlab: parse error: {exc}", file=sys.stderr)
    except (AltLabError, ValueError, KeyError, OSError) as exc:
        print(f"altlab {args.command}: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
