"""Command-line front end: JSON certificates and CSV sweeps.

Exit codes: 0 success, 1 input error, 2 enumeration size limit, 3
mathematical-soundness failure (a certificate exceeding the exact
probability, a lemma violation, or a bound below its floor).  Code 3 is
reserved so CI pipelines can tell "the theorem machinery is broken" apart
from plain misuse.

Output is byte-identical for identical config and seed once the timestamp
is suppressed with --no-timestamp.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Optional

from . import bounds, engine, explore
from .errors import InputError, RadsumError, SizeLimitError, SoundnessError
from .render import render_number
from .weights import EXACT, FLOAT, WeightVector, canonicalize, parse_weights

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_SIZE = 2
EXIT_SOUNDNESS = 3

SUBCOMMANDS = (
    "exact",
    "distribution",
    "partition",
    "certify",
    "hybrid",
    "decomp-check",
    "mc",
    "lemmas",
    "search",
)

_WEIGHT_COMMANDS = ("exact", "distribution", "partition", "certify", "hybrid", "decomp-check", "mc")

_GRAMMAR_HELP = (
    "weight vector: decimal list '0.8,0.6' (float mode) or squared rationals "
    "'sq:16/25,9/25' meaning x=(4/5,3/5) (exact mode; tokens are x_i^2, "
    "normalized to sum to 1)"
)


@dataclass
class RunConfig:
    """Parsed run configuration; round-trips through to_dict/from_dict."""

    subcommand: str
    weights: Optional[str] = None
    mode: Optional[str] = None
    t: str = "1"
    strict: bool = False
    exact_check: bool = False
    samples: int = 100_000
    seed: int = 0
    budget: int = 10_000
    n: Optional[int] = None
    k_max: int = 1000
    grid_points: int = 10_000
    confidence: float = 0.99
    full_limit: int = engine.DEFAULT_FULL_LIMIT
    mitm_limit: int = engine.DEFAULT_MITM_LIMIT
    workers: int = 1
    output: Optional[str] = None
    fmt: Optional[str] = None
    timestamp: bool = True

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        return cls(**d)


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; remap to input errors."""

    def error(self, message):
        raise InputError(message)


def _default_workers() -> int:
    raw = os.environ.get("RADSUM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> _Parser:
    parser = _Parser(prog="radsum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", metavar="|".join(SUBCOMMANDS))

    def add_common(p, *, weights: bool):
        if weights:
            p.add_argument("weights", help=_GRAMMAR_HELP)
            p.add_argument("--mode", choices=(EXACT, FLOAT), default=None,
                           help="override the numeric mode implied by the grammar")
        p.add_argument("--full-limit", type=int, default=engine.DEFAULT_FULL_LIMIT,
                       help="full-enumeration size limit")
        p.add_argument("--mitm-limit", type=int, default=engine.DEFAULT_MITM_LIMIT,
                       help="meet-in-the-middle size limit")
        p.add_argument("--workers", type=int, default=_default_workers(),
                       help="worker threads (default from RADSUM_THREADS)")
        p.add_argument("-o", "--output", default=None, help="write to file instead of stdout")
        p.add_argument("--no-timestamp", dest="timestamp", action="store_false",
                       help="suppress the timestamp field for diff-able output")

    p = sub.add_parser("exact", help="exact threshold probability Pr(|eps.x| <= t)")
    add_common(p, weights=True)
    p.add_argument("-t", "--threshold", default="1", help="threshold t (rational in exact mode)")
    p.add_argument("--strict", action="store_true", help="strict inequality Pr(|eps.x| < t)")

    p = sub.add_parser("distribution", help="full distribution of eps.x")
    add_common(p, weights=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("partition", help="Case-2 stopping-time event partition")
    add_common(p, weights=True)

    p = sub.add_parser("certify", help="theorem certificate for the instance")
    add_common(p, weights=True)
    p.add_argument("--exact-check", action="store_true",
                   help="attach and verify the exact probability")

    p = sub.add_parser("hybrid", help="partition-refined Case-2 lower bound")
    add_common(p, weights=True)

    p = sub.add_parser("decomp-check", help="verify the Case-1 chain exactly")
    add_common(p, weights=True)

    p = sub.add_parser("mc", help="Monte Carlo estimate with Wilson interval")
    add_common(p, weights=True)
    p.add_argument("-t", "--threshold", default="1")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--confidence", type=float, default=0.99)

    p = sub.add_parser("lemmas", help="bound-function lemma verification sweep")
    add_common(p, weights=False)
    p.add_argument("--k-max", type=int, default=1000)
    p.add_argument("--grid-points", type=int, default=10_000)
    p.add_argument("--mode", choices=(EXACT, FLOAT), default=FLOAT,
                   help="grid comparison arithmetic (crossing checks are always exact)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("search", help="search for low-probability weight vectors")
    add_common(p, weights=False)
    p.add_argument("--n", type=int, required=True, help="dimension, 2..meet-in-the-middle limit")
    p.add_argument("--budget", type=int, default=10_000, help="objective evaluations")
    p.add_argument("--seed", type=int, default=0)

    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    if not ns.subcommand:
        raise InputError(f"missing subcommand; expected one of: {', '.join(SUBCOMMANDS)}")
    cfg = RunConfig(subcommand=ns.subcommand)
    for field in (
        "weights", "mode", "strict", "exact_check", "samples", "seed", "budget",
        "n", "k_max", "grid_points", "confidence", "full_limit", "mitm_limit",
        "workers", "output", "timestamp",
    ):
        if hasattr(ns, field):
            setattr(cfg, field, getattr(ns, field))
    if hasattr(ns, "threshold"):
        cfg.t = ns.threshold
    if hasattr(ns, "format"):
        cfg.fmt = ns.format
    if cfg.workers < 1:
        raise InputError("invalid input: --workers must be >= 1")
    return cfg


def _resolve_weights(cfg: RunConfig) -> WeightVector:
    wv = parse_weights(cfg.weights)
    if cfg.mode is None or cfg.mode == wv.mode:
        cfg.mode = wv.mode
        return wv
    if cfg.mode == FLOAT:
        return canonicalize(wv.as_floats(), FLOAT)
    raise InputError(
        "invalid input: decimal weights cannot be promoted to exact mode; "
        "use the sq: grammar"
    )


def _parse_threshold(cfg: RunConfig, mode: str):
    if mode == EXACT:
        try:
            return Fraction(cfg.t)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"invalid input: bad exact threshold {cfg.t!r} ({exc})") from None
    try:
        return float(Fraction(cfg.t))
    except (ValueError, ZeroDivisionError):
        try:
            return float(cfg.t)
        except ValueError as exc:
            raise InputError(f"invalid input: bad threshold {cfg.t!r} ({exc})") from None


def _weights_json(w: WeightVector) -> list:
    return [render_number(v, w.mode) for v in w.values]


def execute(cfg: RunConfig) -> tuple[int, str, str]:
    """Run the configured command.

    Returns (exit code, output text, warning text for stderr).
    """
    code = EXIT_OK
    warn = ""

    if cfg.subcommand in _WEIGHT_COMMANDS:
        w = _resolve_weights(cfg)
    else:
        w = None
        cfg.mode = cfg.mode or FLOAT

    if cfg.subcommand == "exact":
        t = _parse_threshold(cfg, w.mode)
        p = engine.threshold_probability(
            w, t, cfg.strict, limit=cfg.mitm_limit, workers=cfg.workers
        )
        result = {
            "n": w.n,
            "weights": _weights_json(w),
            "t": render_number(t, w.mode),
            "strict": cfg.strict,
            "probability": render_number(p, w.mode),
        }
        return code, _json_doc(cfg, result), warn

    if cfg.subcommand == "distribution":
        dist = engine.sum_distribution(w, limit=cfg.full_limit)
        if cfg.fmt == "json":
            result = {
                "n": dist.n,
                "weights": _weights_json(w),
                "entries": [
                    {
                        "value": render_number(v, w.mode),
                        "count": c,
                        "probability": render_number(
                            Fraction(c, dist.total) if w.mode == EXACT else c / dist.total,
                            w.mode,
                        ),
                    }
                    for v, c in dist.entries
                ],
            }
            return code, _json_doc(cfg, result), warn
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if w.mode == EXACT:
            writer.writerow(["value", "value_exact", "count", "probability", "probability_exact"])
            for v, c in dist.entries:
                p = Fraction(c, dist.total)
                writer.writerow([repr(float(v)), _exact_text(v), c, repr(float(p)), str(p)])
        else:
            writer.writerow(["value", "count", "probability"])
            for v, c in dist.entries:
                writer.writerow([repr(float(v)), c, repr(c / dist.total)])
        return code, buf.getvalue(), warn

    if cfg.subcommand == "partition":
        report = engine.prefix_partition(w, limit=cfg.full_limit)
        result = {
            "n": report.n,
            "weights": _weights_json(w),
            "total_prob": render_number(report.total_prob, w.mode),
            "events": [
                {
                    "k": k,
                    "prob": render_number(report.probs[i], w.mode),
                    "joint": render_number(report.joints[i], w.mode),
                    "cond": (
                        render_number(report.conds[i], w.mode)
                        if report.conds[i] is not None
                        else None
                    ),
                }
                for i, k in enumerate(report.ks)
            ],
            "boundary_ties": [list(tie) for tie in report.boundary_ties],
        }
        return code, _json_doc(cfg, result), warn

    if cfg.subcommand == "certify":
        cert = bounds.theorem_bound(
            w, exact_check=True if cfg.exact_check else "auto", limit=cfg.mitm_limit
        )
        bounds.verify_certificate(cert)
        result = cert.to_json_dict()
        result["weights"] = _weights_json(w)
        return code, _json_doc(cfg, result), warn

    if cfg.subcommand == "hybrid":
        hb = bounds.hybrid_bound(w, limit=cfg.full_limit)
        cert = bounds.case2_certificate(w)
        result = {
            "weights": _weights_json(w),
            "hybrid_bound": render_number(hb, w.mode),
            "certificate_bound": render_number(cert.final_bound, w.mode),
        }
        return code, _json_doc(cfg, result), warn

    if cfg.subcommand == "decomp-check":
        report = bounds.decomposition_check(w, limit=cfg.mitm_limit)
        result = report.to_json_dict()
        result["weights"] = _weights_json(w)
        result["holds"] = True
        return code, _json_doc(cfg, result), warn

    if cfg.subcommand == "mc":
        t = _parse_threshold(cfg, FLOAT)
        est = explore.monte_carlo(
            w, t, samples=cfg.samples, seed=cfg.seed, confidence=cfg.confidence
        )
        lo, hi = est.interval
        result = {
            "weights": _weights_json(w),
            "t": render_number(t, FLOAT),
            "estimate": render_number(est.estimate, FLOAT),
            "half_width": render_number(est.half_width, FLOAT),
            "center": render_number(est.center, FLOAT),
            "interval": [render_number(lo, FLOAT), render_number(hi, FLOAT)],
            "confidence": est.confidence,
            "samples": est.samples,
            "seed": est.seed,
        }
        return code, _json_doc(cfg, result), warn

    if cfg.subcommand == "lemmas":
        report = explore.lemma_sweep(cfg.k_max, cfg.grid_points, mode=cfg.mode)
        if not report.ok:
            code = EXIT_SOUNDNESS
            warn = "\n".join(f"lemma violation: {v}" for v in report.violations)
        if cfg.fmt == "json":
            result = {
                "k_max": report.k_max,
                "grid_points": report.grid_points,
                "mode": report.mode,
                "ok": report.ok,
                "minmax_nondecreasing": report.minmax_nondecreasing,
                "violations": list(report.violations),
                "rows": [
                    {
                        "k": r.k,
                        "crossing_x": render_number(r.crossing_x, EXACT),
                        "g_at_crossing": render_number(r.g_at_crossing, EXACT),
                        "h_at_crossing": render_number(r.h_at_crossing, EXACT),
                        "minmax": render_number(r.minmax, EXACT),
                        "monotone_g_ok": r.monotone_g_ok,
                        "monotone_h_ok": r.monotone_h_ok,
                        "min_location_ok": r.min_location_ok,
                    }
                    for r in report.rows
                ],
            }
            return code, _json_doc(cfg, result), warn
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["k", "crossing_x", "g_at_crossing", "h_at_crossing", "minmax",
             "monotone_g_ok", "monotone_h_ok"]
        )
        for r in report.rows:
            writer.writerow(
                [
                    r.k,
                    repr(float(r.crossing_x)),
                    repr(float(r.g_at_crossing)),
                    repr(float(r.h_at_crossing)),
                    repr(float(r.minmax)),
                    str(r.monotone_g_ok).lower(),
                    str(r.monotone_h_ok).lower(),
                ]
            )
        return code, buf.getvalue(), warn

    if cfg.subcommand == "search":
        res = explore.minimize_probability(
            cfg.n, cfg.budget, cfg.seed, limit=cfg.mitm_limit, workers=cfg.workers
        )
        if res.counterexample_candidate:
            code = EXIT_SOUNDNESS
            warn = (
                "COUNTEREXAMPLE CANDIDATE: search found probability "
                f"{float(res.best_prob)!r} = {res.best_prob} below the 0.36 floor; "
                "verify independently before trusting either the search or the bound"
            )
        result = {
            "n": res.n,
            "seed": res.seed,
            "budget_used": res.budget_used,
            "best_prob": render_number(res.best_prob, FLOAT),
            "best_prob_exact": str(res.best_prob),
            "best_w": _weights_json(res.best_w),
            "counterexample_candidate": res.counterexample_candidate,
            "trajectory": [
                {"evaluations": e, "probability": render_number(p, FLOAT)}
                for e, p in res.trajectory
            ],
        }
        return code, _json_doc(cfg, result), warn

    raise InputError(f"unknown subcommand {cfg.subcommand!r}")


def _exact_text(v) -> str:
    from .render import exact_str

    return exact_str(v)


def _json_doc(cfg: RunConfig, result: dict) -> str:
    doc = {"command": cfg.subcommand, "config": cfg.to_dict()}
    if cfg.timestamp:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat()
    doc["result"] = result
    return json.dumps(doc, indent=2) + "\n"


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
        code, text, warn = execute(cfg)
    except InputError as exc:
        print(f"radsum: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeLimitError as exc:
        print(f"radsum: error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except SoundnessError as exc:
        print(f"radsum: SOUNDNESS FAILURE: {exc}", file=sys.stderr)
        return EXIT_SOUNDNESS
    except RadsumError as exc:
        print(f"radsum: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if warn:
        print(warn, file=sys.stderr)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
