"""Command-line orchestration.

Subcommands: classify, plan, verify-density, carayol, sigma, screen-p,
a-ell.  All reports are JSON with sorted keys, a ``schema_version`` field,
and the config's asserted hypotheses echoed under ``assertions``; repeated
runs with identical config and flags produce byte-identical output (no
timestamps unless --timestamps).  Exit codes: 0 success, 2 configuration
or usage error, 3 computation error.
"""

from __future__ import annotations

import argparse
import datetime
import io
import json
import sys
from pathlib import Path

from .arith import PrimeRange
from .config import RunConfig, build_context, load_config
from .density import empirical_density, enumerate_gl2_classes
from .errors import ComputationError, ConfigError, LambdaForgeError
from .forms import a_ell
from .iwasawa import bk_rank_bounds, euler_factor_from_frobenius, sigma_ell
from .levels import carayol_check, plan_target_lambda
from .residual import (
    Verdict,
    classification_to_csv,
    classify_range,
    resolve_workers,
    screen_p,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTE = 3


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_report(payload: dict, cfg: RunConfig, args: argparse.Namespace) -> None:
    report = dict(payload)
    report["schema_version"] = SCHEMA_VERSION
    report["assertions"] = cfg.assertions()
    if getattr(args, "timestamps", False):
        report["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    _emit(json.dumps(report, sort_keys=True, indent=2) + "\n", args.out)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="path to the run configuration file")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--timestamps", action="store_true", help="add a generation timestamp")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lambda-forge",
        description=(
            "Level raising with prescribed lambda-invariants: classify Frobenius "
            "classes, plan admissible levels, and verify the density claims."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify primes in a range")
    _add_common(p_classify)
    p_classify.add_argument("--from", dest="lo", type=int, required=True)
    p_classify.add_argument("--to", dest="hi", type=int, required=True)
    p_classify.add_argument("--format", choices=("json", "csv"), default="json")
    p_classify.add_argument("--workers", type=int, default=0, help="0 = config/env/cores")

    p_plan = sub.add_parser("plan", help="plan a level set hitting a target lambda")
    _add_common(p_plan)
    p_plan.add_argument("--target-lambda", dest="target", type=int, required=True)
    p_plan.add_argument("--omega-count", dest="omega_count", type=int, default=0)
    p_plan.add_argument("--scan-bound", dest="scan_bound", type=int, default=100_000)

    p_density = sub.add_parser("verify-density", help="verify the density claims")
    _add_common(p_density)
    p_density.add_argument("--bound", type=int, default=2_000_000)
    p_density.add_argument(
        "--enumerate-gl2",
        dest="enumerate_gl2",
        type=int,
        metavar="P",
        help="exhaustive class census for small p instead of the empirical sweep",
    )
    p_density.add_argument("--csv", dest="csv_path", help="also dump per-prime classification")
    p_density.add_argument("--workers", type=int, default=0)

    p_carayol = sub.add_parser("carayol", help="check a proposed level for admissibility")
    _add_common(p_carayol)
    p_carayol.add_argument("--level", type=int, required=True)

    p_sigma = sub.add_parser("sigma", help="local transfer invariants over a prime range")
    _add_common(p_sigma)
    p_sigma.add_argument("--from", dest="lo", type=int, required=True)
    p_sigma.add_argument("--to", dest="hi", type=int, required=True)
    p_sigma.add_argument("--format", choices=("json", "csv"), default="json")

    p_screen = sub.add_parser("screen-p", help="screen a candidate working prime")
    _add_common(p_screen)
    p_screen.add_argument("--p", dest="candidate", type=int, required=True)

    p_aell = sub.add_parser("a-ell", help="Fourier coefficients from the backend")
    _add_common(p_aell)
    p_aell.add_argument("--ell", type=int, action="append", default=None)
    p_aell.add_argument("--from", dest="lo", type=int)
    p_aell.add_argument("--to", dest="hi", type=int)
    p_aell.add_argument("--format", choices=("json", "csv"), default="json")

    return parser


def _cmd_classify(cfg: RunConfig, args: argparse.Namespace) -> None:
    ctx = build_context(cfg)
    workers = args.workers or resolve_workers(cfg.threads)
    stream = classify_range(ctx, PrimeRange(args.lo, args.hi), workers=workers)
    if args.format == "csv":
        buf = io.StringIO()
        classification_to_csv(stream, buf)
        _emit(buf.getvalue(), args.out)
        return
    rows = [fc.as_dict() for fc in stream]
    counts: dict[str, int] = {v.value: 0 for v in Verdict}
    for row in rows:
        counts[row["verdict"]] += 1
    _emit_report(
        {"range": {"from": args.lo, "to": args.hi}, "counts": counts, "classification": rows},
        cfg,
        args,
    )


def _cmd_plan(cfg: RunConfig, args: argparse.Namespace) -> None:
    ctx = build_context(cfg)
    level_set = plan_target_lambda(
        ctx, args.target, args.omega_count, args.scan_bound,
        workers=resolve_workers(cfg.threads),
    )
    payload = level_set.as_dict()
    payload["bk_rank"] = bk_rank_bounds(level_set.predicted_lambda).as_dict()
    carayol = carayol_check(ctx, level_set.n_f, trial_bound=cfg.carayol_trial_bound)
    payload["carayol_cases"] = [p.as_dict() for p in carayol.primes]
    _emit_report(payload, cfg, args)


def _cmd_verify_density(cfg: RunConfig, args: argparse.Namespace) -> None:
    if args.enumerate_gl2 is not None:
        report = enumerate_gl2_classes(args.enumerate_gl2)
        _emit_report(report.as_dict(), cfg, args)
        return
    ctx = build_context(cfg)
    workers = args.workers or resolve_workers(cfg.threads)
    prime_range = PrimeRange(2, args.bound)
    if args.csv_path:
        with open(args.csv_path, "w", encoding="utf-8") as fh:
            classification_to_csv(classify_range(ctx, prime_range, workers=workers), fh)
    pi_report, omega_report = empirical_density(
        ctx,
        prime_range,
        band=cfg.sigma_band,
        min_expected=cfg.min_expected_hits,
        workers=workers,
    )
    _emit_report(
        {"bound": args.bound, "pi": pi_report.as_dict(), "omega": omega_report.as_dict()},
        cfg,
        args,
    )


def _cmd_carayol(cfg: RunConfig, args: argparse.Namespace) -> None:
    ctx = build_context(cfg)
    report = carayol_check(ctx, args.level, trial_bound=cfg.carayol_trial_bound)
    _emit_report(report.as_dict(), cfg, args)


def _cmd_sigma(cfg: RunConfig, args: argparse.Namespace) -> None:
    ctx = build_context(cfg)
    data = []
    for klass in classify_range(ctx, PrimeRange(args.lo, args.hi)):
        if klass.verdict is Verdict.SKIPPED:
            continue
        factor = euler_factor_from_frobenius(klass, ctx.p)
        data.append(sigma_ell(ctx.p, klass.ell, factor, s_cap=cfg.s_ell_cap))
    if args.format == "csv":
        lines = ["ell,s,d,sigma"] + [
            f"{d.ell},{d.s_ell},{d.d_ell},{d.sigma}" for d in data
        ]
        _emit("\n".join(lines) + "\n", args.out)
        return
    _emit_report(
        {"range": {"from": args.lo, "to": args.hi}, "sigma": [d.as_dict() for d in data]},
        cfg,
        args,
    )


def _cmd_screen_p(cfg: RunConfig, args: argparse.Namespace) -> None:
    if cfg.backend != "curve" or cfg.curve is None:
        raise ConfigError("screen-p needs a curve backend")
    report = screen_p(cfg.curve, args.candidate, naive_limit=cfg.naive_count_limit)
    _emit_report(report.as_dict(), cfg, args)


def _cmd_a_ell(cfg: RunConfig, args: argparse.Namespace) -> None:
    ctx = build_context(cfg)
    if args.ell:
        ells = sorted(set(args.ell))
    elif args.lo is not None and args.hi is not None:
        ells = [
            ell
            for ell in PrimeRange(args.lo, args.hi)
            if ctx.level % ell != 0 and ell != ctx.p
        ]
    else:
        raise ConfigError("a-ell needs --ell or both --from and --to")
    rows = [{"ell": ell, "a_ell": a_ell(ctx, ell)} for ell in ells]
    if args.format == "csv":
        lines = ["ell,a_ell"] + [f"{r['ell']},{r['a_ell']}" for r in rows]
        _emit("\n".join(lines) + "\n", args.out)
        return
    _emit_report({"coefficients": rows}, cfg, args)


_COMMANDS = {
    "classify": _cmd_classify,
    "plan": _cmd_plan,
    "verify-density": _cmd_verify_density,
    "carayol": _cmd_carayol,
    "sigma": _cmd_sigma,
    "screen-p": _cmd_screen_p,
    "a-ell": _cmd_a_ell,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        _COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ComputationError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except LambdaForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


def entry() -> None:
    sys.exit(main())
