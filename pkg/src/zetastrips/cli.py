"""Command-line interface.

Subcommands mirror the pipeline stages (run, zeros, trace, strips,
report, validate) plus a point evaluator (eval). Every RunConfig field
is settable three ways with increasing precedence: built-in default,
ZETA_-prefixed environment variable, explicit flag.

Exit codes: 0 success, 2 a validation check failed, 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import backend, pipeline
from .config import config_from_sources, with_overrides
from .errors import ConfigError, NearZeroError, ZetaError
from .zetacore import ComplexPoint, eval_zeta, eval_zeta_deriv, phase

_CONFIG_FLAGS = [
    # (flag, dest, type, help)
    ("--m-max", "m_max", int, "number of strips to build (default 200)"),
    ("--sigma-right", "sigma_right", float, "seeding abscissa (default 8)"),
    ("--sigma-left", "sigma_left", float, "left tracing boundary (default -3)"),
    (
        "--measurement-sigma",
        "measurement_sigma",
        float,
        "abscissa where strip edges are measured (default 0.5)",
    ),
    ("--output-dir", "output_dir", str, "artifact directory (default ./out)"),
    ("--scan-step", "scan_step", float, "zero-scan grid step (default 0.05)"),
    ("--workers", "worker_count", int, "worker threads (default: CPU count)"),
    ("--beta", "beta", float, "truncation multiplier N = ceil(beta*(|t|+10))"),
    ("--correction-terms", "correction_terms", int, "Bernoulli tail terms K"),
    ("--precision-target", "precision_target", float, "max tolerated error bound"),
    ("--zero-floor", "zero_floor", float, "|zeta| below which phase is refused"),
    ("--pole-radius", "pole_radius", float, "exclusion radius around s = 1"),
]


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    for flag, dest, kind, help_text in _CONFIG_FLAGS:
        p.add_argument(flag, dest=dest, type=kind, default=None, help=help_text)
    p.add_argument(
        "--rounding-emulation",
        dest="rounding_emulation",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="round strip edges to integers for the statistics (default on)",
    )
    p.add_argument(
        "--backend",
        choices=("auto", "numba", "numpy"),
        default=None,
        help="numeric kernel backend (default: ZETA_BACKEND or auto)",
    )
    return p


def _overrides(args: argparse.Namespace) -> dict:
    out = {dest: getattr(args, dest) for _, dest, _, _ in _CONFIG_FLAGS}
    out["rounding_emulation"] = args.rounding_emulation
    return out


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _parse_m_range(text: str, m_max: int) -> tuple[int, int]:
    try:
        if ".." in text:
            a_text, b_text = text.split("..", 1)
            a, b = int(a_text), int(b_text)
        else:
            a = b = int(text)
    except ValueError:
        raise ConfigError(f"bad strip range {text!r}; expected N or A..B") from None
    if not 1 <= a <= b:
        raise ConfigError(f"bad strip range {text!r}; need 1 <= A <= B")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="zeta",
        description="Contour-traced strip decomposition of the zeta zero record.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("run", parents=[common], help="full pipeline: zeros, traces, strips, report")

    p_zeros = sub.add_parser("zeros", parents=[common], help="find critical-line zeros")
    p_zeros.add_argument("--t-min", type=float, default=10.0)
    p_zeros.add_argument("--t-max", type=float, required=True)

    p_trace = sub.add_parser("trace", parents=[common], help="trace contours for a strip range")
    p_trace.add_argument(
        "--m",
        dest="m_range",
        default=None,
        help="strip selection: N or A..B (default: all strips up to m-max)",
    )

    sub.add_parser("strips", parents=[common], help="build the strip decomposition")
    sub.add_parser("report", parents=[common], help="run and print the report")
    sub.add_parser("validate", parents=[common], help="run the cross-module check suite")

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate zeta at one point")
    p_eval.add_argument("--sigma", type=float, required=True)
    p_eval.add_argument("--t", type=float, required=True)
    p_eval.add_argument("--deriv", action="store_true", help="include the derivative")
    return parser


def _cmd_run(config) -> int:
    summary = pipeline.run(config)
    _emit(
        {
            "zeros": summary.n_zeros,
            "strips": summary.n_strips,
            "traces": summary.n_traces,
            "fits": {
                "bottoms": {
                    "slope": summary.bottoms_slope,
                    "intercept": summary.bottoms_intercept,
                },
                "tops": {
                    "slope": summary.tops_slope,
                    "intercept": summary.tops_intercept,
                },
            },
            "mean_primary_score": summary.mean_primary_score,
            "variance_ratio": summary.variance_ratio,
            "count_check_passed": summary.count_check_passed,
            "backend": summary.backend,
            "output_dir": summary.output_dir,
            "elapsed_seconds": round(summary.elapsed_seconds, 3),
        }
    )
    return 0 if summary.count_check_passed else 2


def _cmd_zeros(config, args) -> int:
    from .zeros import verify_count

    zeros = pipeline.stage_zeros(config, args.t_min, args.t_max)
    check = verify_count(zeros, args.t_min, args.t_max, config.eval_params)
    _emit(
        {
            "count": len(zeros),
            "t_min": args.t_min,
            "t_max": args.t_max,
            "first": zeros[0].t if zeros else None,
            "last": zeros[-1].t if zeros else None,
            "count_check": {
                "expected": check.expected,
                "residual": check.residual,
                "passed": check.passed,
            },
            "file": f"{config.output_dir}/zeros.csv",
        }
    )
    return 0 if check.passed else 2


def _cmd_trace(config, args) -> int:
    import os

    if args.m_range is not None:
        lo, hi = _parse_m_range(args.m_range, config.m_max)
        if hi != config.m_max:
            config = with_overrides(config, m_max=hi)
    else:
        lo, hi = 1, config.m_max
    zeros = pipeline.stage_zeros(config)
    pipeline.stage_traces(config, zeros)
    manifest = json.load(open(os.path.join(config.output_dir, "traces.json")))
    selected = [
        e for e in manifest["traces"] if 2 * lo <= e["k"] <= 2 * hi + 2
    ]
    _emit({"strips": [lo, hi], "traces": selected})
    return 0


def _cmd_strips(config) -> int:
    zeros = pipeline.stage_zeros(config)
    traces = pipeline.stage_traces(config, zeros)
    strips = pipeline.stage_strips(config, zeros, traces)
    _emit(
        {
            "strips": len(strips),
            "first_bottom": strips[0].bottom_t,
            "last_top": strips[-1].top_t,
            "zeros_in_strips": sum(len(s.zeros) for s in strips),
            "file": f"{config.output_dir}/strips.csv",
        }
    )
    return 0


def _cmd_report(config) -> int:
    import os

    pipeline.run(config)
    with open(os.path.join(config.output_dir, "report.json")) as fh:
        sys.stdout.write(fh.read())
    return 0


def _cmd_validate(config) -> int:
    checks = pipeline.validate(config)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
    return 0 if all(c.passed for c in checks) else 2


def _cmd_eval(config, args) -> int:
    point = ComplexPoint(args.sigma, args.t)
    res = eval_zeta(point, config.eval_params)
    try:
        theta = phase(point, config.eval_params).theta
    except NearZeroError:
        theta = None
    out = {
        "sigma": args.sigma,
        "t": args.t,
        "re": res.value.real,
        "im": res.value.imag,
        "abs_error_bound": res.abs_error_bound,
        "phase": theta,
        "backend": backend.backend_name(),
    }
    if args.deriv:
        d = eval_zeta_deriv(point, config.eval_params)
        out["deriv_re"] = d.value.real
        out["deriv_im"] = d.value.imag
        out["deriv_error_bound"] = d.abs_error_bound
    _emit(out)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.backend is not None:
            backend.select_backend(args.backend)
        config = config_from_sources(_overrides(args))
        if args.command == "run":
            return _cmd_run(config)
        if args.command == "zeros":
            return _cmd_zeros(config, args)
        if args.command == "trace":
            return _cmd_trace(config, args)
        if args.command == "strips":
            return _cmd_strips(config)
        if args.command == "report":
            return _cmd_report(config)
        if args.command == "validate":
            return _cmd_validate(config)
        if args.command == "eval":
            return _cmd_eval(config, args)
        raise ConfigError(f"unknown command {args.command!r}")
    except ZetaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
