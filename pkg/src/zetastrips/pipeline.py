"""End-to-end orchestration: zeros -> traces -> strips -> report.

Stage discipline: each stage writes its artifacts under
.partial/<stage>/ and promotes them atomically on success, stamping
them with a hash of the stage-relevant configuration; on failure the
partial directory is moved under quarantine/ so the main tree never
holds half-written outputs. A rerun with an unchanged stage hash loads
the stamped artifacts instead of recomputing.

Determinism: downstream stages consume the *written* artifacts (12
significant digits) rather than in-memory values, so a resumed run and
a fresh run feed identical inputs to every stage and produce
byte-identical files. Worker count and output directory are excluded
from stage hashes because they do not affect artifact content.
"""

from __future__ import annotations

import os
import shutil
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from . import backend
from .artifacts import (
    digest_of,
    digest_of_file,
    read_csv,
    read_json,
    write_csv,
    write_json,
)
from .config import RunConfig
from .errors import DegenerateError, ZetaError
from .stats import (
    FitResult,
    dispersion_compare,
    linfit,
    scatter_dispersion,
    series,
)
from .strips import Strip, primary_score, rounded_strip, strip_width
from .tracing import (
    Aborted,
    ContourTrace,
    LeftBoundary,
    ZeroHit,
    classify_zero_contour,
    seed_starts,
    trace_im_zero,
)
from .zeros import CriticalZero, verify_count, find_critical_zeros
from .zetacore import (
    ComplexPoint,
    eval_zeta,
    eval_zeta_deriv,
    functional_eq_residual,
    hardy_z,
    strip_asymptote,
)

SCAN_T_LO = 8.0
SCAN_T_MARGIN = 5.0
FIG_SERIES = {
    "fig1": "bottoms",
    "fig2": "widths",
    "fig3": "zeros",
    "fig4": "zeros_per_width",
    "fig5": "primary_score",
}


@dataclass(frozen=True)
class RunSummary:
    """Counts and headline numbers returned by run()."""

    n_zeros: int
    n_strips: int
    n_traces: int
    bottoms_slope: float
    bottoms_intercept: float
    tops_slope: float
    tops_intercept: float
    mean_primary_score: float
    variance_ratio: float
    count_check_passed: bool
    backend: str
    output_dir: str
    elapsed_seconds: float


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def scan_range(config: RunConfig) -> tuple[float, float]:
    """Height range the zero scan must cover for this run."""
    return SCAN_T_LO, strip_asymptote(config.m_max + 1, "boundary") + SCAN_T_MARGIN


def _eval_subset(config: RunConfig) -> dict:
    return asdict(config.eval_params)


class _Stage:
    """One resumable pipeline stage with stamped, quarantined artifacts."""

    def __init__(self, out_dir: str, name: str, subset: dict):
        self.out_dir = out_dir
        self.name = name
        self.hash = digest_of(subset)
        self.stamp_path = os.path.join(out_dir, ".stages", f"{name}.json")
        self.partial_dir = os.path.join(out_dir, ".partial", name)

    def fresh(self, artifacts: list[str]) -> bool:
        if not os.path.exists(self.stamp_path):
            return False
        try:
            stamp = read_json(self.stamp_path)
        except (OSError, ValueError):
            return False
        if stamp.get("hash") != self.hash:
            return False
        return all(os.path.exists(os.path.join(self.out_dir, rel)) for rel in artifacts)

    def begin(self) -> str:
        shutil.rmtree(self.partial_dir, ignore_errors=True)
        os.makedirs(self.partial_dir, exist_ok=True)
        return self.partial_dir

    def commit(self, moves: list[tuple[str, str]]) -> None:
        """Promote (partial_rel, final_rel) pairs, then stamp the stage."""
        for partial_rel, final_rel in moves:
            final_path = os.path.join(self.out_dir, final_rel)
            os.makedirs(os.path.dirname(final_path), exist_ok=True)
            os.replace(os.path.join(self.partial_dir, partial_rel), final_path)
        write_json(
            self.stamp_path,
            {"stage": self.name, "hash": self.hash, "artifacts": [m[1] for m in moves]},
        )
        shutil.rmtree(self.partial_dir, ignore_errors=True)
        self._drop_partial_root()

    def quarantine(self) -> str | None:
        if not os.path.isdir(self.partial_dir) or not os.listdir(self.partial_dir):
            shutil.rmtree(self.partial_dir, ignore_errors=True)
            self._drop_partial_root()
            return None
        base = os.path.join(self.out_dir, "quarantine")
        os.makedirs(base, exist_ok=True)
        dest = os.path.join(base, self.name)
        k = 1
        while os.path.exists(dest):
            dest = os.path.join(base, f"{self.name}-{k}")
            k += 1
        shutil.move(self.partial_dir, dest)
        self._drop_partial_root()
        return dest

    def _drop_partial_root(self) -> None:
        try:
            os.rmdir(os.path.dirname(self.partial_dir))
        except OSError:  # still holds another stage's staging files
            pass


def _prepare_out(config: RunConfig) -> str:
    out = config.output_dir
    os.makedirs(os.path.join(out, ".stages"), exist_ok=True)
    return out


# ---------------------------------------------------------------- zeros stage


def load_zeros(out_dir: str) -> list[CriticalZero]:
    _, rows = read_csv(os.path.join(out_dir, "zeros.csv"))
    return [CriticalZero(float(t), int(ordinal)) for ordinal, t in rows]


def stage_zeros(config: RunConfig, t_lo: float | None = None, t_hi: float | None = None) -> list[CriticalZero]:
    """Find zeros over the run range (or an explicit range) and persist them."""
    out = _prepare_out(config)
    if t_lo is None or t_hi is None:
        t_lo, t_hi = scan_range(config)
    stage = _Stage(
        out,
        "zeros",
        {
            "stage": "zeros",
            "t_lo": t_lo,
            "t_hi": t_hi,
            "scan_step": config.scan_step,
            "eval": _eval_subset(config),
        },
    )
    if stage.fresh(["zeros.csv"]):
        return load_zeros(out)

    partial = stage.begin()
    try:
        zeros = find_critical_zeros(
            t_lo,
            t_hi,
            config.eval_params,
            scan_step=config.scan_step,
            workers=config.worker_count,
        )
        write_csv(
            os.path.join(partial, "zeros.csv"),
            ("ordinal", "t"),
            [(z.ordinal, z.t) for z in zeros],
        )
        stage.commit([("zeros.csv", "zeros.csv")])
    except BaseException:
        stage.quarantine()
        raise
    return load_zeros(out)


# --------------------------------------------------------------- traces stage


def _terminus_to_json(terminus) -> dict:
    if isinstance(terminus, LeftBoundary):
        return {"type": "left_boundary", "sigma": terminus.sigma}
    if isinstance(terminus, ZeroHit):
        return {"type": "zero", "t": terminus.t, "ordinal": terminus.ordinal}
    if isinstance(terminus, Aborted):
        return {"type": "aborted", "reason": terminus.reason}
    raise ZetaError(f"unexpected terminus {terminus!r} in a pipeline trace")


def _terminus_from_json(obj) -> LeftBoundary | ZeroHit | Aborted:
    kind = obj["type"]
    if kind == "left_boundary":
        return LeftBoundary(obj["sigma"])
    if kind == "zero":
        return ZeroHit(obj["t"], obj["ordinal"])
    return Aborted(obj.get("reason", ""))


def load_traces(out_dir: str) -> dict[int, ContourTrace]:
    manifest = read_json(os.path.join(out_dir, "traces.json"))
    out: dict[int, ContourTrace] = {}
    for entry in manifest["traces"]:
        _, rows = read_csv(os.path.join(out_dir, entry["file"]))
        pts = np.array([[float(a), float(b)] for a, b in rows])
        out[entry["k"]] = ContourTrace(
            points=pts,
            start=ComplexPoint(entry["seed"]["sigma"], entry["seed"]["t"]),
            terminus=_terminus_from_json(entry["terminus"]),
            kind=entry["kind"],
        )
    return out


def stage_traces(config: RunConfig, zeros: list[CriticalZero]) -> dict[int, ContourTrace]:
    """Seed and trace the 2*m_max + 1 contours of the run."""
    out = _prepare_out(config)
    zeros_hash = digest_of_file(os.path.join(out, "zeros.csv"))
    stage = _Stage(
        out,
        "traces",
        {
            "stage": "traces",
            "m_max": config.m_max,
            "sigma_right": config.sigma_right,
            "sigma_left": config.sigma_left,
            "eval": _eval_subset(config),
            "zeros": zeros_hash,
        },
    )
    ks = list(range(2, 2 * config.m_max + 3))
    files = [f"contours/trace_{k}.csv" for k in ks]
    if stage.fresh(["traces.json"] + files):
        return load_traces(out)

    partial = stage.begin()
    os.makedirs(os.path.join(partial, "contours"), exist_ok=True)
    try:
        seeds = seed_starts(config.m_max, config.sigma_right, config.eval_params)

        def one(idx: int) -> ContourTrace:
            point, kind = seeds[idx]
            k = ks[idx]
            try:
                trace = trace_im_zero(
                    point, config.sigma_left, config.eval_params, zeros=zeros, kind=kind
                )
            except ZetaError as exc:
                raise type(exc)(f"trace k={k}: {exc}") from exc
            write_csv(
                os.path.join(partial, f"contours/trace_{k}.csv"),
                ("sigma", "t"),
                [(float(s), float(t)) for s, t in trace.points],
            )
            return trace

        if config.worker_count > 1:
            with ThreadPoolExecutor(max_workers=config.worker_count) as pool:
                traces = list(pool.map(one, range(len(ks))))
        else:
            traces = [one(i) for i in range(len(ks))]

        manifest = {
            "m_max": config.m_max,
            "sigma_right": config.sigma_right,
            "sigma_left": config.sigma_left,
            "traces": [
                {
                    "k": k,
                    "kind": tr.kind,
                    "seed": {"sigma": tr.start.sigma, "t": tr.start.t},
                    "terminus": _terminus_to_json(tr.terminus),
                    "n_points": int(tr.points.shape[0]),
                    "file": f"contours/trace_{k}.csv",
                }
                for k, tr in zip(ks, traces)
            ],
        }
        write_json(os.path.join(partial, "traces.json"), manifest)
        moves = [(f, f) for f in files] + [("traces.json", "traces.json")]
        stage.commit(moves)
    except BaseException:
        stage.quarantine()
        raise
    return load_traces(out)


# --------------------------------------------------------------- strips stage


def load_strips(
    out_dir: str, zeros: list[CriticalZero], measurement_sigma: float = 0.5
) -> list[Strip]:
    """Rebuild Strip objects from strips.csv plus the zero list."""
    ordered = sorted(zeros, key=lambda z: z.t)
    _, rows = read_csv(os.path.join(out_dir, "strips.csv"))
    sigma = measurement_sigma
    strips: list[Strip] = []
    for row in rows:
        m, bottom, top, primary_index = int(row[0]), float(row[1]), float(row[2]), int(row[8])
        inside = tuple(z for z in ordered if bottom < z.t < top)
        strips.append(Strip(m, bottom, top, inside, primary_index, sigma))
    return strips


def _strips_rows(strips: list[Strip]) -> list[tuple]:
    rows = []
    for s in strips:
        r = rounded_strip(s)
        rows.append(
            (
                s.m,
                s.bottom_t,
                s.top_t,
                strip_width(s),
                r.bottom_rounded,
                r.top_rounded,
                r.width_rounded,
                len(s.zeros),
                s.primary_index,
                primary_score(s).value,
            )
        )
    return rows


STRIPS_HEADER = (
    "m",
    "bottom_t",
    "top_t",
    "width",
    "bottom_rounded",
    "top_rounded",
    "width_rounded",
    "n_zeros",
    "primary_index",
    "primary_score",
)


def stage_strips(
    config: RunConfig, zeros: list[CriticalZero], traces: dict[int, ContourTrace]
) -> list[Strip]:
    out = _prepare_out(config)
    stage = _Stage(
        out,
        "strips",
        {
            "stage": "strips",
            "measurement_sigma": config.measurement_sigma,
            "eval": _eval_subset(config),
            "zeros": digest_of_file(os.path.join(out, "zeros.csv")),
            "traces": digest_of_file(os.path.join(out, "traces.json")),
        },
    )
    if stage.fresh(["strips.csv"]):
        return load_strips(out, zeros, config.measurement_sigma)

    partial = stage.begin()
    try:
        from .strips import build_strips

        boundary = [traces[k] for k in sorted(traces) if k % 2 == 0]
        primary = [traces[k] for k in sorted(traces) if k % 2 == 1]
        strips = build_strips(
            boundary, primary, zeros, config.measurement_sigma, config.eval_params
        )
        write_csv(
            os.path.join(partial, "strips.csv"), STRIPS_HEADER, _strips_rows(strips)
        )
        stage.commit([("strips.csv", "strips.csv")])
    except BaseException:
        stage.quarantine()
        raise
    return load_strips(out, zeros, config.measurement_sigma)


# --------------------------------------------------------------- report stage


def _fit_to_json(fit: FitResult) -> dict:
    return asdict(fit)


def _try_linfit(xs: Sequence[float], ys: Sequence[float]) -> FitResult | None:
    try:
        return linfit(xs, ys)
    except DegenerateError:  # fewer than 3 strips: no meaningful fit
        return None


def stage_report(
    config: RunConfig, zeros: list[CriticalZero], strips: list[Strip]
) -> dict:
    """Series CSVs, fits, halves, scatter, count check; report.json."""
    out = _prepare_out(config)
    stage = _Stage(
        out,
        "report",
        {
            "stage": "report",
            "rounding_emulation": config.rounding_emulation,
            "eval": _eval_subset(config),
            "zeros": digest_of_file(os.path.join(out, "zeros.csv")),
            "strips": digest_of_file(os.path.join(out, "strips.csv")),
        },
    )
    fig_files = [f"{fig}.csv" for fig in FIG_SERIES]
    if stage.fresh(["report.json"] + fig_files):
        return read_json(os.path.join(out, "report.json"))

    partial = stage.begin()
    try:
        emu = config.rounding_emulation
        all_series = {
            sid: series(strips, sid, rounding_emulation=emu)
            for sid in ("bottoms", "tops", "widths", "zeros", "zeros_per_width", "primary_score")
        }
        for fig, sid in FIG_SERIES.items():
            write_csv(
                os.path.join(partial, f"{fig}.csv"),
                ("m", sid),
                [(r.m, r.value) for r in all_series[sid]],
            )

        ms = [float(r.m) for r in all_series["bottoms"]]
        ms_minus_1 = [x - 1.0 for x in ms]
        fits = {
            "bottoms": _try_linfit(ms, [r.value for r in all_series["bottoms"]]),
            "tops": _try_linfit(ms, [r.value for r in all_series["tops"]]),
            "primary_score": _try_linfit(
                ms, [r.value for r in all_series["primary_score"]]
            ),
            "bottoms_xm1": _try_linfit(
                ms_minus_1, [r.value for r in all_series["bottoms"]]
            ),
            "tops_xm1": _try_linfit(ms_minus_1, [r.value for r in all_series["tops"]]),
        }
        scores = [r.value for r in all_series["primary_score"]]
        try:
            halves = asdict(dispersion_compare(scores))
        except ZetaError:  # too few strips to split; keep the pooled stats
            halves = {
                "pooled_mean": float(np.mean(scores)),
                "pooled_var": float(np.var(scores, ddof=1)) if len(scores) > 1 else 0.0,
            }
        try:
            scatter = scatter_dispersion(
                all_series["zeros_per_width"], all_series["zeros"]
            )
            scatter_json = {
                "zeros_per_width_cv": scatter.cv_a,
                "zeros_cv": scatter.cv_b,
                "ratio_zpw_over_zeros": scatter.ratio,
            }
        except DegenerateError:  # fewer than 3 strips: CVs undefined
            scatter_json = None
        t_lo, t_hi = scan_range(config)
        check = verify_count(zeros, t_lo, t_hi, config.eval_params)
        in_strips = sum(len(s.zeros) for s in strips)

        report = {
            "config": {
                "m_max": config.m_max,
                "sigma_right": config.sigma_right,
                "sigma_left": config.sigma_left,
                "measurement_sigma": config.measurement_sigma,
                "rounding_emulation": config.rounding_emulation,
                "scan_step": config.scan_step,
                "eval": _eval_subset(config),
            },
            "counts": {
                "zeros_found": len(zeros),
                "zeros_in_strips": in_strips,
                "strips": len(strips),
                "traces": 2 * config.m_max + 1,
            },
            "count_check": asdict(check),
            "fits": {
                name: None if fit is None else _fit_to_json(fit)
                for name, fit in fits.items()
            },
            "halves": halves,
            "scatter": scatter_json,
            "series_files": {fig: f"{fig}.csv" for fig in FIG_SERIES},
        }
        write_json(os.path.join(partial, "report.json"), report)
        stage.commit([(f, f) for f in fig_files] + [("report.json", "report.json")])
    except BaseException:
        stage.quarantine()
        raise
    return read_json(os.path.join(out, "report.json"))


# ----------------------------------------------------------------- run + validate


def run(config: RunConfig) -> RunSummary:
    """Execute the full pipeline; stages with fresh stamps are reused."""
    started = time.monotonic()
    zeros = stage_zeros(config)
    traces = stage_traces(config, zeros)
    strips = stage_strips(config, zeros, traces)
    report = stage_report(config, zeros, strips)

    fits = report["fits"]
    halves = report["halves"]
    nan = float("nan")

    def fit_field(name: str, field: str) -> float:
        entry = fits.get(name)
        return nan if entry is None else entry[field]

    return RunSummary(
        n_zeros=report["counts"]["zeros_found"],
        n_strips=report["counts"]["strips"],
        n_traces=report["counts"]["traces"],
        bottoms_slope=fit_field("bottoms", "slope"),
        bottoms_intercept=fit_field("bottoms", "intercept"),
        tops_slope=fit_field("tops", "slope"),
        tops_intercept=fit_field("tops", "intercept"),
        mean_primary_score=halves["pooled_mean"],
        variance_ratio=halves.get("variance_ratio", float("nan")),
        count_check_passed=report["count_check"]["passed"],
        backend=backend.backend_name(),
        output_dir=config.output_dir,
        elapsed_seconds=time.monotonic() - started,
    )


def _numeric_checks(config: RunConfig) -> list[CheckResult]:
    """Cross-module numeric invariants on seeded random grids."""
    params = config.eval_params
    rng = np.random.default_rng(20260817)
    checks: list[CheckResult] = []

    worst = 0.0
    for _ in range(100):
        s = ComplexPoint(rng.uniform(0.05, 0.95), rng.uniform(10.0, 2000.0))
        worst = max(worst, functional_eq_residual(s, params))
    checks.append(
        CheckResult("functional_equation", worst < 1e-8, f"max residual {worst:.3e}")
    )

    worst = 0.0
    for _ in range(50):
        s = ComplexPoint(rng.uniform(-3.0, 8.0), rng.uniform(8.0, 2000.0))
        a = eval_zeta(s, params).value
        b = eval_zeta(ComplexPoint(s.sigma, -s.t), params).value.conjugate()
        worst = max(worst, abs(a - b) / max(1e-300, abs(a)))
    checks.append(
        CheckResult("conjugate_symmetry", worst < 1e-12, f"max rel dev {worst:.3e}")
    )

    worst = 0.0
    h = 1e-5
    for _ in range(30):
        s = ComplexPoint(rng.uniform(-2.0, 6.0), rng.uniform(10.0, 500.0))
        d = eval_zeta_deriv(s, params).value
        fd = (
            eval_zeta(ComplexPoint(s.sigma, s.t + h), params).value
            - eval_zeta(ComplexPoint(s.sigma, s.t - h), params).value
        ) / complex(0.0, 2.0 * h)
        worst = max(worst, abs(d - fd) / max(1.0, abs(d)))
    checks.append(
        CheckResult("derivative_fd", worst < 1e-6, f"max rel dev {worst:.3e}")
    )

    worst = 0.0
    for _ in range(50):
        t = rng.uniform(10.0, 2000.0)
        worst = max(
            worst,
            abs(abs(hardy_z(t, params)) - abs(eval_zeta(ComplexPoint(0.5, t), params).value)),
        )
    checks.append(
        CheckResult("hardy_z_identity", worst < 1e-9, f"max abs dev {worst:.3e}")
    )
    return checks


def _classification_check(
    config: RunConfig, zeros: list[CriticalZero], strips: list[Strip]
) -> CheckResult:
    """Classify every in-strip zero; exactly the primaries must exit right."""
    expected: dict[int, bool] = {}
    for s in strips:
        for i, z in enumerate(s.zeros):
            expected[z.ordinal] = (i + 1) == s.primary_index
    targets = [z for z in zeros if z.ordinal in expected]

    def classify(z: CriticalZero) -> bool:
        return (
            classify_zero_contour(
                z, config.sigma_right, config.eval_params, config.sigma_left, zeros
            )
            == "right_infinity"
        )

    if config.worker_count > 1:
        with ThreadPoolExecutor(max_workers=config.worker_count) as pool:
            got = list(pool.map(classify, targets))
    else:
        got = [classify(z) for z in targets]

    wrong = [z.ordinal for z, g in zip(targets, got) if expected[z.ordinal] != g]
    return CheckResult(
        "primary_agreement",
        not wrong,
        f"{len(targets) - len(wrong)}/{len(targets)} zeros agree"
        + (f"; mismatched ordinals {wrong[:10]}" if wrong else ""),
    )


def validate(config: RunConfig) -> list[CheckResult]:
    """Cross-module invariant suite; returns one result per check."""
    checks = _numeric_checks(config)

    try:
        zeros = stage_zeros(config)
        traces = stage_traces(config, zeros)
        strips = stage_strips(config, zeros, traces)
    except ZetaError as exc:
        checks.append(
            CheckResult("pipeline_stages", False, f"{type(exc).__name__}: {exc}")
        )
        return checks
    checks.append(
        CheckResult(
            "pipeline_stages",
            True,
            f"{len(zeros)} zeros, {len(traces)} traces, {len(strips)} strips",
        )
    )

    t_lo, t_hi = scan_range(config)
    count = verify_count(zeros, t_lo, t_hi, config.eval_params)
    checks.append(
        CheckResult(
            "zero_count",
            count.passed,
            f"found {count.found}, expected {count.expected:.3f}",
        )
    )

    tiled = all(
        strips[i].top_t == strips[i + 1].bottom_t for i in range(len(strips) - 1)
    )
    in_strips = sum(len(s.zeros) for s in strips)
    span = [z for z in zeros if strips[0].bottom_t < z.t < strips[-1].top_t]
    checks.append(
        CheckResult(
            "tiling",
            tiled and in_strips == len(span),
            f"shared boundaries: {tiled}; {in_strips} strip zeros vs "
            f"{len(span)} zeros in span",
        )
    )

    per_strip_ok = True
    detail = ""
    try:
        from .zeros import _smooth_count

        for s in strips:
            diff = _smooth_count(s.top_t, config.eval_params) - _smooth_count(
                s.bottom_t, config.eval_params
            )
            if len(s.zeros) != round(diff):
                per_strip_ok = False
                detail = (
                    f"strip {s.m}: {len(s.zeros)} zeros vs formula {diff:.3f}"
                )
                break
    except ZetaError as exc:
        per_strip_ok = False
        detail = f"{type(exc).__name__}: {exc}"
    checks.append(
        CheckResult(
            "per_strip_count", per_strip_ok, detail or "all strips match the formula"
        )
    )

    try:
        checks.append(_classification_check(config, zeros, strips))
    except ZetaError as exc:
        checks.append(
            CheckResult("primary_agreement", False, f"{type(exc).__name__}: {exc}")
        )
    return checks
