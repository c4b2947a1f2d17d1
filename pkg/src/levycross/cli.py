"""Batch command-line surface.

Subcommands:

* ``ingest``      tick/daily CSV -> deduplicated log-return series
* ``fit``         returns (or ticks) -> stable MLE + K-S test JSON
* ``trajectory``  returns -> per-level fit sweep CSV
* ``crossover``   returns -> sweep + crossover detection JSON
* ``acf``         returns -> autocorrelation CSVs (plain and absolute)
* ``simulate``    no input -> synthetic stable/truncated series (and,
  optionally, a synthetic tick stream built on top of it)
* ``report``      ticks -> the whole pipeline in one run: returns,
  sweep table, crossover, ACF, figures

Every run writes its artifacts plus a ``run.json`` manifest (config
echo, package version, seed, wall time).  All artifacts except the
manifest are byte-deterministic for a fixed seed and input; the
manifest records wall time and is not.

Randomness derivation: stage ``k`` of a run uses
``numpy.random.default_rng(SeedSequence([seed, k]))`` where stage 1 is
the simulation draw, stage 2 the synthetic tick dressing, stage 3 the
bootstrap p-value.  This makes every stage independently reproducible.

On failure the process exits 1 after printing a one-line JSON error
report (stage, error type, message, offending line when known) to
stderr.  Statistical outcomes, such as a K-S rejection or an undetected
crossover, are recorded in the artifacts and exit 0.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .autocorr import abs_acf, acf, persistence_time
from .crossover import (
    DEFAULT_CROSSOVER_LEVELS,
    AlphaTrajectory,
    CrossoverConfig,
    alpha_trajectory,
    detect_crossover,
    kurtosis_trajectory,
)
from .errors import InvalidParameterError, LevycrossError, NoCrossoverError
from .fitting import FitResult, fit_and_test, mc_p_value
from .io import (
    read_returns_csv,
    read_tick_csv,
    write_returns_csv,
    write_series_meta,
    write_tick_csv,
)
from .returns import (
    TRADING_DAY_SECONDS,
    ReturnSeries,
    dedup_ticks,
    log_returns,
    series_stats,
)
from .stable import StableParams, sample as stable_sample
from .synth import ticks_from_returns
from .tlf import hard_truncate

__all__ = ["RunConfig", "run", "main"]

log = logging.getLogger(__name__)

_STAGE_DRAW = 1
_STAGE_TICKS = 2
_STAGE_BOOTSTRAP = 3


@dataclass
class RunConfig:
    """Parsed invocation; one instance fully determines a run."""

    command: str
    output_path: str
    input_path: str | None = None
    seed: int = 0
    levels: tuple | None = None
    significance: float = 0.05
    trading_day_seconds: float = TRADING_DAY_SECONDS
    alpha_threshold: float = 1.99
    kurtosis_fraction: float = 0.05
    max_lag: int = 100
    on_bad_row: str = "fail"
    mc_pvalue: int = 0
    figures: bool = True
    # simulate-only knobs
    alpha: float = 1.4
    beta: float = 0.0
    gamma: float = 1.0
    delta: float = 0.0
    length: int = 100000
    n_std: float = math.inf
    iterate_cutoff: bool = False
    ticks: bool = False
    repeat_fraction: float = 0.73
    tick_seconds: float = 5.2
    start_value: float = 1000.0

    def __post_init__(self) -> None:
        if not 0.0 < self.significance < 1.0:
            raise InvalidParameterError(f"significance must lie in (0, 1), got {self.significance}")


def _stage_rng(seed: int, stage: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(stage)]))


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, (np.floating, np.integer)):
        return _jsonable(x.item())
    return x


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _load_returns(cfg: RunConfig) -> ReturnSeries:
    """Accept either a returns CSV (header ``value``, optional sidecar
    ``series.json`` next to it) or a tick/daily CSV, which is run
    through dedup + log-returns first."""
    if cfg.input_path is None:
        raise LevycrossError(f"{cfg.command} requires --input")
    path = Path(cfg.input_path)
    with path.open() as fh:
        first = fh.readline().strip().lower()
    if first.startswith("value"):
        sidecar = path.parent / "series.json"
        return read_returns_csv(
            path,
            meta_path=sidecar if sidecar.exists() else None,
            on_bad_row=cfg.on_bad_row,
        )
    ticks = read_tick_csv(path, on_bad_row=cfg.on_bad_row)
    return log_returns(dedup_ticks(ticks))


def _fit_row(lvl: int, fit: FitResult, kurt: float | None, significance: float) -> list:
    p = fit.params
    row = [
        str(lvl),
        repr(p.alpha),
        repr(p.beta),
        repr(p.gamma),
        repr(p.delta),
        repr(fit.ks_statistic),
        repr(fit.p_value),
        "true" if fit.p_value < significance else "false",
    ]
    if kurt is not None:
        row.append(repr(kurt))
    return row


def _write_trajectory_csv(
    path: Path,
    traj: AlphaTrajectory,
    kurt_by_level: dict,
    significance: float,
    *,
    with_kurtosis: bool,
    raw_level_as_zero: bool = False,
) -> None:
    header = "n_conv,alpha,beta,gamma,delta,ks,p,reject"
    if with_kurtosis:
        header += ",kurtosis"
    lines = [header]
    for lvl, fit in traj.points:
        kurt = kurt_by_level.get(lvl) if with_kurtosis else None
        row = _fit_row(lvl, fit, kurt, significance)
        if raw_level_as_zero and lvl == 1:
            row[0] = "0"
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n")


def _write_acf_csv(path: Path, result) -> None:
    lines = ["lag,coefficient,band"]
    for lag, coef in zip(result.lags, result.coefficients):
        lines.append(f"{int(lag)},{repr(float(coef))},{repr(float(result.band))}")
    path.write_text("\n".join(lines) + "\n")


def _fit_payload(fit: FitResult, significance: float) -> dict:
    return {
        "alpha": fit.params.alpha,
        "beta": fit.params.beta,
        "gamma": fit.params.gamma,
        "delta": fit.params.delta,
        "ks_statistic": fit.ks_statistic,
        "p_value": fit.p_value,
        "reject": bool(fit.p_value < significance),
        "significance": significance,
        "sample_size": fit.sample_size,
        "n_conv": fit.n_conv,
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_ingest(cfg: RunConfig, out: Path) -> list:
    series = _load_returns(cfg)
    write_returns_csv(out / "returns.csv", series)
    write_series_meta(out / "series.json", series)
    return ["returns.csv", "series.json"]


def _cmd_fit(cfg: RunConfig, out: Path) -> list:
    series = _load_returns(cfg)
    fit = fit_and_test(series.values, n_conv=series.n_conv)
    payload = _fit_payload(fit, cfg.significance)
    if cfg.mc_pvalue > 0:
        payload["mc_p_value"] = mc_p_value(
            series.values,
            fit.params,
            n_replicates=cfg.mc_pvalue,
            seed=_stage_rng(cfg.seed, _STAGE_BOOTSTRAP),
        )
        payload["mc_replicates"] = cfg.mc_pvalue
    _write_json(out / "fit.json", payload)
    return ["fit.json"]


def _sweep(cfg: RunConfig, series: ReturnSeries):
    levels = cfg.levels if cfg.levels else DEFAULT_CROSSOVER_LEVELS
    traj = alpha_trajectory(series, levels)
    kurt = kurtosis_trajectory(series, levels)
    return traj, dict(kurt), kurt


def _cmd_trajectory(cfg: RunConfig, out: Path) -> list:
    series = _load_returns(cfg)
    traj, kurt_by_level, _ = _sweep(cfg, series)
    _write_trajectory_csv(
        out / "trajectory.csv", traj, kurt_by_level, cfg.significance, with_kurtosis=True
    )
    return ["trajectory.csv"]


def _crossover_payload(cfg: RunConfig, traj, kurt_points) -> dict:
    config = CrossoverConfig(
        alpha_threshold=cfg.alpha_threshold,
        kurtosis_fraction=cfg.kurtosis_fraction,
        trading_day_seconds=cfg.trading_day_seconds,
    )
    base = {
        "alpha_threshold": cfg.alpha_threshold,
        "kurtosis_fraction": cfg.kurtosis_fraction,
        "trading_day_seconds": cfg.trading_day_seconds,
        "mean_dt": _jsonable(traj.mean_dt),
        "kurtosis_points": [[l, _jsonable(k)] for l, k in kurt_points],
    }
    try:
        report = detect_crossover(traj, kurt_points, config)
    except NoCrossoverError as err:
        base.update({"n_c": None, "reason": str(err)})
        return base
    base.update(
        {
            "n_c": report.n_c,
            "crossover_seconds": _jsonable(report.crossover_seconds),
            "crossover_trading_days": _jsonable(report.crossover_trading_days),
            "criterion": report.criterion,
        }
    )
    return base


def _cmd_crossover(cfg: RunConfig, out: Path) -> list:
    series = _load_returns(cfg)
    traj, kurt_by_level, kurt_points = _sweep(cfg, series)
    _write_trajectory_csv(
        out / "trajectory.csv", traj, kurt_by_level, cfg.significance, with_kurtosis=True
    )
    _write_json(out / "crossover.json", _crossover_payload(cfg, traj, kurt_points))
    return ["trajectory.csv", "crossover.json"]


def _cmd_acf(cfg: RunConfig, out: Path) -> list:
    series = _load_returns(cfg)
    max_lag = min(cfg.max_lag, len(series) - 1)
    _write_acf_csv(out / "acf.csv", acf(series, max_lag))
    _write_acf_csv(out / "acf_abs.csv", abs_acf(series, max_lag))
    return ["acf.csv", "acf_abs.csv"]


def _cmd_simulate(cfg: RunConfig, out: Path) -> list:
    params = StableParams(alpha=cfg.alpha, beta=cfg.beta, gamma=cfg.gamma, delta=cfg.delta)
    draw = stable_sample(params, cfg.length, _stage_rng(cfg.seed, _STAGE_DRAW))
    if not math.isinf(cfg.n_std):
        draw = hard_truncate(draw, cfg.n_std, iterate=cfg.iterate_cutoff)
    series = ReturnSeries(values=draw, n_conv=1)
    artifacts = ["returns.csv", "series.json"]
    if cfg.ticks:
        stream = ticks_from_returns(
            series.values,
            repeat_fraction=cfg.repeat_fraction,
            mean_tick_seconds=cfg.tick_seconds,
            start_value=cfg.start_value,
            seed=_stage_rng(cfg.seed, _STAGE_TICKS),
        )
        write_tick_csv(out / "ticks.csv", stream)
        series = log_returns(dedup_ticks(stream))
        artifacts.append("ticks.csv")
    write_returns_csv(out / "returns.csv", series)
    write_series_meta(out / "series.json", series)
    return artifacts


def _cmd_report(cfg: RunConfig, out: Path) -> list:
    series = _load_returns(cfg)
    stats = series_stats(series)
    traj, kurt_by_level, kurt_points = _sweep(cfg, series)

    write_returns_csv(out / "returns.csv", series)
    write_series_meta(out / "series.json", series)
    _write_trajectory_csv(
        out / "trajectory.csv", traj, kurt_by_level, cfg.significance, with_kurtosis=True
    )
    _write_trajectory_csv(
        out / "table.csv", traj, kurt_by_level, cfg.significance,
        with_kurtosis=False, raw_level_as_zero=True,
    )
    crossover_payload = _crossover_payload(cfg, traj, kurt_points)
    _write_json(out / "crossover.json", crossover_payload)

    max_lag = min(cfg.max_lag, len(series) - 1)
    acf_res = acf(series, max_lag)
    abs_res = abs_acf(series, max_lag)
    _write_acf_csv(out / "acf.csv", acf_res)
    _write_acf_csv(out / "acf_abs.csv", abs_res)

    dt = series.mean_dt
    _write_json(
        out / "stats.json",
        {
            "count": stats.count,
            "mean": stats.mean,
            "variance": stats.variance,
            "excess_kurtosis": stats.excess_kurtosis,
            "mean_dt": _jsonable(dt),
            "persistence_seconds": _jsonable(persistence_time(acf_res, dt)) if dt else None,
            "abs_persistence_seconds": _jsonable(persistence_time(abs_res, dt)) if dt else None,
        },
    )

    artifacts = [
        "returns.csv", "series.json", "trajectory.csv", "table.csv",
        "crossover.json", "acf.csv", "acf_abs.csv", "stats.json",
    ]
    if cfg.figures:
        from .figures import (
            fig_acf,
            fig_alpha_trajectory,
            fig_distribution,
            fig_kurtosis,
            save_figure,
        )

        figdir = out / "figures"
        figdir.mkdir(exist_ok=True)
        save_figure(
            fig_alpha_trajectory(traj, alpha_threshold=cfg.alpha_threshold),
            figdir / "alpha_trajectory.png",
        )
        save_figure(
            fig_kurtosis(kurt_points, n_c=crossover_payload.get("n_c")),
            figdir / "kurtosis.png",
        )
        save_figure(fig_acf(acf_res, title="returns"), figdir / "acf.png")
        save_figure(fig_acf(abs_res, title="absolute returns"), figdir / "acf_abs.png")
        level1 = next((fit for lvl, fit in traj.points if lvl == 1), traj.points[0][1])
        save_figure(
            fig_distribution(series.values, level1.params),
            figdir / "distribution.png",
        )
        artifacts += [
            "figures/alpha_trajectory.png", "figures/kurtosis.png",
            "figures/acf.png", "figures/acf_abs.png", "figures/distribution.png",
        ]
    return artifacts


_COMMANDS = {
    "ingest": _cmd_ingest,
    "fit": _cmd_fit,
    "trajectory": _cmd_trajectory,
    "crossover": _cmd_crossover,
    "acf": _cmd_acf,
    "simulate": _cmd_simulate,
    "report": _cmd_report,
}


def run(cfg: RunConfig) -> list:
    """Execute one command; returns the artifact names written."""
    t0 = time.monotonic()
    out = Path(cfg.output_path)
    out.mkdir(parents=True, exist_ok=True)
    artifacts = _COMMANDS[cfg.command](cfg, out)
    manifest = {
        "command": cfg.command,
        "version": __version__,
        "seed": cfg.seed,
        "config": {k: _jsonable(v) for k, v in asdict(cfg).items()},
        "artifacts": sorted(artifacts),
        "wall_time_seconds": round(time.monotonic() - t0, 6),
    }
    _write_json(out / "run.json", manifest)
    return artifacts + ["run.json"]


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _levels_arg(text: str) -> tuple:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"levels must be integers: {err}") from None
    if not values or any(b <= a for a, b in zip(values, values[1:])):
        raise argparse.ArgumentTypeError("levels must be strictly increasing")
    return values


def _add_common(sub: argparse.ArgumentParser, *, needs_input: bool) -> None:
    if needs_input:
        sub.add_argument("--input", required=True, help="input CSV path")
    sub.add_argument("--output", required=True, help="output directory")
    sub.add_argument("--seed", type=int, default=0, help="base RNG seed")
    sub.add_argument(
        "--on-bad-row", choices=("fail", "skip"), default="fail",
        help="policy for malformed input rows",
    )
    sub.add_argument("--significance", type=float, default=0.05)
    sub.add_argument("--trading-day-seconds", type=float, default=TRADING_DAY_SECONDS)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levycross",
        description="Heavy-tailed return analysis: stable fits, truncated "
        "flights, aggregation sweeps, crossover detection, autocorrelation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("ingest", help="ticks/daily CSV to log-return series")
    _add_common(sub, needs_input=True)

    sub = subs.add_parser("fit", help="stable MLE + K-S test")
    _add_common(sub, needs_input=True)
    sub.add_argument(
        "--mc-pvalue", type=int, default=0, metavar="N",
        help="also compute a parametric-bootstrap p-value from N replicates",
    )

    sub = subs.add_parser("trajectory", help="per-level fit sweep")
    _add_common(sub, needs_input=True)
    sub.add_argument("--levels", type=_levels_arg, default=None)

    sub = subs.add_parser("crossover", help="sweep + crossover detection")
    _add_common(sub, needs_input=True)
    sub.add_argument("--levels", type=_levels_arg, default=None)
    sub.add_argument("--alpha-threshold", type=float, default=1.99)
    sub.add_argument("--kurtosis-fraction", type=float, default=0.05)

    sub = subs.add_parser("acf", help="autocorrelation of returns and |returns|")
    _add_common(sub, needs_input=True)
    sub.add_argument("--max-lag", type=int, default=100)

    sub = subs.add_parser("simulate", help="synthetic stable / truncated series")
    _add_common(sub, needs_input=False)
    sub.add_argument("--alpha", type=float, default=1.4)
    sub.add_argument("--beta", type=float, default=0.0)
    sub.add_argument("--gamma", type=float, default=1.0)
    sub.add_argument("--delta", type=float, default=0.0)
    sub.add_argument("--length", type=int, default=100000)
    sub.add_argument(
        "--n-std", type=float, default=math.inf,
        help="hard-truncate at this many sample standard deviations (inf = none)",
    )
    sub.add_argument(
        "--iterate-cutoff", action="store_true",
        help="re-estimate the truncation scale on the survivors to its fixed point",
    )
    sub.add_argument(
        "--ticks", action="store_true",
        help="also dress the series as a tick stream (ticks.csv)",
    )
    sub.add_argument("--repeat-fraction", type=float, default=0.73)
    sub.add_argument("--tick-seconds", type=float, default=5.2)
    sub.add_argument("--start-value", type=float, default=1000.0)

    sub = subs.add_parser("report", help="full pipeline: sweep, crossover, ACF, figures")
    _add_common(sub, needs_input=True)
    sub.add_argument("--levels", type=_levels_arg, default=None)
    sub.add_argument("--alpha-threshold", type=float, default=1.99)
    sub.add_argument("--kurtosis-fraction", type=float, default=0.05)
    sub.add_argument("--max-lag", type=int, default=100)
    sub.add_argument("--no-figures", dest="figures", action="store_false")
    return parser


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    known = {f for f in RunConfig.__dataclass_fields__}
    kwargs = {}
    for key, value in vars(ns).items():
        if key == "input":
            kwargs["input_path"] = value
        elif key == "output":
            kwargs["output_path"] = value
        elif key in known:
            kwargs[key] = value
    return RunConfig(**kwargs)


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    ns = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(ns)
        run(cfg)
    except (LevycrossError, OSError) as err:
        payload = {
            "error": {
                "stage": getattr(ns, "command", "config"),
                "type": type(err).__name__,
                "message": str(err),
            }
        }
        line = getattr(err, "line_number", None)
        if line is not None:
            payload["error"]["line"] = line
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
