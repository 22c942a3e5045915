"""Monte Carlo harness: size/power grids, null calibration, dataset runs.

Replication seeds are pure functions of (master_seed, cell_index,
replication_index): the stream for replication k of cell c is
SeedSpec(master_seed, c * reps + k).  Workers only change how tasks are
scheduled, never which stream a replication uses, and aggregation is an
ordered reduce over replication indices, so reports are bit-identical
for any worker count.
"""

from __future__ import annotations

import itertools
import json
import math
import multiprocessing
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy import stats as _scipy_stats

from .census import census
from .census import warmup as _census_warmup
from .errors import InputError
from .graph import ParseReport, load_edge_list
from .inference import (TestReport, check_regularity, lambda_exact,
                        normal_upper_quantile, t_from_census,
                        theoretical_quantities)
from .models import (ModelParams, SeedSpec, WeightVector, sample_null,
                     sample_planted, weights_constant, weights_linear)

WORKERS_ENV_VAR = "CYCLETEST_WORKERS"


def default_workers() -> int:
    """Worker count from $CYCLETEST_WORKERS, else 1."""
    raw = os.environ.get(WORKERS_ENV_VAR, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@lru_cache(maxsize=8)
def resolve_weights(spec: str, n: int) -> WeightVector:
    """Materialize a weight spec: "linear", "constant:<c>", or a file path."""
    if spec == "linear":
        return weights_linear(n)
    if spec.startswith("constant:"):
        return weights_constant(n, float(spec.split(":", 1)[1]))
    if spec == "constant":
        return weights_constant(n, 1.0)
    path = Path(spec)
    if path.exists():
        w = WeightVector.from_file(path)
        if len(w) != n:
            raise InputError(f"weight file has {len(w)} entries, n={n}")
        return w
    raise InputError(f"unknown weight spec {spec!r} (not 'linear', "
                     f"'constant:<c>', or an existing file)")


@dataclass(frozen=True)
class SimulationConfig:
    """Design of one Monte Carlo experiment.

    rate_grid holds per-n rate pairs (a/n, b/n) as in the size/power
    tables; r_grid the community membership probabilities.  The cell
    list is the cartesian product in that order.
    """

    n: int
    weights: str
    rate_grid: tuple[tuple[float, float], ...]
    r_grid: tuple[float, ...]
    reps: int
    alpha: float = 0.05
    master_seed: int = 0
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "rate_grid",
                           tuple((float(a), float(b)) for a, b in self.rate_grid))
        object.__setattr__(self, "r_grid", tuple(float(r) for r in self.r_grid))

    def validate(self) -> WeightVector:
        """Check the whole grid before any sampling; returns the weights."""
        if self.reps < 1:
            raise InputError(f"reps must be >= 1, got {self.reps}")
        if not (0.0 < self.alpha < 1.0):
            raise InputError(f"alpha must be in (0, 1), got {self.alpha}")
        if not self.rate_grid or not self.r_grid:
            raise InputError("rate_grid and r_grid must be nonempty")
        w = resolve_weights(self.weights, self.n)
        for (a_on, b_on) in self.rate_grid:
            for r in self.r_grid:
                ModelParams.from_rates(self.n, a_on, b_on, r).validate_with(w)
        return w

    def cells(self) -> list[tuple[float, float, float]]:
        return [(a, b, r) for (a, b), r in
                itertools.product(self.rate_grid, self.r_grid)]

    def to_dict(self) -> dict:
        # workers is an execution detail, deliberately not serialized:
        # reports must be bit-identical for any worker count.
        return {
            "n": self.n,
            "weights": self.weights,
            "rate_grid": [list(p) for p in self.rate_grid],
            "r_grid": list(self.r_grid),
            "reps": self.reps,
            "alpha": self.alpha,
            "master_seed": self.master_seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SimulationConfig":
        try:
            return cls(
                n=int(d["n"]),
                weights=str(d["weights"]),
                rate_grid=tuple((float(a), float(b)) for a, b in d["rate_grid"]),
                r_grid=tuple(float(r) for r in d["r_grid"]),
                reps=int(d["reps"]),
                alpha=float(d.get("alpha", 0.05)),
                master_seed=int(d.get("master_seed", 0)),
                workers=int(d.get("workers", 1)),
            )
        except KeyError as e:
            raise InputError(f"config missing field {e.args[0]!r}") from None

    @classmethod
    def from_json_file(cls, path: str | Path) -> "SimulationConfig":
        try:
            return cls.from_dict(json.loads(Path(path).read_text()))
        except json.JSONDecodeError as e:
            raise InputError(f"config is not valid JSON: {e}") from None


# --- worker tasks (module-level so they pickle) -----------------------------


def _planted_t(task) -> float | None:
    n, weights, a_on, b_on, r, master_seed, flat_index = task
    w = resolve_weights(weights, n)
    params = ModelParams.from_rates(n, a_on, b_on, r)
    g, _z = sample_planted(params, w, SeedSpec(master_seed, flat_index))
    rep = t_from_census(census(g))
    return rep.t_n  # None when degenerate


def _null_t(task) -> float | None:
    n, weights, p0, master_seed, flat_index = task
    w = resolve_weights(weights, n)
    g = sample_null(n, p0, w, SeedSpec(master_seed, flat_index))
    rep = t_from_census(census(g))
    return rep.t_n


def _map_tasks(fn, tasks, workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    _census_warmup()  # compile once; forked workers inherit the kernels
    ctx = multiprocessing.get_context("fork")
    chunk = max(1, len(tasks) // (workers * 8))
    with ctx.Pool(workers) as pool:
        return list(pool.imap(fn, tasks, chunksize=chunk))


# --- size / power -----------------------------------------------------------


@dataclass(frozen=True)
class PowerRow:
    """One grid cell: parameters, per-replication outcomes, aggregates.

    t_values keeps every replication's statistic (None marks a
    degenerate replication), so any aggregate can be recomputed from
    the raw log.  Degenerate replications are excluded from the
    rejection-fraction denominator and from the moments.
    """

    a_over_n: float
    b_over_n: float
    r: float
    reps: int
    degenerate: int
    rejections: int
    rejection_fraction: float | None
    rejection_se: float | None
    t_mean: float | None
    t_var: float | None
    t_values: tuple[float | None, ...] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "a_over_n": self.a_over_n,
            "b_over_n": self.b_over_n,
            "r": self.r,
            "reps": self.reps,
            "degenerate": self.degenerate,
            "rejections": self.rejections,
            "rejection_fraction": self.rejection_fraction,
            "rejection_se": self.rejection_se,
            "t_mean": self.t_mean,
            "t_var": self.t_var,
            "t_values": list(self.t_values),
        }


@dataclass(frozen=True)
class PowerTable:
    """Rejection fractions over the (a/n, b/n) x r grid."""

    config: SimulationConfig
    rows: tuple[PowerRow, ...]

    def row(self, a_over_n: float, b_over_n: float, r: float) -> PowerRow:
        for row in self.rows:
            if (row.a_over_n, row.b_over_n, row.r) == (a_over_n, b_over_n, r):
                return row
        raise KeyError((a_over_n, b_over_n, r))

    def to_dict(self) -> dict:
        return {"config": self.config.to_dict(),
                "rows": [r.to_dict() for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        lines = ["a_over_n,b_over_n,r,reps,degenerate,rejections,"
                 "rejection_fraction,rejection_se,t_mean,t_var"]
        for row in self.rows:
            fields = [row.a_over_n, row.b_over_n, row.r, row.reps,
                      row.degenerate, row.rejections, row.rejection_fraction,
                      row.rejection_se, row.t_mean, row.t_var]
            lines.append(",".join("" if f is None else repr(f) if isinstance(f, float) else str(f)
                                  for f in fields))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        head = (f"{'a/n':>8} {'b/n':>8} {'r':>6} {'reject':>8} {'se':>7} "
                f"{'t_mean':>8} {'t_var':>8} {'degen':>6}")
        out = [head, "-" * len(head)]
        for row in self.rows:
            frac = "   --" if row.rejection_fraction is None else f"{row.rejection_fraction:8.3f}"
            se = "    --" if row.rejection_se is None else f"{row.rejection_se:7.3f}"
            tm = "     --" if row.t_mean is None else f"{row.t_mean:8.3f}"
            tv = "     --" if row.t_var is None else f"{row.t_var:8.3f}"
            out.append(f"{row.a_over_n:8.3f} {row.b_over_n:8.3f} {row.r:6.2f} "
                       f"{frac} {se} {tm} {tv} {row.degenerate:6d}")
        return "\n".join(out) + "\n"


def _aggregate_row(a_on: float, b_on: float, r: float, reps: int,
                   t_values: list[float | None], alpha: float) -> PowerRow:
    z = normal_upper_quantile(alpha / 2.0)
    finite = [t for t in t_values if t is not None]
    degen = reps - len(finite)
    rejections = sum(1 for t in finite if abs(t) > z)
    if finite:
        frac = rejections / len(finite)
        se = math.sqrt(frac * (1.0 - frac) / len(finite))
        t_mean = float(np.mean(finite))
        t_var = float(np.var(finite, ddof=1)) if len(finite) > 1 else None
    else:
        frac = se = t_mean = t_var = None
    return PowerRow(a_over_n=a_on, b_over_n=b_on, r=r, reps=reps,
                    degenerate=degen, rejections=rejections,
                    rejection_fraction=frac, rejection_se=se,
                    t_mean=t_mean, t_var=t_var, t_values=tuple(t_values))


def run_size_power(cfg: SimulationConfig) -> PowerTable:
    """Sample every grid cell reps times and aggregate rejection rates.

    Deterministic for a fixed master_seed regardless of worker count.
    """
    cfg.validate()
    cells = cfg.cells()
    tasks = [(cfg.n, cfg.weights, a_on, b_on, r, cfg.master_seed,
              ci * cfg.reps + k)
             for ci, (a_on, b_on, r) in enumerate(cells)
             for k in range(cfg.reps)]
    results = _map_tasks(_planted_t, tasks, cfg.workers)
    rows = []
    for ci, (a_on, b_on, r) in enumerate(cells):
        t_values = results[ci * cfg.reps:(ci + 1) * cfg.reps]
        rows.append(_aggregate_row(a_on, b_on, r, cfg.reps, t_values, cfg.alpha))
    return PowerTable(config=cfg, rows=tuple(rows))


# --- null calibration -------------------------------------------------------


@dataclass(frozen=True)
class CalibrationReport:
    """Distributional agreement of the statistic with N(0, 1) under the
    null; all statistics come from the same replication set, with
    degenerate replications counted but excluded from the moments."""

    n: int
    p0: float
    weights: str
    alpha: float
    master_seed: int
    reps: int
    degenerate: int
    mean: float
    variance: float
    skewness: float
    ks_distance: float
    ks_pvalue: float
    rejection_rate: float
    t_values: tuple[float | None, ...] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p0": self.p0,
            "weights": self.weights,
            "alpha": self.alpha,
            "master_seed": self.master_seed,
            "reps": self.reps,
            "degenerate": self.degenerate,
            "mean": self.mean,
            "variance": self.variance,
            "skewness": self.skewness,
            "ks_distance": self.ks_distance,
            "ks_pvalue": self.ks_pvalue,
            "rejection_rate": self.rejection_rate,
            "t_values": list(self.t_values),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        return (
            f"null calibration: n={self.n} p0={self.p0} weights={self.weights} "
            f"reps={self.reps} (degenerate {self.degenerate})\n"
            f"  mean      {self.mean: .4f}\n"
            f"  variance  {self.variance: .4f}\n"
            f"  skewness  {self.skewness: .4f}\n"
            f"  KS dist   {self.ks_distance: .4f} (p = {self.ks_pvalue:.4g})\n"
            f"  rejection rate at alpha={self.alpha}: {self.rejection_rate:.4f}\n"
        )


def run_null_calibration(cfg: SimulationConfig) -> CalibrationReport:
    """Sample the null model and compare the statistic against N(0, 1).

    The config must carry exactly one rate pair with a = b (any r is
    ignored: the null edge law does not involve r).
    """
    w = cfg.validate()
    if len(cfg.rate_grid) != 1:
        raise InputError("null calibration needs exactly one rate pair")
    a_on, b_on = cfg.rate_grid[0]
    if a_on != b_on:
        raise InputError(f"null calibration requires a = b, got ({a_on}, {b_on})")
    p0 = a_on
    tasks = [(cfg.n, cfg.weights, p0, cfg.master_seed, k) for k in range(cfg.reps)]
    results = _map_tasks(_null_t, tasks, cfg.workers)
    finite = np.array([t for t in results if t is not None], dtype=np.float64)
    degen = cfg.reps - len(finite)
    if len(finite) < 3:
        raise InputError("too few non-degenerate replications to calibrate")
    z = normal_upper_quantile(cfg.alpha / 2.0)
    ks = _scipy_stats.kstest(finite, "norm")
    return CalibrationReport(
        n=cfg.n, p0=p0, weights=cfg.weights, alpha=cfg.alpha,
        master_seed=cfg.master_seed, reps=cfg.reps, degenerate=int(degen),
        mean=float(np.mean(finite)),
        variance=float(np.var(finite, ddof=1)),
        skewness=float(_scipy_stats.skew(finite)),
        ks_distance=float(ks.statistic),
        ks_pvalue=float(ks.pvalue),
        rejection_rate=float(np.mean(np.abs(finite) > z)),
        t_values=tuple(results),
    )


# --- datasets and generation ------------------------------------------------


def run_dataset(path: str | Path, alpha: float = 0.05, *, fmt: str = "auto",
                n: int | None = None) -> tuple[TestReport, ParseReport]:
    """Load an edge-list/MatrixMarket file and run the test on it."""
    graph, parse_report = load_edge_list(path, fmt=fmt, n=n)
    return t_from_census(census(graph), alpha=alpha), parse_report


def generate(params: ModelParams, w: WeightVector, seed: SeedSpec,
             out: str | Path) -> tuple[Path, Path]:
    """Sample one planted graph and write it plus a sidecar description.

    The edge list goes to `out`; `out` + ".json" records the parameters,
    the seed, and the ground-truth membership vector z (marked inert
    when a = b).  Output bytes are a pure function of the inputs.
    """
    out = Path(out)
    g, z = sample_planted(params, w, seed)
    g.write_edge_list(out)
    sidecar = out.with_name(out.name + ".json")
    meta = {
        "n": params.n,
        "a": params.a,
        "b": params.b,
        "r": params.r,
        "a_over_n": params.p0,
        "b_over_n": params.b_over_n,
        "m": g.m,
        "master_seed": seed.master_seed,
        "replication_index": seed.replication_index,
        "z": [int(v) for v in z],
        "z_inert": params.a == params.b,
    }
    sidecar.write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n")
    return out, sidecar


def diagnose(params: ModelParams, w: WeightVector, *, t_low: float = 5.0,
             c1: float = 1.0, c2: float = 1.0,
             power_index_large: float = 5.0) -> dict:
    """Regularity report, closed-form quantities, and a community-size
    assessment (is the detectability index large?) for one setting."""
    reg = check_regularity(params.n, params.p0, w, t_low=t_low, c1=c1, c2=c2)
    theory = theoretical_quantities(params, w)
    wvals = w.values
    return {
        "regularity": reg.to_dict(),
        "theory": theory.to_dict(),
        "lambda_exact": lambda_exact(params, w),
        "community": {
            "expected_size": params.n * params.r,
            "power_index": theory.power_index,
            "power_index_large": theory.power_index >= power_index_large,
        },
        "homogeneous_weights": bool(np.all(wvals == wvals[0])),
    }
