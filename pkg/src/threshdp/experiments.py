"""Experiment harnesses: consecutive-count deltas and runtime records.

The delta study asks how the optimal objective moves as the threshold
count grows by one, aggregated over a corpus of histograms. The runtime
study records per-count and cumulative wall-clock time for the fixed-count
solver next to the single free-count solve, which is the comparison that
motivates discovering the count instead of sweeping it.

The built-in corpus is synthetic: mixtures of one to five discrete
Gaussian bumps over a small uniform noise floor, drawn from a fixed seed
so corpus-dependent results are reproducible.
"""

from __future__ import annotations

import concurrent.futures
import os
import platform
import statistics
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import _backend
from .fixed_n import solve_fixed_n, sweep_optimal_values
from .histogram import GrayHistogram, histogram_from_counts
from .met_dp import solve_free
from .objectives import BoundaryMode, ObjectiveKind, build_score_matrix

DEFAULT_SEED = 20250819
DEFAULT_CORPUS_SIZE = 50

_THREADS_ENV = "THRESHOLD_DP_THREADS"


def _max_workers() -> int:
    raw = os.environ.get(_THREADS_ENV, "1")
    try:
        v = int(raw)
    except ValueError:
        raise ValueError(f"{_THREADS_ENV} must be an integer, got {raw!r}") from None
    return max(1, v)


def make_corpus(
    count: int = DEFAULT_CORPUS_SIZE,
    levels: int = 256,
    seed: int = DEFAULT_SEED,
) -> list:
    """Synthetic histogram corpus: Gaussian mixtures plus a noise floor.

    Every level gets at least one count, so any threshold count up to
    levels-2 stays feasible for every objective.
    """
    rng = np.random.default_rng(seed)
    x = np.arange(levels, dtype=np.float64)
    corpus = []
    for _ in range(count):
        n_modes = int(rng.integers(1, 6))
        weights = rng.dirichlet(np.ones(n_modes))
        centers = rng.uniform(0.08 * levels, 0.92 * levels, n_modes)
        sigmas = rng.uniform(levels / 64.0, levels / 10.0, n_modes)
        pdf = np.zeros(levels)
        for w, c, s in zip(weights, centers, sigmas):
            pdf += w * np.exp(-0.5 * ((x - c) / s) ** 2) / s
        pdf /= pdf.sum()
        total = int(rng.integers(30_000, 60_001))
        counts = np.rint(pdf * total).astype(np.int64)
        counts += rng.integers(1, 4, levels)
        corpus.append(histogram_from_counts(counts))
    return corpus


@dataclass(frozen=True)
class DeltaRow:
    """Stats of objective deltas for one method at one count transition."""

    method: str
    mode: str
    n_from: int
    n_to: int
    min: float
    max: float
    mean: float
    std: float


@dataclass(frozen=True)
class DeltaSummary:
    """All delta rows plus per-item solver failures (recorded, not fatal)."""

    rows: tuple
    failures: tuple


def _delta_specs(kinds, mode):
    specs = [(ObjectiveKind(k), mode) for k in kinds]
    if ObjectiveKind.KITTLER in (s[0] for s in specs) and mode is not BoundaryMode.OVERLAPPING:
        specs.append((ObjectiveKind.KITTLER, BoundaryMode.OVERLAPPING))
    return specs


def run_delta_study(corpus, kinds, mode: BoundaryMode, n_max: int) -> DeltaSummary:
    """Aggregate objective deltas between consecutive counts over a corpus.

    kinds is an iterable of ObjectiveKind; every kind is solved with the
    given boundary mode, and KITTLER additionally with overlapping
    boundaries when the base mode is disjoint, since the sign behavior of
    its deltas under both conventions is the point of the study.
    """
    corpus = list(corpus)
    if not corpus:
        raise ValueError("corpus is empty")
    mode = BoundaryMode(mode)
    specs = _delta_specs(kinds, mode)

    def values_for(item):
        idx, h = item
        out = {}
        errs = []
        for kind, m in specs:
            try:
                swept = sweep_optimal_values(h, kind, m, n_max)
                out[(kind, m)] = [v for _, v, _ in swept]
            except Exception as e:  # recorded per item, study continues
                errs.append((idx, kind.value, m.value, str(e)))
        return out, errs

    workers = _max_workers()
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(values_for, enumerate(corpus)))
    else:
        results = [values_for(item) for item in enumerate(corpus)]

    failures = tuple(err for _, errs in results for err in errs)
    rows = []
    for kind, m in specs:
        series = [vals[(kind, m)] for vals, _ in results if (kind, m) in vals]
        if not series:
            raise ValueError(f"every corpus item failed for {kind.value}/{m.value}")
        for n in range(1, n_max):
            deltas = [s[n] - s[n - 1] for s in series]
            rows.append(
                DeltaRow(
                    method=kind.value,
                    mode=m.value,
                    n_from=n,
                    n_to=n + 1,
                    min=min(deltas),
                    max=max(deltas),
                    mean=statistics.fmean(deltas),
                    std=float(np.std(deltas)),
                )
            )
    return DeltaSummary(rows=tuple(rows), failures=failures)


def write_delta_csv(path, summary: DeltaSummary) -> None:
    lines = ["method,mode,transition,min,max,avg,std"]
    for r in summary.rows:
        lines.append(
            f"{r.method},{r.mode},{r.n_from}->{r.n_to},{r.min!r},{r.max!r},{r.mean!r},{r.std!r}"
        )
    with open(path, "w", encoding="ascii") as f:
        f.write("\n".join(lines) + "\n")


def measure_seconds(fn, reps: int = 5, min_time: float = 0.005) -> list:
    """Per-call wall-clock samples, timeit style.

    Calibrates an inner repeat count until one sample spans min_time, then
    takes reps samples of (elapsed / inner count). Robust for calls much
    shorter than the clock's useful resolution.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    number = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(number):
            fn()
        elapsed = time.perf_counter() - t0
        if elapsed >= min_time or number >= 1 << 20:
            break
        number *= 2
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter()
        for _ in range(number):
            fn()
        samples.append((time.perf_counter() - t0) / number)
    return samples


@dataclass(frozen=True)
class RuntimeRecord:
    """Median per-count and cumulative solver times, plus the free-count time."""

    levels: int
    n_max: int
    reps: int
    machine_note: str
    per_n: dict
    cumulative: dict
    per_n_std: dict
    met_dp_median: float
    met_dp_std: float


def machine_note() -> str:
    return f"{platform.platform()}; Python {sys.version.split()[0]}; backend {_backend.BACKEND}"


def run_runtime_study(h: GrayHistogram, n_max: int, reps: int = 5, backend=None) -> RuntimeRecord:
    """Time fixed-count solves for n = 1..n_max against one free-count solve.

    Score matrices are built outside the clock: the study is about how the
    solvers scale, and the matrix build is a shared quadratic cost. Runs
    strictly sequentially so the samples mean something.
    """
    if reps < 3:
        raise ValueError("reps must be >= 3")
    if not 1 <= n_max <= h.levels - 2:
        raise ValueError(f"n_max must be in [1, {h.levels - 2}]")
    fixed = {
        "otsu": build_score_matrix(h, ObjectiveKind.OTSU, BoundaryMode.DISJOINT),
        "kapur": build_score_matrix(h, ObjectiveKind.KAPUR, BoundaryMode.DISJOINT),
        "kittler": build_score_matrix(h, ObjectiveKind.KITTLER, BoundaryMode.DISJOINT),
    }
    met_sm = build_score_matrix(h, ObjectiveKind.MET, BoundaryMode.OVERLAPPING)

    per_n = {}
    per_n_std = {}
    cumulative = {}
    for name, sm in fixed.items():
        med = []
        std = []
        for n in range(1, n_max + 1):
            samples = measure_seconds(lambda: solve_fixed_n(sm, n, backend=backend), reps)
            med.append(statistics.median(samples))
            std.append(float(np.std(samples)))
        per_n[name] = med
        per_n_std[name] = std
        cumulative[name] = [float(c) for c in np.cumsum(med)]
    met_samples = measure_seconds(lambda: solve_free(met_sm, backend=backend), reps)
    return RuntimeRecord(
        levels=h.levels,
        n_max=n_max,
        reps=reps,
        machine_note=machine_note(),
        per_n=per_n,
        cumulative=cumulative,
        per_n_std=per_n_std,
        met_dp_median=statistics.median(met_samples),
        met_dp_std=float(np.std(met_samples)),
    )


def write_runtime_csv(path, record: RuntimeRecord) -> None:
    """Rows for the cumulative-runtime plot: n, method, median_cum_seconds, std.

    The free-count solver appears as a flat met-dp line (one solve covers
    every count), which is exactly the comparison the plot makes.
    """
    lines = [f"# {record.machine_note}", "n,method,median_cum_seconds,std"]
    for name, cum in record.cumulative.items():
        for i, v in enumerate(cum):
            lines.append(f"{i + 1},{name},{v!r},{record.per_n_std[name][i]!r}")
    for n in range(1, record.n_max + 1):
        lines.append(f"{n},met-dp,{record.met_dp_median!r},{record.met_dp_std!r}")
    with open(path, "w", encoding="ascii") as f:
        f.write("\n".join(lines) + "\n")


def free_solve_seconds(h: GrayHistogram, reps: int = 5, backend=None) -> float:
    """Median seconds for one free-count solve on h (matrix build excluded)."""
    sm = build_score_matrix(h, ObjectiveKind.MET, BoundaryMode.OVERLAPPING)
    return statistics.median(measure_seconds(lambda: solve_free(sm, backend=backend), reps))
