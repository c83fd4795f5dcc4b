"""Command-line front end.

Subcommands:
  threshold  solve one histogram or image (fixed count or free count)
  example    print and self-check the built-in worked example
  sweep      consecutive-count delta study over a corpus, CSV out
  bench      runtime study (and optional backend comparison), CSV out

Exit codes: 0 success, 1 input error, 2 infeasible, 3 self-check mismatch.
"""

from __future__ import annotations

import argparse
import statistics
import sys
from pathlib import Path

from . import _backend, example, experiments, formats, metrics
from .fixed_n import solve_fixed_n
from .histogram import build_histogram
from .met_dp import fill_tables, solve_free
from .objectives import (
    BoundaryMode,
    InfeasibleError,
    ObjectiveKind,
    build_score_matrix,
)
from .quantize import apply_thresholds

_EXIT_OK = 0
_EXIT_INPUT = 1
_EXIT_INFEASIBLE = 2
_EXIT_SELFCHECK = 3

_METHODS = {
    "otsu": ObjectiveKind.OTSU,
    "kapur": ObjectiveKind.KAPUR,
    "kittler": ObjectiveKind.KITTLER,
    "met-dp": ObjectiveKind.MET,
}


def _load_histogram(args):
    """Histogram plus the source image (None when input was a histogram)."""
    if args.image is not None:
        img = formats.load_pgm(args.image)
        return build_histogram(img, 256), img
    path = Path(args.hist)
    if path.suffix.lower() == ".json":
        return formats.read_histogram_json(path), None
    return formats.read_histogram_csv(path), None


def cmd_threshold(args) -> int:
    kind = _METHODS[args.method]
    mode = BoundaryMode(args.mode) if args.mode else (
        BoundaryMode.OVERLAPPING if kind is ObjectiveKind.MET else BoundaryMode.DISJOINT
    )
    h, img = _load_histogram(args)
    sm = build_score_matrix(h, kind, mode)
    if kind is ObjectiveKind.MET:
        if args.n is not None:
            raise ValueError("met-dp discovers the threshold count; drop --n")
        ts = solve_free(sm)
    else:
        if args.n is None or args.n < 1:
            raise ValueError(f"--n >= 1 is required for method {args.method}")
        ts = solve_fixed_n(sm, args.n)

    regions = None
    report = None
    if img is not None:
        quant = apply_thresholds(img, ts, 256)
        regions = quant.region_map
        if args.quantized:
            formats.save_pgm(args.quantized, quant.pixels)
        if args.metrics:
            report = metrics.quality_report(img, quant.pixels)
    elif args.quantized or args.metrics:
        raise ValueError("--quantized and --metrics need an --image input")

    rec = formats.result_record(args.method, mode.value, ts, regions=regions, metrics=report)
    formats.write_result_json(args.out, rec)
    return _EXIT_OK


def cmd_example(args) -> int:
    mode = BoundaryMode(args.mode)
    h = example.synth19_histogram()
    sm = build_score_matrix(h, ObjectiveKind.MET, mode)
    tables = fill_tables(sm, keep_full_indices=True)

    print(f"histogram: {len(example.SYNTH19_COUNTS)} levels, counts {list(example.SYNTH19_COUNTS)}")
    if args.dump_q:
        Path(args.dump_q).write_text(example.format_q_csv(sm), encoding="ascii")
        print(f"score table written to {args.dump_q}")
    if args.dump_mem:
        Path(args.dump_mem).write_text(example.format_mem_csv(tables), encoding="ascii")
        print(f"DP table written to {args.dump_mem}")

    if mode is BoundaryMode.OVERLAPPING:
        print(f"mem[8][17]={tables.mem[8, 17]:.3f} split={int(tables.indices[8, 17])}")
    results = example.self_check(mode)
    root = next(r for r in results if r.label == "root")
    print(root.detail)
    failed = [r for r in results if not r.passed]
    for r in failed:
        print(f"FAIL {r.label}: {r.detail}", file=sys.stderr)
    print("PASS" if not failed else "FAIL")
    return _EXIT_OK if not failed else _EXIT_SELFCHECK


def _load_corpus(args):
    if args.corpus is not None:
        root = Path(args.corpus)
        if not root.is_dir():
            raise ValueError(f"--corpus {root} is not a directory")
        corpus = []
        for path in sorted(root.iterdir()):
            suffix = path.suffix.lower()
            if suffix == ".csv":
                corpus.append(formats.read_histogram_csv(path))
            elif suffix == ".json":
                corpus.append(formats.read_histogram_json(path))
            elif suffix == ".pgm":
                corpus.append(build_histogram(formats.load_pgm(path), 256))
        if not corpus:
            raise ValueError(f"no .csv/.json/.pgm histograms found in {root}")
        return corpus
    return experiments.make_corpus(count=args.count, levels=args.levels, seed=args.seed)


def cmd_sweep(args) -> int:
    kinds = (
        [ObjectiveKind.OTSU, ObjectiveKind.KAPUR, ObjectiveKind.KITTLER]
        if args.method == "all"
        else [_METHODS[args.method]]
    )
    corpus = _load_corpus(args)
    summary = experiments.run_delta_study(corpus, kinds, BoundaryMode(args.mode), args.nmax)
    experiments.write_delta_csv(args.out, summary)
    print(f"{len(summary.rows)} delta rows over {len(corpus)} histograms written to {args.out}")
    for idx, method, mode, err in summary.failures:
        print(f"note: histogram {idx} failed for {method}/{mode}: {err}", file=sys.stderr)
    return _EXIT_OK


def cmd_bench(args) -> int:
    h = experiments.make_corpus(count=1, levels=args.levels, seed=args.seed)[0]
    record = experiments.run_runtime_study(h, args.nmax, reps=args.reps)
    experiments.write_runtime_csv(args.out, record)
    print(f"runtime study (L={args.levels}, n_max={args.nmax}, reps={args.reps}) written to {args.out}")
    print(f"machine: {record.machine_note}")
    if args.backends:
        sm = build_score_matrix(h, ObjectiveKind.MET, BoundaryMode.OVERLAPPING)
        print("backend comparison, median seconds per free-count solve:")
        for name in _backend.available():
            samples = experiments.measure_seconds(lambda: solve_free(sm, backend=name), args.reps)
            print(f"  {name}: {statistics.median(samples):.6f}")
    return _EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="threshdp",
        description="Multilevel histogram thresholding via dynamic programming",
    )
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("threshold", help="solve one histogram or PGM image")
    t.add_argument("--method", choices=sorted(_METHODS), required=True)
    t.add_argument("--mode", choices=[m.value for m in BoundaryMode], default=None,
                   help="boundary mode (default: overlapping for met-dp, disjoint otherwise)")
    t.add_argument("--n", type=int, default=None, help="threshold count (fixed-count methods)")
    src = t.add_mutually_exclusive_group(required=True)
    src.add_argument("--hist", help="histogram CSV or JSON path")
    src.add_argument("--image", help="PGM image path (256 levels)")
    t.add_argument("--out", default=None, help="result JSON path (default: stdout)")
    t.add_argument("--quantized", default=None, help="write the thresholded image as PGM")
    t.add_argument("--metrics", action="store_true", help="attach MSE/PSNR/SSIM to the result")
    t.set_defaults(fn=cmd_threshold)

    e = sub.add_parser("example", help="print and self-check the built-in worked example")
    e.add_argument("--mode", choices=[m.value for m in BoundaryMode],
                   default=BoundaryMode.OVERLAPPING.value)
    e.add_argument("--dump-q", default=None, help="write the score table as CSV")
    e.add_argument("--dump-mem", default=None, help="write the DP table as CSV")
    e.set_defaults(fn=cmd_example)

    s = sub.add_parser("sweep", help="consecutive-count delta study, CSV out")
    s.add_argument("--method", choices=sorted(set(_METHODS) - {"met-dp"} | {"all"}), default="all")
    s.add_argument("--mode", choices=[m.value for m in BoundaryMode],
                   default=BoundaryMode.DISJOINT.value)
    s.add_argument("--nmax", type=int, default=15)
    s.add_argument("--corpus", default=None, help="directory of histogram files (.csv/.json/.pgm)")
    s.add_argument("--count", type=int, default=experiments.DEFAULT_CORPUS_SIZE,
                   help="synthetic corpus size when --corpus is absent")
    s.add_argument("--levels", type=int, default=256)
    s.add_argument("--seed", type=int, default=experiments.DEFAULT_SEED)
    s.add_argument("--out", required=True, help="output CSV path")
    s.set_defaults(fn=cmd_sweep)

    b = sub.add_parser("bench", help="runtime study, CSV out")
    b.add_argument("--nmax", type=int, default=15)
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--L", dest="levels", type=int, default=256)
    b.add_argument("--seed", type=int, default=experiments.DEFAULT_SEED)
    b.add_argument("--out", required=True, help="output CSV path")
    b.add_argument("--backends", action="store_true",
                   help="also compare the compiled and fallback kernels")
    b.set_defaults(fn=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InfeasibleError as e:
        print(f"error: infeasible: {e}", file=sys.stderr)
        return _EXIT_INFEASIBLE
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return _EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
