"""``augforge`` command-line entry point.

Exit codes: 0 success, 1 runtime failure (stage named on stderr),
2 configuration or input validation failure.
"""

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from ..augment import read_trace_csv
from ..data import save_csv, synth_hallam
from ..errors import ConfigError, ConsistencyError, ParseError
from .config import load_config
from .fetch import fetch_mnist
from .pipeline import run_baseline, run_experiment
from .plotting import render_line_chart

CONFIG_ERRORS = (ConfigError, ParseError)


def _apply_env_seed(cfg):
    raw = os.environ.get("AUGFORGE_SEED")
    if raw is None:
        return
    try:
        cfg.seed = int(raw)
    except ValueError:
        raise ConfigError(f"AUGFORGE_SEED must be an integer, got {raw!r}") from None


def cmd_run(args):
    try:
        cfg = load_config(args.config)
        _apply_env_seed(cfg)
    except CONFIG_ERRORS as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    stage = "experiment"
    try:
        report = run_experiment(
            cfg, args.output_dir or cfg.output_dir, parallel=args.parallel
        )
    except CONFIG_ERRORS as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except Exception as err:
        print(f"runtime failure in {stage}: {err}", file=sys.stderr)
        return 1
    for row in report["best_score_table"]:
        print(
            f"{row['model']}: best eval F {row['best_eval_f']:.4f} at iteration "
            f"{row['best_eval_iteration']} ({row['synthetic_rows_at_best_eval']} synthetic rows);"
            f" best test F {row['best_test_f']:.4f} at iteration {row['best_test_iteration']}"
        )
    print(f"report written to {Path(args.output_dir or cfg.output_dir) / 'report.json'}")
    return 0


def cmd_baseline(args):
    try:
        cfg = load_config(args.config)
        _apply_env_seed(cfg)
    except CONFIG_ERRORS as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    try:
        results = run_baseline(cfg, args.output_dir or cfg.output_dir)
    except CONFIG_ERRORS as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except Exception as err:
        print(f"runtime failure in baseline: {err}", file=sys.stderr)
        return 1
    for r in results:
        print(
            f"{r.name}: mean F {r.mean_f:.4f} over {len(r.fold_metrics)} folds,"
            f" representative fold {r.representative_fold}"
        )
    return 0


def cmd_fetch_mnist(args):
    try:
        fetch_mnist(
            args.dest,
            manifest_path=args.manifest,
            source_url=args.source_url,
            record=args.record,
        )
    except CONFIG_ERRORS as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except ConsistencyError as err:
        print(f"integrity failure: {err}", file=sys.stderr)
        return 1
    except Exception as err:
        print(f"runtime failure in fetch: {err}", file=sys.stderr)
        return 1
    return 0


def cmd_plot(args):
    try:
        series = []
        for path in args.traces:
            rows = read_trace_csv(path)
            xs, ys = [], []
            for row in rows:
                value = row[args.column]
                if value is None:
                    continue
                xs.append(row["iteration"])
                ys.append(100.0 * value)
            series.append((Path(path).stem, xs, ys))
        render_line_chart(series, out_path=args.output, baseline=args.baseline)
    except CONFIG_ERRORS as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except FileNotFoundError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except Exception as err:
        print(f"runtime failure in plot: {err}", file=sys.stderr)
        return 1
    print(f"wrote {args.output}")
    return 0


def cmd_synth(args):
    try:
        cfg = load_config(args.config)
        _apply_env_seed(cfg)
        if cfg.dataset.kind != "synth":
            raise ConfigError("synth command needs dataset.kind == 'synth'")
    except CONFIG_ERRORS as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    try:
        synth_cfg = replace(cfg.dataset.synth, seed=cfg.dataset.synth.seed or cfg.seed)
        dataset = synth_hallam(synth_cfg)
        path, sidecar = save_csv(dataset, args.output)
    except Exception as err:
        print(f"runtime failure in synth: {err}", file=sys.stderr)
        return 1
    print(f"wrote {path} and {sidecar}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="augforge",
        description="Generative data augmentation experiments for sparse tabular features",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run the configured augmentation experiment")
    p.add_argument("config", help="experiment config JSON")
    p.add_argument("-o", "--output-dir", default=None, help="override config output_dir")
    p.add_argument("--parallel", action="store_true",
                   help="run independent model kinds in separate processes")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("baseline", help="cross-validated LR baseline table")
    p.add_argument("config", help="experiment config JSON")
    p.add_argument("-o", "--output-dir", default=None)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("fetch-mnist", help="download and verify the digit dataset")
    p.add_argument("dest", help="destination directory")
    p.add_argument("--source-url", default=None, help="mirror base URL override")
    p.add_argument("--manifest", default=None, help="manifest JSON path override")
    p.add_argument("--record", action="store_true",
                   help="pin missing sha256 digests from this download")
    p.set_defaults(func=cmd_fetch_mnist)

    p = sub.add_parser("plot", help="render trace CSVs as an SVG line chart")
    p.add_argument("traces", nargs="+", help="trace CSV files")
    p.add_argument("-o", "--output", required=True, help="output SVG path")
    p.add_argument("--baseline", type=float, default=None,
                   help="horizontal rule at this F-score percentage")
    p.add_argument("--column", choices=["S_test", "S_eval"], default="S_test")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("synth", help="write the synthetic surrogate dataset as CSV")
    p.add_argument("config", help="experiment config JSON with dataset.kind == synth")
    p.add_argument("-o", "--output", required=True, help="output CSV path")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
