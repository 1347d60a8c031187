"""
sweep: top-k ablation over scorers and classifiers, with CSV, SVG charts and summary
"""

import argparse
import logging
import sys

from cli.common import (
    UsageError,
    add_classifier_arguments,
    add_input_arguments,
    add_runtime_arguments,
    add_scorer_arguments,
    classifier_specs,
    fold_count,
    load_table,
    positive_int,
    run_metadata,
    scoring_methods,
)
from config import DEFAULT_OUTPUT_DIR, K_MIN, N_FOLDS
from core.errors import SchemaError
from services.report_writer import ReportWriter, format_summary, prepare_output_dir
from services.sweep_runner import SweepConfig, SweepRunner

logger = logging.getLogger(__name__)


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("sweep", help="Accuracy over growing top-k attribute sets")
    add_input_arguments(parser)
    add_scorer_arguments(parser)
    add_classifier_arguments(parser)
    parser.add_argument("--min-k", type=positive_int, default=K_MIN,
                        help=f"Smallest attribute count, >= 2 (default {K_MIN})")
    parser.add_argument("--max-k", type=positive_int, default=None,
                        help="Largest attribute count (default: all attributes)")
    parser.add_argument("--folds", type=fold_count, default=N_FOLDS,
                        help=f"Cross-validation folds, >= 2 (default {N_FOLDS})")
    parser.add_argument("--out-dir", default=str(DEFAULT_OUTPUT_DIR),
                        help="Directory for sweep.csv, sweep_<classifier>.svg and summary.txt")
    add_runtime_arguments(parser)
    parser.set_defaults(handler=run)
    return parser


def run(args: argparse.Namespace) -> int:
    out_dir = prepare_output_dir(args.out_dir)
    table = load_table(args)
    try:
        config = SweepConfig(
            methods=tuple(scoring_methods(args)),
            classifiers=tuple(classifier_specs(args)),
            k_min=args.min_k,
            k_max=args.max_k,
            folds=args.folds,
            seed=args.seed,
        ).resolve(len(table.schema.attribute_indices))
    except SchemaError as e:
        raise UsageError(str(e)) from None
    result = SweepRunner(config, n_jobs=args.jobs).run(table)

    metadata = run_metadata(
        args,
        "sweep",
        input=args.input,
        target=args.target,
        missing=args.missing,
        scorers=args.scorers,
        classifiers=args.classifiers,
        min_k=result.config.k_min,
        max_k=result.config.k_max,
        folds=args.folds,
        relieff_m=args.relieff_m,
        relieff_k=args.relieff_k,
        fcbf_threshold=args.fcbf_threshold,
        trees=args.trees,
        alpha=args.alpha,
    )
    ReportWriter(metadata).write_sweep(result, out_dir)
    logger.info(f" Sweep reports written to {out_dir}")
    sys.stdout.write(format_summary(result))
    return 0
