"""
evaluate: stratified cross-validation of the chosen classifiers (AUC, CA, F1, Precision, Recall)
"""

import argparse
import logging
import sys

from cli.common import (
    UsageError,
    add_classifier_arguments,
    add_input_arguments,
    add_runtime_arguments,
    classifier_specs,
    fold_count,
    load_table,
    run_metadata,
)
from config import N_FOLDS
from core.data.tabular import resolve_attributes, select_columns
from core.errors import SchemaError
from services.cross_validator import CrossValidator
from services.report_writer import ReportWriter, format_evaluation

logger = logging.getLogger(__name__)


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("evaluate", help="Cross-validate classifiers on a feature set")
    add_input_arguments(parser)
    add_classifier_arguments(parser)
    parser.add_argument("--folds", type=fold_count, default=N_FOLDS,
                        help=f"Cross-validation folds, >= 2 (default {N_FOLDS})")
    parser.add_argument("--features",
                        help="Comma list of attribute names or 1-based attribute numbers (default: all)")
    parser.add_argument("--out-csv", help="Write the metric rows as CSV")
    parser.add_argument("--out-json", help="Write the full report as JSON")
    add_runtime_arguments(parser)
    parser.set_defaults(handler=run)
    return parser


def run(args: argparse.Namespace) -> int:
    table = load_table(args)

    features = []
    if args.features:
        try:
            features = resolve_attributes(table, args.features.split(","))
        except SchemaError as e:
            raise UsageError(f"--features: {e}") from None
        table = select_columns(table, features)
        logger.info(f" Using {len(features)} attributes: {', '.join(v.name for v in table.schema.variables[:-1])}")

    validator = CrossValidator(args.folds, args.seed, n_jobs=args.jobs)
    report = validator.evaluate(table, classifier_specs(args))
    sys.stdout.write(format_evaluation(report))

    metadata = run_metadata(
        args,
        "evaluate",
        input=args.input,
        target=args.target,
        missing=args.missing,
        classifiers=args.classifiers,
        folds=args.folds,
        features=[table.schema.variables[i].name for i in table.schema.attribute_indices] if features else "all",
        trees=args.trees,
        alpha=args.alpha,
    )
    ReportWriter(metadata).write_evaluation(report, args.out_csv, args.out_json)
    return 0
