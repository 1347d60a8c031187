"""
rank: score every attribute with the chosen methods, one column per method
"""

import argparse
import logging
import sys

from cli.common import (
    add_input_arguments,
    add_runtime_arguments,
    add_scorer_arguments,
    load_table,
    run_metadata,
    scoring_methods,
)
from core.analysis.scoring import rank_all
from services.report_writer import ReportWriter, scores_frame

logger = logging.getLogger(__name__)


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("rank", help="Score and rank attributes against the class")
    add_input_arguments(parser)
    add_scorer_arguments(parser)
    parser.add_argument("--out", help="Output CSV (default: standard output)")
    add_runtime_arguments(parser)
    parser.set_defaults(handler=run)
    return parser


def run(args: argparse.Namespace) -> int:
    table = load_table(args)
    vectors = rank_all(table, scoring_methods(args))
    frame = scores_frame(table, vectors)
    logger.info(f" Top attribute by {vectors[0].method.name}: {frame.iloc[0]['attribute_name']}")
    metadata = run_metadata(
        args,
        "rank",
        input=args.input,
        target=args.target,
        missing=args.missing,
        scorers=args.scorers,
        relieff_m=args.relieff_m,
        relieff_k=args.relieff_k,
        fcbf_threshold=args.fcbf_threshold,
    )
    ReportWriter(metadata).write_scores(frame, args.out or sys.stdout)
    return 0
