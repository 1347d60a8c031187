"""
Shared argument types, input loading and run metadata for the subcommands
"""

import argparse
import logging
from typing import Dict, List, Tuple

from config import (
    CLASSIFIER_NAMES,
    DEFAULT_MISSING_POLICY,
    DEFAULT_TARGET,
    FCBF_THRESHOLD,
    N_JOBS,
    NB_ALPHA,
    N_TREES,
    RANDOM_STATE,
    RELIEFF_ITERATIONS,
    RELIEFF_NEIGHBORS,
    SCORER_NAMES,
    TOOL_NAME,
    TOOL_VERSION,
)
from core.analysis.scoring import ScoringMethod
from core.data.tabular import DataTable, MissingPolicy, class_distribution, read_csv_with_report
from core.ml.registry import ClassifierSpec

logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Bad argument detected after parsing (exit code 2)."""


# Argument types

def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{value}'") from None
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {number}")
    return number


def fold_count(value: str) -> int:
    number = positive_int(value)
    if number < 2:
        raise argparse.ArgumentTypeError(f"cross-validation needs at least 2 folds, got {number}")
    return number


def non_negative_float(value: str) -> float:
    try:
        number = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got '{value}'") from None
    if number < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {number}")
    return number


def _token_list(value: str, valid: List[str], kind: str) -> List[str]:
    if value.strip().lower() == "all":
        return list(valid)
    tokens = [t.strip().lower() for t in value.split(",") if t.strip()]
    unknown = [t for t in tokens if t not in valid]
    if unknown or not tokens:
        raise argparse.ArgumentTypeError(
            f"unknown {kind} {', '.join(unknown) or '(none given)'}; valid: {', '.join(valid)} or all"
        )
    if len(set(tokens)) != len(tokens):
        raise argparse.ArgumentTypeError(f"{kind} listed twice in '{value}'")
    return tokens


def scorer_list(value: str) -> List[str]:
    return _token_list(value, SCORER_NAMES, "scorer")


def classifier_list(value: str) -> List[str]:
    return _token_list(value, CLASSIFIER_NAMES, "classifier")


def informative_list(value: str) -> List[Tuple[int, float]]:
    """'3:0.6,18:0.5' -> [(3, 0.6), (18, 0.5)], attribute numbers 1-based"""
    pairs = []
    for item in filter(None, (p.strip() for p in value.split(","))):
        try:
            number, strength = item.split(":")
            pairs.append((int(number), float(strength)))
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"expected attribute:strength pairs like 3:0.6, got '{item}'"
            ) from None
    return pairs


# Argument groups

def add_runtime_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=RANDOM_STATE,
                        help=f"Master random seed (default {RANDOM_STATE})")
    parser.add_argument("--jobs", type=positive_int, default=N_JOBS,
                        help="Parallel workers; results do not depend on it")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")


def add_input_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="Nominal CSV file with a header line")
    parser.add_argument("--target", default=DEFAULT_TARGET,
                        help=f"Class column name (default {DEFAULT_TARGET})")
    parser.add_argument("--missing", choices=[p.value for p in MissingPolicy], default=DEFAULT_MISSING_POLICY,
                        help="Empty attribute fields: own category or drop the row")


def add_scorer_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scorers", type=scorer_list, default=list(SCORER_NAMES),
                        help=f"Comma list of {', '.join(SCORER_NAMES)} or all (default all)")
    parser.add_argument("--relieff-m", type=positive_int, default=RELIEFF_ITERATIONS,
                        help=f"ReliefF sampled instances (default {RELIEFF_ITERATIONS})")
    parser.add_argument("--relieff-k", type=positive_int, default=RELIEFF_NEIGHBORS,
                        help=f"ReliefF neighbours per class (default {RELIEFF_NEIGHBORS})")
    parser.add_argument("--fcbf-threshold", type=non_negative_float, default=FCBF_THRESHOLD,
                        help="FCBF minimum SU with the class")


def add_classifier_arguments(parser: argparse.ArgumentParser, default: str = "nb,rf") -> None:
    parser.add_argument("--classifiers", type=classifier_list, default=classifier_list(default),
                        help=f"Comma list of {', '.join(CLASSIFIER_NAMES)} (default {default})")
    parser.add_argument("--trees", type=positive_int, default=N_TREES,
                        help=f"Random Forest size (default {N_TREES})")
    parser.add_argument("--alpha", type=non_negative_float, default=NB_ALPHA,
                        help=f"Naive Bayes Laplace smoothing (default {NB_ALPHA})")


# Builders

def scoring_methods(args: argparse.Namespace) -> List[ScoringMethod]:
    return [
        ScoringMethod.from_name(
            name,
            n_iterations=args.relieff_m,
            k_neighbors=args.relieff_k,
            seed=args.seed,
            threshold=args.fcbf_threshold,
        )
        for name in args.scorers
    ]


def classifier_specs(args: argparse.Namespace) -> List[ClassifierSpec]:
    return [
        ClassifierSpec.from_name(name, alpha=args.alpha, n_trees=args.trees, seed=args.seed)
        for name in args.classifiers
    ]


def load_table(args: argparse.Namespace) -> DataTable:
    table, report = read_csv_with_report(args.input, args.target, MissingPolicy(args.missing))
    if report.n_removed:
        logger.info(
            f" Removed {report.n_removed} of {report.n_input_rows} rows "
            f"({report.n_rejected_class} without class, {report.n_dropped_missing} with empty fields)"
        )
    if report.missing_columns:
        logger.info(f" Columns with empty fields: {', '.join(report.missing_columns)}")
    distribution = ", ".join(
        f"{label}={count} ({count / max(table.n_rows, 1):.1%})" for label, count in class_distribution(table)
    )
    logger.info(f" Class distribution of '{args.target}': {distribution}")
    return table


def run_metadata(args: argparse.Namespace, command: str, **params) -> Dict[str, object]:
    """Tool, version, seed and the full parameter set of one run"""
    metadata: Dict[str, object] = {
        "tool": TOOL_NAME,
        "version": TOOL_VERSION,
        "command": command,
        "seed": args.seed,
    }
    for key, value in params.items():
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        metadata[key] = value
    return metadata
