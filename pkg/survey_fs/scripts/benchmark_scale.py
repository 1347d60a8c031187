"""
Timing benchmark on a survey-shaped synthetic table.

Generates 196,203 rows x 21 attributes, then times the contingency scorers
(IG, GR, Gini, chi2, SU) over every attribute, ReliefF with m=50, k=10 and one
10-fold Naive Bayes evaluation. Targets: < 2 s, < 10 s and < 30 s single-threaded.
"""

import argparse
import logging
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from config import LOG_FORMAT, RANDOM_STATE, SURVEY_N_ROWS  # noqa: E402
from core.analysis.contingency import contingency, symmetrical_uncertainty  # noqa: E402
from core.analysis.relieff import score_relieff  # noqa: E402
from core.analysis.scoring import CONTINGENCY_SCORERS  # noqa: E402
from core.ml.registry import ClassifierKind, ClassifierSpec  # noqa: E402
from core.synth.generator import generate, survey_layout  # noqa: E402
from services.cross_validator import cross_validate, stratified_folds  # noqa: E402

TARGETS = {"contingency scorers": 2.0, "relieff": 10.0, "nb 10-fold": 30.0}


def timed(label: str, fn):
    started = time.perf_counter()
    value = fn()
    elapsed = time.perf_counter() - started
    target = TARGETS.get(label)
    status = "" if target is None else ("  ok" if elapsed < target else f"  SLOW (target {target:.0f}s)")
    print(f"{label:<22}{elapsed:>8.2f}s{status}")
    return value, elapsed


def score_all_contingency(table):
    results = {}
    for a in table.schema.attribute_indices:
        ct = contingency(table, a)
        results[a] = [scorer(ct) for scorer in CONTINGENCY_SCORERS.values()] + [symmetrical_uncertainty(ct)]
    return results


def main() -> int:
    parser = argparse.ArgumentParser(description="Time the scoring and evaluation stages at survey scale")
    parser.add_argument("--rows", type=int, default=SURVEY_N_ROWS, help=f"Rows to generate (default {SURVEY_N_ROWS})")
    parser.add_argument("--seed", type=int, default=RANDOM_STATE)
    parser.add_argument("--skip-nb", action="store_true", help="Only time the scorers")
    args = parser.parse_args()

    logging.basicConfig(level="WARNING", format=LOG_FORMAT)

    table, _ = timed("generate", lambda: generate(survey_layout(seed=args.seed, n_rows=args.rows)))
    print(f"table: {table.n_rows} rows x {len(table.schema.attribute_indices)} attributes")

    _, t_scores = timed("contingency scorers", lambda: score_all_contingency(table))
    _, t_relieff = timed("relieff", lambda: score_relieff(table, m=50, k=10, seed=args.seed))
    within_target = [t_scores < TARGETS["contingency scorers"], t_relieff < TARGETS["relieff"]]

    if not args.skip_nb:
        spec = ClassifierSpec(ClassifierKind.NAIVE_BAYES)
        _, t_nb = timed(
            "nb 10-fold",
            lambda: cross_validate(table, spec, stratified_folds(table, 10, args.seed), n_jobs=1),
        )
        within_target.append(t_nb < TARGETS["nb 10-fold"])

    return 0 if all(within_target) else 1


if __name__ == "__main__":
    sys.exit(main())
