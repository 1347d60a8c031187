"""
CrossValidator Service
Stratified k-fold cross-validation with pooled metrics
"""

import logging
import time
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from config import N_FOLDS, N_JOBS, POSITIVE_CLASS_INDEX, RANDOM_STATE
from core.data.tabular import DataTable
from core.errors import EvaluationError
from core.ml.registry import ClassifierSpec
from core.utils.random_source import STREAM_FOLDS, RandomSource, derive_seed
from services.metrics_calculator import ClassifierMetrics, MetricsCalculator

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FoldPlan:
    """One fold id in [0, k) per table row"""

    k: int
    assignments: np.ndarray
    seed: int

    def __post_init__(self):
        assignments = np.array(self.assignments, dtype=np.int64)
        if assignments.size and (assignments.min() < 0 or assignments.max() >= self.k):
            raise EvaluationError(f"Fold ids must lie in [0, {self.k})")
        assignments.setflags(write=False)
        object.__setattr__(self, "assignments", assignments)

    @property
    def n_rows(self) -> int:
        return self.assignments.size

    def test_rows(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignments == fold)

    def train_rows(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignments != fold)

    def class_counts(self, labels: np.ndarray, n_classes: int) -> np.ndarray:
        """Matrix (k, n_classes) of class counts per fold"""
        flat = np.bincount(self.assignments * n_classes + np.asarray(labels, dtype=np.int64),
                           minlength=self.k * n_classes)
        return flat.reshape(self.k, n_classes)


@dataclass(frozen=True)
class ClassifierResult:
    classifier: str
    label: str
    metrics: ClassifierMetrics
    fold_ca: Tuple[float, ...]
    confusion: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class EvaluationReport:
    results: Tuple[ClassifierResult, ...]
    n_rows: int
    seed: int
    k: int
    positive_class: str
    attributes: Tuple[str, ...]

    def __getitem__(self, classifier: str) -> ClassifierResult:
        for result in self.results:
            if result.classifier == classifier:
                return result
        raise KeyError(classifier)

    @property
    def classifiers(self) -> List[str]:
        return [r.classifier for r in self.results]

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for result in self.results:
            m = result.metrics
            rows.append({
                "classifier": result.classifier,
                "method": result.label,
                "auc": m.auc,
                "ca": m.ca,
                "f1": m.f1,
                "precision": m.precision,
                "recall": m.recall,
                "seed": self.seed,
                "k": self.k,
                "n_rows": self.n_rows,
            })
        return pd.DataFrame(rows)

    def to_dict(self) -> Dict:
        return {
            "n_rows": self.n_rows,
            "seed": self.seed,
            "k": self.k,
            "positive_class": self.positive_class,
            "attributes": list(self.attributes),
            "results": [
                {
                    "classifier": r.classifier,
                    "label": r.label,
                    **asdict(r.metrics),
                    "fold_ca": list(r.fold_ca),
                    "confusion_matrix": [list(row) for row in r.confusion],
                }
                for r in self.results
            ],
        }


def stratified_folds(table: DataTable, k: int = N_FOLDS, seed: int = RANDOM_STATE) -> FoldPlan:
    """
    Shuffle the rows of each class with the seeded stream, then deal them
    round-robin to the folds. The dealing position carries over from one class
    to the next, so per-class fold sizes differ by at most one and so do the
    total fold sizes.
    """
    if k < 2:
        raise EvaluationError("Cross-validation needs k >= 2")
    if k > table.n_rows:
        raise EvaluationError(f"k={k} exceeds the number of rows ({table.n_rows})")

    rng = RandomSource(derive_seed(seed, STREAM_FOLDS))
    y = table.target_codes
    assignments = np.empty(table.n_rows, dtype=np.int64)
    offset = 0
    for c in range(table.schema.n_classes):
        rows = np.flatnonzero(y == c)
        if rows.size == 0:
            continue
        rows = rows[rng.permutation(rows.size)]
        assignments[rows] = (offset + np.arange(rows.size)) % k
        offset = (offset + rows.size) % k

    return FoldPlan(k, assignments, seed)


def _predict_fold(
    table: DataTable, spec: ClassifierSpec, train: np.ndarray, test: np.ndarray
) -> np.ndarray:
    model = spec.fit(table.take(train))
    return model.predict_proba_matrix(table.take(test).attribute_matrix())


def cross_validate(
    table: DataTable,
    classifiers: Union[ClassifierSpec, Sequence[ClassifierSpec]],
    folds: FoldPlan,
    n_jobs: Optional[int] = None,
) -> EvaluationReport:
    """
    Train on each fold's complement, predict the held-out rows, pool all
    held-out probabilities by row index and score the pooled set once.
    """
    specs = [classifiers] if isinstance(classifiers, ClassifierSpec) else list(classifiers)
    if not specs:
        raise EvaluationError("No classifiers to evaluate")
    if folds.n_rows != table.n_rows:
        raise EvaluationError(f"Fold plan covers {folds.n_rows} rows, table has {table.n_rows}")

    n_jobs = N_JOBS if n_jobs is None else n_jobs
    schema = table.schema
    n_classes = schema.n_classes
    y = table.target_codes.astype(np.int64)
    present = np.flatnonzero(np.bincount(y, minlength=n_classes))

    splits = []
    for fold in range(folds.k):
        test = folds.test_rows(fold)
        if test.size == 0:
            continue
        train = folds.train_rows(fold)
        missing = np.setdiff1d(present, np.unique(y[train]))
        if missing.size:
            labels = [schema.target.categories[c] for c in missing]
            raise EvaluationError(f"Training fold {fold} lacks class(es) {labels}")
        splits.append((fold, train, test))

    started = time.perf_counter()
    tasks = [(spec, train, test) for spec in specs for _, train, test in splits]
    if n_jobs == 1:
        parts = [_predict_fold(table, spec, train, test) for spec, train, test in tasks]
    else:
        parts = Parallel(n_jobs=n_jobs)(
            delayed(_predict_fold)(table, spec, train, test) for spec, train, test in tasks
        )

    calculator = MetricsCalculator(POSITIVE_CLASS_INDEX)
    results = []
    for s, spec in enumerate(specs):
        proba = np.zeros((table.n_rows, n_classes), dtype=np.float64)
        fold_ca = []
        for (_, _, test), part in zip(splits, parts[s * len(splits):(s + 1) * len(splits)]):
            proba[test] = part
            fold_ca.append(float(np.mean(np.argmax(part, axis=1) == y[test])))

        metrics = calculator.calculate(y, proba)
        confusion = calculator.confusion(y, proba)
        results.append(ClassifierResult(
            classifier=spec.name,
            label=spec.label,
            metrics=metrics,
            fold_ca=tuple(fold_ca),
            confusion=tuple(tuple(int(v) for v in row) for row in confusion),
        ))
        auc_text = "n/a" if metrics.auc is None else f"{metrics.auc:.3f}"
        logger.debug(f"   {spec.name}: CA={metrics.ca:.3f} AUC={auc_text}")

    logger.debug(f" Cross-validation ({folds.k} folds, {table.n_rows} rows) in {time.perf_counter() - started:.2f}s")
    positive = schema.target.categories[POSITIVE_CLASS_INDEX] if n_classes > POSITIVE_CLASS_INDEX else ""
    attributes = tuple(schema.variables[a].name for a in schema.attribute_indices)
    return EvaluationReport(tuple(results), table.n_rows, folds.seed, folds.k, positive, attributes)


class CrossValidator:
    """
    Service for stratified k-fold evaluation of a set of classifiers
    """

    def __init__(self, folds: int = N_FOLDS, seed: int = RANDOM_STATE, n_jobs: Optional[int] = None):
        self.folds = folds
        self.seed = seed
        self.n_jobs = n_jobs

    def plan(self, table: DataTable) -> FoldPlan:
        """
        Fold assignment for a table

        Returns:
            FoldPlan with `folds` folds, stratified by class
        """
        return stratified_folds(table, self.folds, self.seed)

    def evaluate(
        self,
        table: DataTable,
        classifiers: Union[ClassifierSpec, Sequence[ClassifierSpec]],
        plan: Optional[FoldPlan] = None,
    ) -> EvaluationReport:
        """
        Cross-validate every classifier on the same folds

        Args:
            table: rows to evaluate
            classifiers: one spec or a sequence of specs, reported in that order
            plan: fold plan to reuse (default: a fresh plan from this service's folds and seed)

        Returns:
            EvaluationReport with pooled metrics per classifier
        """
        plan = self.plan(table) if plan is None else plan
        logger.info(f" Evaluating on {table.n_rows} rows, {plan.k} folds (seed={plan.seed})")
        return cross_validate(table, classifiers, plan, n_jobs=self.n_jobs)
