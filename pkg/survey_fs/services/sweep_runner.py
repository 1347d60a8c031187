"""
SweepRunner Service
Top-k ablation: rank once per method, then cross-validate every classifier on
the k best attributes for k = k_min..k_max with one shared fold plan.
"""

import logging
import time
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from joblib import Parallel, delayed

from config import K_MIN, N_FOLDS, N_JOBS, RANDOM_STATE
from core.analysis.scoring import ScoreVector, ScoringMethod, rank_all
from core.data.tabular import DataTable, select_columns
from core.errors import EvaluationError, SchemaError
from core.ml.registry import ClassifierSpec
from services.cross_validator import (
    ClassifierResult,
    EvaluationReport,
    FoldPlan,
    cross_validate,
    stratified_folds,
)

logger = logging.getLogger(__name__)

CellKey = Tuple[str, str, int]


@dataclass(frozen=True)
class SweepConfig:
    methods: Tuple[ScoringMethod, ...]
    classifiers: Tuple[ClassifierSpec, ...]
    k_min: int = K_MIN
    k_max: Optional[int] = None  # None = all attributes
    folds: int = N_FOLDS
    seed: int = RANDOM_STATE

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "classifiers", tuple(self.classifiers))
        if not self.methods or not self.classifiers:
            raise EvaluationError("Sweep grid is empty: need at least one method and one classifier")
        for kind, names in (
            ("scorer", [m.name for m in self.methods]),
            ("classifier", [c.name for c in self.classifiers]),
        ):
            if len(set(names)) != len(names):
                raise SchemaError(f"Duplicate {kind} in sweep: {names}")
        if self.k_min < 2:
            raise SchemaError("k_min must be >= 2")
        if self.k_max is not None and self.k_max < self.k_min:
            raise SchemaError(f"k_max ({self.k_max}) is below k_min ({self.k_min})")

    def resolve(self, n_attributes: int) -> "SweepConfig":
        """Fill in k_max and check the k range against the table width."""
        k_max = n_attributes if self.k_max is None else self.k_max
        if not 2 <= self.k_min <= k_max <= n_attributes:
            raise SchemaError(
                f"Need 2 <= k_min <= k_max <= #attributes, got k_min={self.k_min}, "
                f"k_max={k_max}, #attributes={n_attributes}"
            )
        return replace(self, k_max=k_max)

    @property
    def k_values(self) -> range:
        if self.k_max is None:
            raise SchemaError("Unresolved sweep config: k_max not set")
        return range(self.k_min, self.k_max + 1)


@dataclass(frozen=True)
class SweepCell:
    method: str
    classifier: str
    k: int
    attributes: Tuple[int, ...]  # rank order
    attribute_names: Tuple[str, ...]
    report: EvaluationReport

    @property
    def result(self) -> ClassifierResult:
        return self.report[self.classifier]

    @property
    def ca(self) -> float:
        return self.result.metrics.ca


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    rankings: Tuple[ScoreVector, ...]
    fold_plan: FoldPlan
    attribute_names: Dict[int, str]
    cells: Dict[CellKey, SweepCell] = field(default_factory=dict)

    @property
    def methods(self) -> List[str]:
        return [m.name for m in self.config.methods]

    @property
    def classifiers(self) -> List[str]:
        return [c.name for c in self.config.classifiers]

    def __len__(self) -> int:
        return len(self.cells)

    def cell(self, method: str, classifier: str, k: int) -> SweepCell:
        try:
            return self.cells[(method, classifier, k)]
        except KeyError:
            raise KeyError(f"No sweep cell ({method}, {classifier}, k={k})") from None

    def curve(self, method: str, classifier: str) -> List[Tuple[int, float]]:
        return [(k, self.cell(method, classifier, k).ca) for k in self.config.k_values]

    def ranking(self, method: str) -> ScoreVector:
        for vector in self.rankings:
            if vector.method.name == method:
                return vector
        raise KeyError(method)

    def iter_cells(self) -> List[SweepCell]:
        """Cells in (method, classifier, k) configuration order"""
        return [
            self.cells[(m, c, k)]
            for m in self.methods
            for c in self.classifiers
            for k in self.config.k_values
        ]


def _evaluate_subset(
    table: DataTable,
    attributes: Tuple[int, ...],
    classifiers: Sequence[ClassifierSpec],
    folds: FoldPlan,
) -> EvaluationReport:
    subset = table if len(attributes) == len(table.schema.attribute_indices) else select_columns(table, attributes)
    return cross_validate(subset, classifiers, folds, n_jobs=1)


def run_sweep(table: DataTable, config: SweepConfig, n_jobs: Optional[int] = None) -> SweepResult:
    """
    Each distinct attribute set is evaluated once, with its columns in schema
    order; cells of different methods that select the same set share a report.
    """
    n_jobs = N_JOBS if n_jobs is None else n_jobs
    config = config.resolve(len(table.schema.attribute_indices))
    started = time.perf_counter()

    folds = stratified_folds(table, config.folds, config.seed)
    rankings = tuple(rank_all(table, config.methods))
    names = {i: table.schema.variables[i].name for i in table.schema.attribute_indices}

    selections: Dict[Tuple[str, int], Tuple[int, ...]] = {}
    subsets: List[Tuple[int, ...]] = []
    for vector in rankings:
        for k in config.k_values:
            key = tuple(sorted(vector.top(k)))
            selections[(vector.method.name, k)] = key
            if key not in subsets:
                subsets.append(key)

    logger.info(
        f" Sweep: {len(config.methods)} methods x {len(config.classifiers)} classifiers x "
        f"k={config.k_min}..{config.k_max} ({len(subsets)} distinct attribute sets, {config.folds} folds)"
    )

    if n_jobs == 1 or len(subsets) == 1:
        reports = [_evaluate_subset(table, s, config.classifiers, folds) for s in subsets]
    else:
        reports = Parallel(n_jobs=n_jobs)(
            delayed(_evaluate_subset)(table, s, config.classifiers, folds) for s in subsets
        )
    by_subset = dict(zip(subsets, reports))

    cells: Dict[CellKey, SweepCell] = {}
    for vector in rankings:
        method = vector.method.name
        for k in config.k_values:
            attributes = tuple(vector.top(k))
            report = by_subset[selections[(method, k)]]
            for spec in config.classifiers:
                cell = SweepCell(
                    method=method,
                    classifier=spec.name,
                    k=k,
                    attributes=attributes,
                    attribute_names=tuple(names[a] for a in attributes),
                    report=report,
                )
                cells[(method, spec.name, k)] = cell
                logger.info(f"   {method}/{spec.name} k={k}: CA={cell.ca:.4f}")

    logger.info(f" Sweep finished: {len(cells)} cells in {time.perf_counter() - started:.1f}s")
    return SweepResult(config, rankings, folds, names, cells)


def best_cell(result: SweepResult) -> SweepCell:
    """Highest CA; ties go to the smaller k, then method order, then classifier order."""
    if not result.cells:
        raise EvaluationError("Sweep grid is empty")

    method_order = {m: i for i, m in enumerate(result.methods)}
    classifier_order = {c: i for i, c in enumerate(result.classifiers)}
    return min(
        result.cells.values(),
        key=lambda c: (-c.ca, c.k, method_order[c.method], classifier_order[c.classifier]),
    )


@dataclass(frozen=True)
class MethodPeak:
    method: str
    classifier: str
    ca: float
    k: int
    attribute_names: Tuple[str, ...]


def method_peaks(result: SweepResult) -> List[MethodPeak]:
    """Peak CA of every (method, classifier) curve and the smallest k reaching it"""
    peaks = []
    for method in result.methods:
        for classifier in result.classifiers:
            curve = [result.cell(method, classifier, k) for k in result.config.k_values]
            top = max(c.ca for c in curve)
            first = next(c for c in curve if c.ca == top)
            peaks.append(MethodPeak(method, classifier, top, first.k, first.attribute_names))
    return peaks


class SweepRunner:
    """
    Service for the top-k sweep of one configuration
    """

    def __init__(self, config: SweepConfig, n_jobs: Optional[int] = None):
        self.config = config
        self.n_jobs = n_jobs

    def run(self, table: DataTable) -> SweepResult:
        """
        Rank, select and cross-validate every (method, classifier, k) cell

        Args:
            table: full survey table; its width bounds k_max

        Returns:
            SweepResult holding the rankings, the shared fold plan and every cell
        """
        return run_sweep(table, self.config, n_jobs=self.n_jobs)

    @staticmethod
    def best(result: SweepResult) -> SweepCell:
        return best_cell(result)

    @staticmethod
    def peaks(result: SweepResult) -> List[MethodPeak]:
        return method_peaks(result)
