"""
Attribute scoring methods and the ranking stage.

Information gain, gain ratio, Gini decrease and chi-square are computed per
attribute from its contingency table; ReliefF and FCBF score all attributes
jointly (see relieff.py and fcbf.py).
"""

import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from config import FCBF_THRESHOLD, RANDOM_STATE, RELIEFF_ITERATIONS, RELIEFF_NEIGHBORS
from core.analysis.contingency import (
    ContingencyTable,
    attribute_entropy,
    contingency,
    mutual_information,
    require_rows,
)
from core.analysis.fcbf import score_fcbf
from core.analysis.relieff import score_relieff
from core.data.tabular import DataTable
from core.errors import SchemaError

logger = logging.getLogger(__name__)


class ScoringAlgorithm(Enum):
    """Scoring algorithms, valued by their command-line token"""
    INFO_GAIN = "infogain"
    GAIN_RATIO = "gainratio"
    GINI = "gini"
    CHI2 = "chi2"
    RELIEFF = "relieff"
    FCBF = "fcbf"

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    ScoringAlgorithm.INFO_GAIN: "Inf. gain",
    ScoringAlgorithm.GAIN_RATIO: "Gain Ratio",
    ScoringAlgorithm.GINI: "Gini",
    ScoringAlgorithm.CHI2: "Chi2",
    ScoringAlgorithm.RELIEFF: "ReliefF",
    ScoringAlgorithm.FCBF: "FCBF",
}


@dataclass(frozen=True)
class ScoringMethod:
    algorithm: ScoringAlgorithm
    n_iterations: int = RELIEFF_ITERATIONS
    k_neighbors: int = RELIEFF_NEIGHBORS
    seed: int = RANDOM_STATE
    threshold: float = FCBF_THRESHOLD

    def __post_init__(self):
        if self.n_iterations < 1:
            raise SchemaError("ReliefF needs n_iterations >= 1")
        if self.k_neighbors < 1:
            raise SchemaError("ReliefF needs k_neighbors >= 1")
        if self.threshold < 0:
            raise SchemaError("FCBF threshold must be >= 0")

    @property
    def name(self) -> str:
        return self.algorithm.value

    @classmethod
    def from_name(cls, name: str, **params) -> "ScoringMethod":
        try:
            algorithm = ScoringAlgorithm(name.strip().lower())
        except ValueError:
            valid = ", ".join(a.value for a in ScoringAlgorithm)
            raise SchemaError(f"Unknown scorer '{name}' (valid: {valid})") from None
        return cls(algorithm, **params)


@dataclass(frozen=True)
class ScoreVector:
    """
    Scores of one method keyed by attribute variable index, plus the ranking.

    Ranking is by descending score, ties broken by ascending attribute index.
    """

    method: ScoringMethod
    scores: Dict[int, float]
    ranking: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        ranking = tuple(sorted(self.scores, key=lambda i: (-self.scores[i], i)))
        object.__setattr__(self, "ranking", ranking)

    def top(self, k: int) -> List[int]:
        return list(self.ranking[:k])

    def ranked(self) -> List[Tuple[int, float]]:
        return [(i, self.scores[i]) for i in self.ranking]


def gini_impurity(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts / total
    return float(1.0 - np.sum(p * p))


def gini_gain(counts: np.ndarray) -> float:
    """Gini decrease of a value x class count matrix (rows = attribute values)."""
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    if total == 0:
        return 0.0
    row_totals = counts.sum(axis=1)
    used = row_totals > 0
    weighted = np.sum(row_totals[used] - np.sum(counts[used] ** 2, axis=1) / row_totals[used]) / total
    return max(0.0, gini_impurity(counts.sum(axis=0)) - float(weighted))


def score_info_gain(ct: ContingencyTable) -> float:
    return mutual_information(ct)


def score_gain_ratio(ct: ContingencyTable) -> float:
    require_rows(ct)
    h_attribute = attribute_entropy(ct)
    if h_attribute == 0:
        return 0.0
    return min(1.0, mutual_information(ct) / h_attribute)


def score_gini(ct: ContingencyTable) -> float:
    require_rows(ct)
    return gini_gain(ct.counts)


def score_chi2(ct: ContingencyTable) -> float:
    """Uncorrected chi-square; cells with expected count 0 are skipped"""
    require_rows(ct)
    observed = ct.counts.astype(np.float64)
    expected = np.outer(ct.row_totals, ct.col_totals).astype(np.float64) / ct.grand_total
    cells = expected > 0
    return float(np.sum((observed[cells] - expected[cells]) ** 2 / expected[cells]))


CONTINGENCY_SCORERS: Dict[ScoringAlgorithm, Callable[[ContingencyTable], float]] = {
    ScoringAlgorithm.INFO_GAIN: score_info_gain,
    ScoringAlgorithm.GAIN_RATIO: score_gain_ratio,
    ScoringAlgorithm.GINI: score_gini,
    ScoringAlgorithm.CHI2: score_chi2,
}


def rank(table: DataTable, method: ScoringMethod) -> ScoreVector:
    """Score every non-class attribute with `method` and rank them."""
    attributes = table.schema.attribute_indices
    if not attributes:
        raise SchemaError("Table has no attributes to rank")

    started = time.perf_counter()
    algorithm = method.algorithm
    if algorithm in CONTINGENCY_SCORERS:
        scorer = CONTINGENCY_SCORERS[algorithm]
        values: Sequence[float] = [scorer(contingency(table, a)) for a in attributes]
    elif algorithm is ScoringAlgorithm.RELIEFF:
        values = score_relieff(
            table, attributes, m=method.n_iterations, k=method.k_neighbors, seed=method.seed
        )
    else:
        values = score_fcbf(table, threshold=method.threshold, attribute_indices=attributes)

    vector = ScoreVector(method, {a: float(v) for a, v in zip(attributes, values)})
    logger.debug(f" Ranked {len(attributes)} attributes with {method.name} in {time.perf_counter() - started:.3f}s")
    return vector


def rank_all(table: DataTable, methods: Sequence[ScoringMethod]) -> List[ScoreVector]:
    return [rank(table, method) for method in methods]
