"""
Contingency tables and information-theoretic primitives shared by all scorers.

Logarithms are base 2 throughout, so entropies are in bits.
"""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from core.data.tabular import MISSING, DataTable
from core.errors import SchemaError, ScoringError

PROBABILITY_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Attribute-category x class-category counts with marginals"""

    counts: np.ndarray

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.ndim != 2:
            raise SchemaError("Contingency counts must be a matrix")
        if np.any(counts < 0):
            raise SchemaError("Contingency counts must be non-negative")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def row_totals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_totals(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def grand_total(self) -> int:
        return int(self.counts.sum())

    def transpose(self) -> "ContingencyTable":
        return ContingencyTable(self.counts.T)


@dataclass(frozen=True, eq=False)
class Distribution:
    """Discrete probability distribution; empty when built from zero counts"""

    probabilities: np.ndarray

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=np.float64)
        if p.ndim != 1 or np.any(p < 0):
            raise SchemaError("Probabilities must be a non-negative vector")
        if p.size and abs(p.sum() - 1.0) > PROBABILITY_TOLERANCE:
            raise SchemaError(f"Probabilities sum to {p.sum()!r}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)

    @classmethod
    def from_counts(cls, counts: Union[Sequence[float], np.ndarray]) -> "Distribution":
        counts = np.asarray(counts, dtype=np.float64)
        total = counts.sum()
        if total == 0:
            return cls(np.empty(0))
        return cls(counts / total)

    @property
    def is_empty(self) -> bool:
        return self.probabilities.size == 0

    def __len__(self) -> int:
        return self.probabilities.size

    def __getitem__(self, index: int) -> float:
        return float(self.probabilities[index])


def cross_tabulate(x: np.ndarray, n_x: int, y: np.ndarray, n_y: int) -> ContingencyTable:
    """Count pairs (x, y); rows where either side is MISSING do not contribute."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    keep = (x != MISSING) & (y != MISSING)
    if not keep.all():
        x, y = x[keep], y[keep]
    flat = np.bincount(x * n_y + y, minlength=n_x * n_y)
    return ContingencyTable(flat.reshape(n_x, n_y))


def contingency(table: DataTable, attribute_index: int) -> ContingencyTable:
    schema = table.schema
    if not 0 <= attribute_index < schema.n_variables:
        raise SchemaError(f"Attribute index {attribute_index} out of range")
    if attribute_index == schema.target_index:
        raise SchemaError(f"Index {attribute_index} is the class column")
    return cross_tabulate(
        table.column(attribute_index),
        schema.variables[attribute_index].n_categories,
        table.target_codes,
        schema.n_classes,
    )


def contingency_between(table: DataTable, first: int, second: int) -> ContingencyTable:
    """Cross tabulation of two attribute columns (rows = first, columns = second)"""
    variables = table.schema.variables
    return cross_tabulate(
        table.column(first), variables[first].n_categories,
        table.column(second), variables[second].n_categories,
    )


def _sum_xlogx(counts: np.ndarray) -> float:
    counts = counts[counts > 0].astype(np.float64)
    return float(np.sum(counts * np.log2(counts)))


def entropy_of_counts(counts: np.ndarray) -> float:
    """H of the distribution proportional to `counts`: log2 N - sum(c log2 c) / N"""
    counts = np.asarray(counts)
    total = float(counts.sum())
    if np.count_nonzero(counts) <= 1:
        return 0.0
    return max(0.0, float(np.log2(total)) - _sum_xlogx(counts) / total)


def entropy(d: Union[Distribution, Sequence[float]]) -> float:
    p = d.probabilities if isinstance(d, Distribution) else np.asarray(d, dtype=np.float64)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p))) + 0.0


def require_rows(ct: ContingencyTable) -> None:
    if ct.grand_total == 0:
        raise ScoringError("Contingency table is empty")


def class_entropy(ct: ContingencyTable) -> float:
    return entropy_of_counts(ct.col_totals)


def attribute_entropy(ct: ContingencyTable) -> float:
    return entropy_of_counts(ct.row_totals)


def conditional_entropy(ct: ContingencyTable) -> float:
    """H(class | attribute) = (1/N) * sum_v [n_v log2 n_v - sum_c n_vc log2 n_vc]"""
    require_rows(ct)
    total = ct.grand_total
    value = (_sum_xlogx(ct.row_totals) - _sum_xlogx(ct.counts)) / total
    return max(0.0, value)


def mutual_information(ct: ContingencyTable) -> float:
    require_rows(ct)
    if np.count_nonzero(ct.row_totals) <= 1 or np.count_nonzero(ct.col_totals) <= 1:
        return 0.0
    return max(0.0, class_entropy(ct) - conditional_entropy(ct))


def symmetrical_uncertainty(ct: ContingencyTable) -> float:
    require_rows(ct)
    denominator = attribute_entropy(ct) + class_entropy(ct)
    if denominator == 0:
        return 0.0
    return min(1.0, 2.0 * mutual_information(ct) / denominator)
