"""
Classifier specifications: a stable token plus hyperparameters, and a uniform fit entry point.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Protocol

import numpy as np

from config import CLASSIFIER_LABELS, MIN_SAMPLES_SPLIT, NB_ALPHA, N_TREES, RANDOM_STATE
from core.data.tabular import DataTable
from core.errors import SchemaError
from core.ml.forest import forest_fit
from core.ml.majority import majority_fit
from core.ml.naive_bayes import nb_fit


class ClassifierKind(Enum):
    NAIVE_BAYES = "nb"
    RANDOM_FOREST = "rf"
    MAJORITY = "majority"


class FittedModel(Protocol):
    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class ClassifierSpec:
    kind: ClassifierKind
    alpha: float = NB_ALPHA
    n_trees: int = N_TREES
    seed: int = RANDOM_STATE
    min_samples_split: int = MIN_SAMPLES_SPLIT

    def __post_init__(self):
        if self.alpha < 0:
            raise SchemaError("alpha must be >= 0")
        if self.n_trees < 1:
            raise SchemaError("n_trees must be >= 1")
        if self.min_samples_split < 2:
            raise SchemaError("min_samples_split must be >= 2")

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def label(self) -> str:
        return CLASSIFIER_LABELS[self.kind.value]

    @classmethod
    def from_name(cls, name: str, **params) -> "ClassifierSpec":
        try:
            kind = ClassifierKind(name.strip().lower())
        except ValueError:
            valid = ", ".join(k.value for k in ClassifierKind)
            raise SchemaError(f"Unknown classifier '{name}' (valid: {valid})") from None
        return cls(kind, **params)

    def fit(self, table: DataTable) -> FittedModel:
        if self.kind is ClassifierKind.NAIVE_BAYES:
            return nb_fit(table, alpha=self.alpha)
        if self.kind is ClassifierKind.RANDOM_FOREST:
            # Paralelismo por fold/celda, los árboles se entrenan en serie
            return forest_fit(
                table,
                n_trees=self.n_trees,
                master_seed=self.seed,
                min_samples_split=self.min_samples_split,
                n_jobs=1,
            )
        return majority_fit(table)
