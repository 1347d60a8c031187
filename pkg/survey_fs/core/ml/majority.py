"""
Majority (constant) learner: predicts the training class frequencies for every row.
"""

from dataclasses import dataclass

import numpy as np

from core.data.tabular import DataTable
from core.errors import SchemaError


@dataclass(frozen=True, eq=False)
class MajorityModel:
    class_distribution: np.ndarray

    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray:
        return np.tile(self.class_distribution, (np.asarray(X).shape[0], 1))


def majority_fit(table: DataTable) -> MajorityModel:
    if table.n_rows == 0:
        raise SchemaError("Cannot fit the majority learner on an empty table")
    counts = np.bincount(table.target_codes, minlength=table.schema.n_classes)
    return MajorityModel(counts / table.n_rows)
