"""
Categorical Naive Bayes with Laplace smoothing.

Priors are unsmoothed class frequencies; likelihoods are
P(v | c) = (count(v, c) + alpha) / (count(c) + alpha * |values|).
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from config import NB_ALPHA
from core.analysis.contingency import Distribution, cross_tabulate
from core.data.tabular import DataTable
from core.errors import SchemaError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NaiveBayesModel:
    class_priors: np.ndarray
    class_counts: np.ndarray
    # Por atributo: matriz (valores x clases) con P(valor | clase)
    conditional_tables: Tuple[np.ndarray, ...]
    alpha: float

    @property
    def n_classes(self) -> int:
        return self.class_priors.size

    def _unseen_likelihood(self, n_values: int) -> np.ndarray:
        denominator = self.class_counts + self.alpha * (n_values + 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(denominator > 0, self.alpha / denominator, 0.0)

    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray:
        """Posteriors for every row of an attribute-code matrix, shape (n_rows, n_classes)"""
        X = np.asarray(X)
        with np.errstate(divide="ignore"):
            log_post = np.tile(np.log(self.class_priors), (X.shape[0], 1))
            for j, likelihood in enumerate(self.conditional_tables):
                n_values = likelihood.shape[0]
                codes = X[:, j].astype(np.int64)
                seen = codes < n_values
                if seen.all():
                    log_post += np.log(likelihood[codes])
                else:
                    logger.debug(f" {np.count_nonzero(~seen)} unseen codes in attribute {j}")
                    rows = np.log(likelihood[np.where(seen, codes, 0)])
                    rows[~seen] = np.log(self._unseen_likelihood(n_values))
                    log_post += rows

        best = log_post.max(axis=1, keepdims=True)
        dead = ~np.isfinite(best[:, 0])
        safe = np.where(np.isfinite(best), best, 0.0)
        proba = np.exp(log_post - safe)
        proba /= np.where(dead[:, None], 1.0, proba.sum(axis=1, keepdims=True))
        if dead.any():
            # Verosimilitud nula en todas las clases: se usan las priors
            proba[dead] = self.class_priors
        return proba

    def predict_proba(self, row: Sequence[int]) -> Distribution:
        return nb_predict_proba(self, row)


def nb_fit(table: DataTable, alpha: float = NB_ALPHA) -> NaiveBayesModel:
    if table.n_rows == 0:
        raise SchemaError("Cannot fit Naive Bayes on an empty table")
    if alpha < 0:
        raise SchemaError("alpha must be >= 0")

    schema = table.schema
    n_classes = schema.n_classes
    y = table.target_codes
    class_counts = np.bincount(y, minlength=n_classes).astype(np.float64)
    priors = class_counts / table.n_rows

    tables = []
    for a in schema.attribute_indices:
        n_values = schema.variables[a].n_categories
        counts = cross_tabulate(table.column(a), n_values, y, n_classes).counts.astype(np.float64)
        denominator = counts.sum(axis=0) + alpha * n_values
        with np.errstate(divide="ignore", invalid="ignore"):
            likelihood = np.where(denominator > 0, (counts + alpha) / denominator, 1.0 / n_values)
        likelihood.setflags(write=False)
        tables.append(likelihood)

    logger.debug(f" Naive Bayes fitted on {table.n_rows} rows, {len(tables)} attributes, alpha={alpha}")
    return NaiveBayesModel(priors, class_counts, tuple(tables), float(alpha))


def nb_predict_proba(model: NaiveBayesModel, row: Sequence[int]) -> Distribution:
    proba = model.predict_proba_matrix(np.asarray(row, dtype=np.int64).reshape(1, -1))[0]
    return Distribution(proba)
