"""
ReliefF for nominal attributes.

Distance between rows is the number of differing attribute codes (Hamming,
missing treated as a category). Equidistant neighbours are taken in ascending
row order.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from config import RANDOM_STATE, RELIEFF_ITERATIONS, RELIEFF_NEIGHBORS
from core.data.tabular import DataTable
from core.errors import ScoringError
from core.utils.random_source import STREAM_RELIEFF, RandomSource, derive_seed

logger = logging.getLogger(__name__)


def _nearest(candidates: np.ndarray, distances: np.ndarray, k: int, n_rows: int) -> np.ndarray:
    """k rows of `candidates` closest by (distance, row index)"""
    if candidates.size <= k:
        return candidates
    keys = distances[candidates].astype(np.int64) * n_rows + candidates
    part = np.argpartition(keys, k - 1)[:k]
    return candidates[part[np.argsort(keys[part])]]


def sample_instances(n_rows: int, m: int, seed: int) -> np.ndarray:
    """Rows visited by ReliefF: all rows when n_rows <= m, else m without replacement"""
    if n_rows <= m:
        return np.arange(n_rows)
    rng = RandomSource(derive_seed(seed, STREAM_RELIEFF))
    return np.sort(rng.permutation(n_rows)[:m])


def score_relieff(
    table: DataTable,
    attribute_indices: Optional[Sequence[int]] = None,
    m: int = RELIEFF_ITERATIONS,
    k: int = RELIEFF_NEIGHBORS,
    seed: int = RANDOM_STATE,
) -> np.ndarray:
    """
    ReliefF weights, one per attribute in `attribute_indices`.

    For every sampled row R the k nearest hits and, per other class C, the k
    nearest misses are found. Weights move by
        -diff(A, R, H) / (m * |hits|)
        +P(C) / (1 - P(class(R))) * diff(A, R, M) / (m * |misses of C|)
    where diff is 0 for equal codes and 1 otherwise. With fewer than k
    candidates all of them are used; a row with no hit contributes misses only.
    """
    if m < 1 or k < 1:
        raise ScoringError("ReliefF needs m >= 1 and k >= 1")
    if attribute_indices is None:
        attribute_indices = table.schema.attribute_indices
    attribute_indices = list(attribute_indices)

    n_rows = table.n_rows
    y = table.target_codes.astype(np.int64)
    class_counts = np.bincount(y, minlength=table.schema.n_classes)
    if n_rows < 2 or np.count_nonzero(class_counts) < 2:
        raise ScoringError("ReliefF needs at least 2 rows and 2 classes present")

    X = np.ascontiguousarray(table.codes[:, attribute_indices])
    priors = class_counts / n_rows
    rows_by_class = [np.flatnonzero(y == c) for c in range(len(class_counts))]

    sampled = sample_instances(n_rows, m, seed)
    m_used = sampled.size
    weights = np.zeros(len(attribute_indices), dtype=np.float64)

    for r in sampled:
        row = X[r]
        distances = np.count_nonzero(X != row, axis=1)
        own = y[r]

        same = rows_by_class[own]
        same = same[same != r]
        hits = _nearest(same, distances, k, n_rows)
        if hits.size:
            weights -= np.count_nonzero(X[hits] != row, axis=0) / (m_used * hits.size)

        for c, members in enumerate(rows_by_class):
            if c == own or members.size == 0:
                continue
            misses = _nearest(members, distances, k, n_rows)
            factor = priors[c] / (1.0 - priors[own])
            weights += factor * (np.count_nonzero(X[misses] != row, axis=0) / (m_used * misses.size))

    logger.debug(f" ReliefF: {m_used} instances, k={k}, {len(attribute_indices)} attributes")
    return weights
