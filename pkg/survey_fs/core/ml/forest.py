"""
Random Forest of multiway Gini trees over nominal attributes.

Each tree is grown on a bootstrap sample with its own SplitMix64 stream
derived from (master_seed, tree index), so trees can be trained in any order
or in parallel and the forest is still identical.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from config import MIN_SAMPLES_SPLIT, N_JOBS, N_TREES, RANDOM_STATE
from core.analysis.contingency import Distribution
from core.analysis.scoring import gini_gain
from core.data.tabular import DataTable
from core.errors import SchemaError
from core.utils.random_source import STREAM_FOREST, RandomSource, derive_seed

logger = logging.getLogger(__name__)

LEAF = -1
MIN_GINI_DECREASE = 1e-12


@dataclass(frozen=True, eq=False)
class DecisionTree:
    """
    Flat tree. Node i splits on attribute column `feature[i]` (LEAF for leaves);
    `children[i, v]` is the child for category v or -1 when no training row
    reached it. `class_counts[i]` is the class histogram of the rows at node i.
    """

    feature: np.ndarray
    children: np.ndarray
    class_counts: np.ndarray

    @property
    def n_nodes(self) -> int:
        return self.feature.size

    @property
    def n_leaves(self) -> int:
        return int(np.count_nonzero(self.feature == LEAF))

    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X)
        nodes = np.zeros(X.shape[0], dtype=np.int64)
        active = np.arange(X.shape[0])
        width = self.children.shape[1]

        while active.size:
            features = self.feature[nodes[active]]
            internal = features != LEAF
            active, features = active[internal], features[internal]
            if not active.size:
                break
            codes = X[active, features].astype(np.int64)
            in_range = codes < width
            child = np.full(active.size, -1, dtype=np.int64)
            child[in_range] = self.children[nodes[active[in_range]], codes[in_range]]
            # Categoría no vista en el nodo: se queda con la distribución del nodo
            moving = child >= 0
            nodes[active[moving]] = child[moving]
            active = active[moving]

        counts = self.class_counts[nodes].astype(np.float64)
        return counts / counts.sum(axis=1, keepdims=True)


@dataclass(frozen=True, eq=False)
class ForestModel:
    trees: Tuple[DecisionTree, ...]
    n_trees: int
    candidate_features_per_split: int
    master_seed: int
    n_classes: int

    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray:
        total = np.zeros((np.asarray(X).shape[0], self.n_classes), dtype=np.float64)
        for tree in self.trees:
            total += tree.predict_proba_matrix(X)
        return total / len(self.trees)

    def predict_proba(self, row: Sequence[int]) -> Distribution:
        return forest_predict_proba(self, row)


def tree_fit(
    table: DataTable,
    rng: RandomSource,
    candidate_features: int,
    min_samples_split: int = MIN_SAMPLES_SPLIT,
) -> DecisionTree:
    """
    Grow one unpruned multiway tree.

    At each node `candidate_features` unused attributes are drawn without
    replacement and the one with the largest Gini decrease is split on (ties go
    to the lowest attribute position). A node becomes a leaf when it is pure,
    has fewer than `min_samples_split` rows, has no unused attribute left, or
    no candidate decreases Gini.
    """
    if table.n_rows == 0:
        raise SchemaError("Cannot grow a tree on an empty table")

    schema = table.schema
    X = table.attribute_matrix().astype(np.int64)
    y = table.target_codes.astype(np.int64)
    n_classes = schema.n_classes
    n_values = [schema.variables[a].n_categories for a in schema.attribute_indices]
    width = max(n_values, default=1)

    features: List[int] = []
    children: List[np.ndarray] = []
    counts: List[np.ndarray] = []

    def new_node(rows: np.ndarray) -> int:
        features.append(LEAF)
        children.append(np.full(width, -1, dtype=np.int32))
        counts.append(np.bincount(y[rows], minlength=n_classes))
        return len(features) - 1

    stack = [(new_node(np.arange(table.n_rows)), np.arange(table.n_rows), frozenset())]
    while stack:
        node, rows, used = stack.pop()
        node_counts = counts[node]
        unused = np.array([a for a in range(len(n_values)) if a not in used], dtype=np.int64)
        if (
            np.count_nonzero(node_counts) <= 1
            or rows.size < min_samples_split
            or unused.size == 0
        ):
            continue

        draw = min(candidate_features, unused.size)
        candidates = np.sort(rng.sample_without_replacement(unused, draw))
        best_feature, best_gain = LEAF, MIN_GINI_DECREASE
        for a in candidates:
            ct = np.bincount(X[rows, a] * n_classes + y[rows], minlength=n_values[a] * n_classes)
            gain = gini_gain(ct.reshape(n_values[a], n_classes))
            if gain > best_gain:
                best_feature, best_gain = int(a), gain
        if best_feature == LEAF:
            continue

        features[node] = best_feature
        column = X[rows, best_feature]
        for value in np.unique(column):
            child_rows = rows[column == value]
            child = new_node(child_rows)
            children[node][value] = child
            stack.append((child, child_rows, used | {best_feature}))

    return DecisionTree(
        np.array(features, dtype=np.int64),
        np.vstack(children),
        np.vstack(counts).astype(np.int64),
    )


def _fit_tree(
    table: DataTable,
    tree_index: int,
    master_seed: int,
    candidate_features: int,
    min_samples_split: int,
) -> DecisionTree:
    rng = RandomSource(derive_seed(master_seed, STREAM_FOREST, tree_index))
    bootstrap = rng.integers(table.n_rows, table.n_rows)
    return tree_fit(table.take(bootstrap), rng, candidate_features, min_samples_split)


def forest_fit(
    table: DataTable,
    n_trees: int = N_TREES,
    master_seed: int = RANDOM_STATE,
    min_samples_split: int = MIN_SAMPLES_SPLIT,
    n_jobs: Optional[int] = None,
) -> ForestModel:
    if table.n_rows == 0:
        raise SchemaError("Cannot fit a forest on an empty table")
    if n_trees < 1:
        raise SchemaError("n_trees must be >= 1")

    n_jobs = N_JOBS if n_jobs is None else n_jobs
    candidate_features = math.ceil(math.sqrt(len(table.schema.attribute_indices)))
    if n_jobs == 1:
        trees = [
            _fit_tree(table, t, master_seed, candidate_features, min_samples_split)
            for t in range(n_trees)
        ]
    else:
        trees = Parallel(n_jobs=n_jobs)(
            delayed(_fit_tree)(table, t, master_seed, candidate_features, min_samples_split)
            for t in range(n_trees)
        )

    logger.debug(
        f" Forest: {n_trees} trees, {candidate_features} candidates per split, "
        f"{sum(t.n_nodes for t in trees)} nodes"
    )
    return ForestModel(tuple(trees), n_trees, candidate_features, int(master_seed), table.schema.n_classes)


def forest_predict_proba(model: ForestModel, row: Sequence[int]) -> Distribution:
    proba = model.predict_proba_matrix(np.asarray(row, dtype=np.int64).reshape(1, -1))[0]
    return Distribution(proba / proba.sum())
