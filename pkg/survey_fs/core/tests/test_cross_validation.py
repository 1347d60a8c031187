"""
Tests for stratified folds and pooled cross-validation
"""

import numpy as np
import pytest

from conftest import make_table, random_table
from core.errors import EvaluationError
from core.ml.registry import ClassifierKind, ClassifierSpec
from services.cross_validator import FoldPlan, cross_validate, stratified_folds

NB = ClassifierSpec(ClassifierKind.NAIVE_BAYES)
RF = ClassifierSpec(ClassifierKind.RANDOM_FOREST, n_trees=5)
MAJORITY = ClassifierSpec(ClassifierKind.MAJORITY)


def class_table(n_first: int, n_second: int, separable: bool = False):
    labels = ["M"] * n_first + ["F"] * n_second
    noise = [str(i % 3) for i in range(len(labels))]
    columns = {"noise": noise, "gender": labels}
    if separable:
        columns["signal"] = ["lo" if c == "M" else "hi" for c in labels]
    return make_table(columns)


class TestStratifiedFolds:
    def test_exact_stratification(self):
        table = class_table(60, 40)
        plan = stratified_folds(table, k=10, seed=42)
        counts = plan.class_counts(table.target_codes, 2)
        assert counts[:, 0].tolist() == [6] * 10
        assert counts[:, 1].tolist() == [4] * 10

    def test_fold_sizes_differ_by_at_most_one(self):
        for seed in range(100):
            table = random_table(seed)
            k = 2 + seed % 9
            plan = stratified_folds(table, k=k, seed=seed)
            sizes = np.bincount(plan.assignments, minlength=k)
            assert sizes.sum() == table.n_rows
            assert sizes.max() - sizes.min() <= 1
            counts = plan.class_counts(table.target_codes, table.schema.n_classes)
            assert np.all(counts.max(axis=0) - counts.min(axis=0) <= 1)

    def test_deterministic_per_seed(self):
        table = class_table(37, 23)
        first = stratified_folds(table, k=5, seed=7)
        assert np.array_equal(first.assignments, stratified_folds(table, k=5, seed=7).assignments)
        assert not np.array_equal(first.assignments, stratified_folds(table, k=5, seed=8).assignments)

    def test_train_and_test_partition_rows(self):
        table = class_table(12, 8)
        plan = stratified_folds(table, k=4, seed=1)
        for fold in range(4):
            rows = np.concatenate([plan.test_rows(fold), plan.train_rows(fold)])
            assert sorted(rows.tolist()) == list(range(table.n_rows))

    @pytest.mark.parametrize("k", [1, 21])
    def test_invalid_k(self, k):
        with pytest.raises(EvaluationError):
            stratified_folds(class_table(10, 10), k=k)

    def test_plan_rejects_out_of_range_ids(self):
        with pytest.raises(EvaluationError):
            FoldPlan(2, np.array([0, 1, 2]), seed=0)

    def test_assignments_are_read_only(self):
        plan = stratified_folds(class_table(5, 5), k=2, seed=0)
        with pytest.raises(ValueError):
            plan.assignments[0] = 1


class TestCrossValidate:
    def test_separable_table(self):
        table = class_table(100, 100, separable=True)
        report = cross_validate(table, [NB, RF], stratified_folds(table, k=10, seed=42), n_jobs=1)
        assert report["nb"].metrics.ca >= 0.99
        assert report["rf"].metrics.ca >= 0.99
        assert report["nb"].metrics.auc == pytest.approx(1.0)

    def test_majority_on_balanced_classes(self):
        table = class_table(50, 50)
        report = cross_validate(table, MAJORITY, stratified_folds(table, k=10, seed=42), n_jobs=1)
        assert report["majority"].metrics.ca == pytest.approx(0.5)
        assert report["majority"].metrics.auc == pytest.approx(0.5)

    def test_pooled_counts_cover_every_row(self):
        table = class_table(30, 20)
        report = cross_validate(table, NB, stratified_folds(table, k=5, seed=3), n_jobs=1)
        result = report["nb"]
        assert result.metrics.n_predictions == table.n_rows
        assert sum(sum(row) for row in result.confusion) == table.n_rows
        assert len(result.fold_ca) == 5
        assert result.metrics.recall == pytest.approx(result.metrics.ca)

    def test_parallel_matches_sequential(self):
        table = class_table(40, 25, separable=True)
        plan = stratified_folds(table, k=5, seed=9)
        sequential = cross_validate(table, [NB, RF], plan, n_jobs=1)
        parallel = cross_validate(table, [NB, RF], plan, n_jobs=2)
        assert sequential.to_dict() == parallel.to_dict()

    def test_fold_plan_must_match_table(self):
        plan = stratified_folds(class_table(10, 10), k=2, seed=0)
        with pytest.raises(EvaluationError):
            cross_validate(class_table(15, 10), NB, plan, n_jobs=1)

    def test_training_fold_missing_a_class(self):
        table = class_table(9, 1)
        with pytest.raises(EvaluationError, match="lacks"):
            cross_validate(table, NB, stratified_folds(table, k=2, seed=0), n_jobs=1)

    def test_no_classifiers(self):
        table = class_table(5, 5)
        with pytest.raises(EvaluationError):
            cross_validate(table, [], stratified_folds(table, k=2, seed=0))

    def test_report_views(self):
        table = class_table(20, 20, separable=True)
        report = cross_validate(table, [NB, MAJORITY], stratified_folds(table, k=4, seed=42), n_jobs=1)

        assert report.classifiers == ["nb", "majority"]
        assert report.positive_class == "F"
        assert report.attributes == ("noise", "signal")
        frame = report.to_frame()
        assert list(frame.columns) == [
            "classifier", "method", "auc", "ca", "f1", "precision", "recall", "seed", "k", "n_rows"
        ]
        assert frame["method"].tolist() == ["Naive Bayes", "Majority"]
        data = report.to_dict()
        assert data["k"] == 4 and data["n_rows"] == 40
        assert data["results"][0]["confusion_matrix"] == [[20, 0], [0, 20]]
        with pytest.raises(KeyError):
            report["rf"]
