"""
Tests for Naive Bayes, the Gini trees, the forest and the classifier registry
"""

import numpy as np
import pytest

from conftest import D_PERFECT, make_table, random_table
from core.ml import (
    ClassifierKind,
    ClassifierSpec,
    ForestModel,
    MajorityModel,
    NaiveBayesModel,
    forest_fit,
    forest_predict_proba,
    majority_fit,
    nb_fit,
    nb_predict_proba,
    tree_fit,
)
from core.errors import SchemaError
from core.synth import SynthSpec, generate
from core.utils.random_source import RandomSource


def repeated_perfect(times: int = 10):
    return make_table({k: v * times for k, v in D_PERFECT.items()})


class TestNaiveBayes:
    def test_laplace_likelihood(self, d_perfect):
        model = nb_fit(d_perfect, alpha=1.0)
        # rows: A=1, A=2; columns: M, F
        assert model.conditional_tables[0][0, 0] == pytest.approx(0.75)
        assert model.conditional_tables[0][1, 0] == pytest.approx(0.25)
        assert model.class_priors.tolist() == [0.5, 0.5]

    def test_no_smoothing(self, d_perfect):
        model = nb_fit(d_perfect, alpha=0.0)
        assert model.conditional_tables[0][0, 0] == 1.0
        assert model.conditional_tables[0][0, 1] == 0.0

    def test_posterior(self, d_perfect):
        model = nb_fit(d_perfect, alpha=1.0)
        posterior = nb_predict_proba(model, [0])
        assert posterior[0] == pytest.approx(0.75)
        assert posterior[1] == pytest.approx(0.25)
        assert model.predict_proba([1])[1] == pytest.approx(0.75)

    def test_zero_likelihood_without_smoothing(self, d_perfect):
        posterior = nb_predict_proba(nb_fit(d_perfect, alpha=0.0), [0])
        assert posterior[0] == 1.0
        assert posterior[1] == 0.0

    def test_unseen_code_is_neutral(self, d_skew):
        model = nb_fit(d_skew, alpha=1.0)
        posterior = model.predict_proba_matrix(np.array([[7]]))[0]
        assert posterior == pytest.approx(model.class_priors)

    def test_all_zero_likelihoods_fall_back_to_priors(self, d_perfect):
        model = nb_fit(d_perfect, alpha=0.0)
        posterior = model.predict_proba_matrix(np.array([[7]]))[0]
        assert posterior.tolist() == [0.5, 0.5]

    def test_class_absent_from_training(self, d_perfect):
        model = nb_fit(d_perfect.take([0, 1]), alpha=1.0)
        assert model.class_priors.tolist() == [1.0, 0.0]
        assert nb_predict_proba(model, [1])[1] == 0.0

    @pytest.mark.parametrize("seed", range(100))
    def test_posteriors_sum_to_one(self, seed):
        table = random_table(seed, max_attributes=5)
        for alpha in (0.0, 1.0):
            proba = nb_fit(table, alpha=alpha).predict_proba_matrix(table.attribute_matrix())
            assert np.all(np.abs(proba.sum(axis=1) - 1.0) <= 1e-9)
            assert np.all(proba >= 0)

    @pytest.mark.parametrize("seed", range(100))
    def test_duplicated_rows_keep_unsmoothed_posteriors(self, seed):
        table = random_table(seed, max_attributes=5)
        doubled = table.take(np.concatenate([np.arange(table.n_rows)] * 2))
        X = table.attribute_matrix()
        once = nb_fit(table, alpha=0.0).predict_proba_matrix(X)
        twice = nb_fit(doubled, alpha=0.0).predict_proba_matrix(X)
        assert np.allclose(once, twice, rtol=0, atol=1e-12)

    def test_duplicated_rows_keep_smoothed_predictions(self, d_perfect, d_skew):
        for table in (d_perfect, d_skew):
            doubled = table.take(np.concatenate([np.arange(table.n_rows)] * 2))
            X = table.attribute_matrix()
            once = nb_fit(table, alpha=1.0).predict_proba_matrix(X)
            twice = nb_fit(doubled, alpha=1.0).predict_proba_matrix(X)
            assert np.array_equal(np.argmax(once, axis=1), np.argmax(twice, axis=1))

    def test_determining_attribute_gives_perfect_training_accuracy(self, d_perfect):
        planted = generate(SynthSpec(n_rows=300, n_attributes=4, informative=((1, 1.0),), seed=3))
        for table in (d_perfect, planted):
            proba = nb_fit(table, alpha=0.0).predict_proba_matrix(table.attribute_matrix())
            assert np.array_equal(np.argmax(proba, axis=1), table.target_codes)

    def test_fit_errors(self, d_perfect):
        with pytest.raises(SchemaError):
            nb_fit(d_perfect.take([]))
        with pytest.raises(SchemaError):
            nb_fit(d_perfect, alpha=-1)


class TestTree:
    def test_perfect_attribute_gives_pure_leaves(self, d_perfect):
        tree = tree_fit(d_perfect, RandomSource(1), candidate_features=1)
        assert tree.n_nodes == 3
        assert tree.n_leaves == 2
        assert tree.feature[0] == 0
        proba = tree.predict_proba_matrix(d_perfect.attribute_matrix())
        assert proba.tolist() == [[1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 1.0]]

    def test_useless_attribute_gives_a_leaf(self, d_indep):
        tree = tree_fit(d_indep, RandomSource(1), candidate_features=1)
        assert tree.n_nodes == 1
        assert tree.predict_proba_matrix(np.array([[0]])).tolist() == [[0.5, 0.5]]

    def test_pure_table_gives_a_leaf(self, d_perfect):
        tree = tree_fit(d_perfect.take([0, 1]), RandomSource(1), candidate_features=1)
        assert tree.n_nodes == 1
        assert tree.predict_proba_matrix(np.array([[1]])).tolist() == [[1.0, 0.0]]

    def test_unreached_branch_uses_node_distribution(self):
        table = make_table({"A": ["1", "1", "2", "3"], "gender": ["M", "M", "F", "F"]})
        tree = tree_fit(table.take([0, 1, 2]), RandomSource(1), candidate_features=1)
        # category "3" never reached the root split
        assert tree.predict_proba_matrix(np.array([[2]]))[0].tolist() == pytest.approx([2 / 3, 1 / 3])

    def test_empty_table(self, d_perfect):
        with pytest.raises(SchemaError):
            tree_fit(d_perfect.take([]), RandomSource(1), candidate_features=1)


class TestForest:
    def test_deterministic(self):
        table = random_table(5, max_attributes=5)
        X = table.attribute_matrix()
        first = forest_fit(table, n_trees=8, master_seed=7, n_jobs=1).predict_proba_matrix(X)
        second = forest_fit(table, n_trees=8, master_seed=7, n_jobs=1).predict_proba_matrix(X)
        assert np.array_equal(first, second)

    def test_parallel_matches_sequential(self):
        table = random_table(6, max_attributes=5)
        X = table.attribute_matrix()
        sequential = forest_fit(table, n_trees=6, master_seed=3, n_jobs=1).predict_proba_matrix(X)
        parallel = forest_fit(table, n_trees=6, master_seed=3, n_jobs=2).predict_proba_matrix(X)
        assert np.array_equal(sequential, parallel)

    def test_single_tree(self, d_perfect):
        model = forest_fit(repeated_perfect(), n_trees=1, master_seed=1, n_jobs=1)
        assert isinstance(model, ForestModel)
        assert len(model.trees) == 1
        X = d_perfect.attribute_matrix()
        assert np.array_equal(model.predict_proba_matrix(X), model.trees[0].predict_proba_matrix(X))

    def test_forest_averages_its_trees(self):
        table = random_table(8, max_attributes=4)
        X = table.attribute_matrix()
        model = forest_fit(table, n_trees=5, master_seed=11, n_jobs=1)
        mean = np.mean([t.predict_proba_matrix(X) for t in model.trees], axis=0)
        assert np.allclose(model.predict_proba_matrix(X), mean)

    def test_ten_trees_fit_a_perfect_attribute(self, d_perfect):
        model = forest_fit(d_perfect, n_trees=10, n_jobs=1)
        predictions = np.argmax(model.predict_proba_matrix(d_perfect.attribute_matrix()), axis=1)
        assert np.array_equal(predictions, d_perfect.target_codes)

    @pytest.mark.parametrize("seed", range(100))
    def test_forest_posteriors_sum_to_one(self, seed):
        table = random_table(seed, max_attributes=5)
        model = forest_fit(table, n_trees=3, master_seed=seed, n_jobs=1)
        proba = model.predict_proba_matrix(table.attribute_matrix())
        assert np.all(np.abs(proba.sum(axis=1) - 1.0) <= 1e-9)

    def test_learns_a_perfect_attribute(self):
        table = repeated_perfect()
        model = forest_fit(table, n_trees=25, master_seed=42, n_jobs=1)
        predictions = np.argmax(model.predict_proba_matrix(table.attribute_matrix()), axis=1)
        assert np.array_equal(predictions, table.target_codes)

    def test_candidates_per_split(self):
        table = random_table(9, max_attributes=1)
        wide = make_table({f"a{i}": ["1", "2"] for i in range(5)} | {"gender": ["M", "F"]})
        assert forest_fit(wide, n_trees=1, n_jobs=1).candidate_features_per_split == 3
        assert forest_fit(table, n_trees=1, n_jobs=1).candidate_features_per_split == 1

    def test_row_distribution(self, d_perfect):
        model = forest_fit(repeated_perfect(), n_trees=3, master_seed=2, n_jobs=1)
        posterior = forest_predict_proba(model, [0])
        assert sum(posterior.probabilities) == pytest.approx(1.0)

    def test_invalid_arguments(self, d_perfect):
        with pytest.raises(SchemaError):
            forest_fit(d_perfect, n_trees=0)
        with pytest.raises(SchemaError):
            forest_fit(d_perfect.take([]))


class TestRegistry:
    def test_from_name(self):
        spec = ClassifierSpec.from_name(" RF ", n_trees=5)
        assert spec.kind is ClassifierKind.RANDOM_FOREST
        assert spec.n_trees == 5
        assert spec.label == "Random Forest"
        assert ClassifierSpec.from_name("nb").name == "nb"

    def test_unknown_name(self):
        with pytest.raises(SchemaError, match="valid"):
            ClassifierSpec.from_name("svm")

    @pytest.mark.parametrize("params", [{"alpha": -1.0}, {"n_trees": 0}, {"min_samples_split": 1}])
    def test_validation(self, params):
        with pytest.raises(SchemaError):
            ClassifierSpec(ClassifierKind.NAIVE_BAYES, **params)

    def test_fit_dispatch(self, d_perfect):
        assert isinstance(ClassifierSpec(ClassifierKind.NAIVE_BAYES).fit(d_perfect), NaiveBayesModel)
        assert isinstance(ClassifierSpec(ClassifierKind.RANDOM_FOREST, n_trees=2).fit(d_perfect), ForestModel)
        assert isinstance(ClassifierSpec(ClassifierKind.MAJORITY).fit(d_perfect), MajorityModel)

    def test_majority(self, d_skew):
        model = majority_fit(d_skew.take([0, 1, 2]))
        assert model.predict_proba_matrix(np.zeros((2, 1))).tolist() == [[2 / 3, 1 / 3]] * 2
