"""
Classifiers: categorical Naive Bayes, Random Forest and a majority baseline
"""

from .forest import DecisionTree, ForestModel, forest_fit, forest_predict_proba, tree_fit
from .majority import MajorityModel, majority_fit
from .naive_bayes import NaiveBayesModel, nb_fit, nb_predict_proba
from .registry import ClassifierKind, ClassifierSpec

__all__ = [
    "ClassifierKind",
    "ClassifierSpec",
    "DecisionTree",
    "ForestModel",
    "MajorityModel",
    "NaiveBayesModel",
    "forest_fit",
    "forest_predict_proba",
    "majority_fit",
    "nb_fit",
    "nb_predict_proba",
    "tree_fit",
]
