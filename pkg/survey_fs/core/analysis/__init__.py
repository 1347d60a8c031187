"""
Attribute scoring: contingency statistics, scorers and ranking
"""

from .contingency import (
    ContingencyTable,
    Distribution,
    conditional_entropy,
    contingency,
    contingency_between,
    entropy,
    symmetrical_uncertainty,
)
from .fcbf import score_fcbf
from .relieff import score_relieff
from .scoring import (
    ScoreVector,
    ScoringAlgorithm,
    ScoringMethod,
    rank,
    rank_all,
    score_chi2,
    score_gain_ratio,
    score_gini,
    score_info_gain,
)

__all__ = [
    "ContingencyTable",
    "Distribution",
    "ScoreVector",
    "ScoringAlgorithm",
    "ScoringMethod",
    "conditional_entropy",
    "contingency",
    "contingency_between",
    "entropy",
    "rank",
    "rank_all",
    "score_chi2",
    "score_fcbf",
    "score_gain_ratio",
    "score_gini",
    "score_info_gain",
    "score_relieff",
    "symmetrical_uncertainty",
]
