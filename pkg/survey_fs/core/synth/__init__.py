"""
Synthetic survey data and reference scorers
"""

from .generator import SURVEY_INFORMATIVE, SynthSpec, generate, generate_frame, survey_layout
from .oracle import MAX_ORACLE_ROWS, oracle_scores

__all__ = [
    "MAX_ORACLE_ROWS",
    "SURVEY_INFORMATIVE",
    "SynthSpec",
    "generate",
    "generate_frame",
    "oracle_scores",
    "survey_layout",
]
