"""
survey-fs Core Package

Contiene:
- data: Nominal tables, CSV ingestion and writing
- analysis: Contingency statistics and attribute scorers
- ml: Naive Bayes, Random Forest and majority classifiers
- synth: Synthetic survey tables and reference scorers
- utils: Deterministic random source
- tests: Unit tests
"""

__version__ = "1.0.0"
