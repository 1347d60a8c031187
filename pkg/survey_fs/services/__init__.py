"""
Services package for survey-fs

Contains the experiment layer:
- metrics_calculator: AUC, CA, F1, Precision, Recall
- cross_validator: Stratified folds and pooled cross-validation
- sweep_runner: Top-k ablation grid over scorers and classifiers
- report_writer: CSV, JSON, SVG and summary artifacts
"""

from .cross_validator import CrossValidator, EvaluationReport, FoldPlan, cross_validate, stratified_folds
from .metrics_calculator import ClassifierMetrics, MetricsCalculator, auc, compute_metrics, prf
from .report_writer import ReportWriter, emit_report, emit_summary
from .sweep_runner import SweepConfig, SweepResult, SweepRunner, best_cell, method_peaks, run_sweep

__all__ = [
    "ClassifierMetrics",
    "CrossValidator",
    "EvaluationReport",
    "FoldPlan",
    "MetricsCalculator",
    "ReportWriter",
    "SweepConfig",
    "SweepResult",
    "SweepRunner",
    "auc",
    "best_cell",
    "compute_metrics",
    "cross_validate",
    "emit_report",
    "emit_summary",
    "method_peaks",
    "prf",
    "run_sweep",
    "stratified_folds",
]
