"""
MetricsCalculator Service
AUC, CA, F1, Precision and Recall on pooled cross-validation predictions
"""

import logging
from dataclasses import asdict, dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from sklearn.metrics import accuracy_score, confusion_matrix, precision_recall_fscore_support, roc_auc_score

from config import POSITIVE_CLASS_INDEX
from core.errors import EvaluationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassifierMetrics:
    """The five metrics of one classifier on one pooled prediction set"""
    auc: Optional[float]
    ca: float
    f1: float
    precision: float
    recall: float
    n_correct: int
    n_predictions: int

    def as_dict(self) -> Dict:
        return asdict(self)


def auc(labels: Sequence[int], scores: Sequence[float], positive: int = POSITIVE_CLASS_INDEX) -> float:
    """
    Mann-Whitney AUC: share of (positive, negative) pairs where the positive
    row scores higher, ties counting one half.
    """
    labels = np.asarray(labels)
    is_positive = labels == positive
    if is_positive.all() or not is_positive.any():
        raise EvaluationError("AUC needs both classes present")
    return float(roc_auc_score(is_positive, np.asarray(scores, dtype=np.float64)))


def prf(
    labels: Sequence[int],
    predictions: Sequence[int],
    n_classes: Optional[int] = None,
) -> Tuple[float, float, float]:
    """Support-weighted one-vs-rest (Precision, Recall, F1); unpredicted classes have precision 0"""
    labels = np.asarray(labels)
    if labels.size == 0:
        raise EvaluationError("No predictions to score")
    classes = list(range(n_classes)) if n_classes is not None else None
    precision, recall, f1, _ = precision_recall_fscore_support(
        labels, np.asarray(predictions), labels=classes, average="weighted", zero_division=0
    )
    return float(precision), float(recall), float(f1)


def classification_accuracy(labels: Sequence[int], predictions: Sequence[int]) -> float:
    return float(accuracy_score(labels, predictions))


def predicted_classes(proba: np.ndarray) -> np.ndarray:
    """Argmax per row; ties go to the lowest class index"""
    return np.argmax(proba, axis=1)


def compute_metrics(
    labels: np.ndarray,
    proba: np.ndarray,
    positive: int = POSITIVE_CLASS_INDEX,
) -> ClassifierMetrics:
    """All five metrics from pooled labels and class-probability rows"""
    n_classes = proba.shape[1]
    predictions = predicted_classes(proba)
    precision, recall, f1 = prf(labels, predictions, n_classes)

    auc_value = None
    if n_classes == 2:
        try:
            auc_value = auc(labels, proba[:, positive], positive)
        except EvaluationError:
            logger.warning(" AUC undefined: only one class among the predictions")

    n_correct = int(np.count_nonzero(predictions == labels))
    return ClassifierMetrics(
        auc=auc_value,
        ca=n_correct / labels.size,
        f1=f1,
        precision=precision,
        recall=recall,
        n_correct=n_correct,
        n_predictions=int(labels.size),
    )


def pooled_confusion_matrix(labels: np.ndarray, proba: np.ndarray) -> np.ndarray:
    n_classes = proba.shape[1]
    return confusion_matrix(labels, predicted_classes(proba), labels=list(range(n_classes)))



class MetricsCalculator:
    """
    Service for scoring pooled cross-validation predictions
    """

    def __init__(self, positive: int = POSITIVE_CLASS_INDEX):
        self.positive = positive

    def calculate(self, labels: Sequence[int], proba: np.ndarray) -> ClassifierMetrics:
        """
        Score one pooled prediction set

        Args:
            labels: true class code per row
            proba: class-probability rows, one per label

        Returns:
            ClassifierMetrics with AUC (binary classes only), CA, F1, Precision, Recall
        """
        labels = np.asarray(labels, dtype=np.int64)
        proba = np.asarray(proba, dtype=np.float64)
        if proba.ndim != 2 or proba.shape[0] != labels.size:
            raise EvaluationError(f"Expected one probability row per label, got {proba.shape} for {labels.size}")
        return compute_metrics(labels, proba, self.positive)

    def confusion(self, labels: Sequence[int], proba: np.ndarray) -> np.ndarray:
        """
        Confusion matrix of the argmax predictions

        Returns:
            (n_classes, n_classes) counts, rows = true class, columns = predicted class
        """
        return pooled_confusion_matrix(np.asarray(labels, dtype=np.int64), np.asarray(proba, dtype=np.float64))
