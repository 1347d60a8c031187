"""
Fast Correlation-Based Filter.

Attributes with SU(A, class) above the threshold are walked in descending SU
order; each kept (predominant) attribute removes every later attribute F_j with
SU(F_i, F_j) >= SU(F_j, class). Kept attributes score their SU with the class,
everything else scores 0.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config import FCBF_THRESHOLD
from core.analysis.contingency import contingency, contingency_between, symmetrical_uncertainty
from core.data.tabular import DataTable

logger = logging.getLogger(__name__)


def fcbf_select(
    table: DataTable,
    threshold: float = FCBF_THRESHOLD,
    attribute_indices: Optional[Sequence[int]] = None,
) -> Tuple[List[int], np.ndarray]:
    """Kept attribute variable indices (in SU order) and SU(A, class) per attribute"""
    if attribute_indices is None:
        attribute_indices = table.schema.attribute_indices
    attribute_indices = list(attribute_indices)

    if table.n_rows == 0:
        return [], np.zeros(len(attribute_indices))

    su_class = np.array([symmetrical_uncertainty(contingency(table, a)) for a in attribute_indices])
    order = sorted(
        (pos for pos in range(len(attribute_indices)) if su_class[pos] > threshold),
        key=lambda pos: (-su_class[pos], pos),
    )

    removed = set()
    kept = []
    for i, p in enumerate(order):
        if p in removed:
            continue
        kept.append(p)
        for q in order[i + 1:]:
            if q in removed:
                continue
            su_pq = symmetrical_uncertainty(
                contingency_between(table, attribute_indices[p], attribute_indices[q])
            )
            if su_pq >= su_class[q]:
                removed.add(q)

    logger.debug(f" FCBF kept {len(kept)} of {len(attribute_indices)} attributes")
    return [attribute_indices[p] for p in kept], su_class


def score_fcbf(
    table: DataTable,
    threshold: float = FCBF_THRESHOLD,
    attribute_indices: Optional[Sequence[int]] = None,
) -> np.ndarray:
    if attribute_indices is None:
        attribute_indices = table.schema.attribute_indices
    attribute_indices = list(attribute_indices)

    kept, su_class = fcbf_select(table, threshold, attribute_indices)
    scores = np.zeros(len(attribute_indices), dtype=np.float64)
    for variable in kept:
        pos = attribute_indices.index(variable)
        scores[pos] = su_class[pos]
    return scores
