"""
Reference scorers written from the textbook definitions.

Plain Python over explicit frequency maps (collections.Counter) and
math.log2, one row at a time. Nothing here is shared with the vectorised
scorers in core.analysis; the test suite compares the two.
"""

import math
from collections import Counter
from typing import Dict, List, Optional, Sequence

from core.data.tabular import MISSING, DataTable
from core.errors import ScoringError

MAX_ORACLE_ROWS = 10_000

ORACLE_METHODS = ("infogain", "gainratio", "gini", "chi2", "su", "relieff", "fcbf")


def _pairs(xs: Sequence[int], ys: Sequence[int]) -> List[tuple]:
    return [(x, y) for x, y in zip(xs, ys) if x != MISSING and y != MISSING]


def _entropy(freq: Counter) -> float:
    total = sum(freq.values())
    h = 0.0
    for count in freq.values():
        if count:
            p = count / total
            h -= p * math.log2(p)
    return h


def _info_gain(pairs: List[tuple]) -> float:
    """H(Y) - sum_x P(x) H(Y | X = x)"""
    n = len(pairs)
    h_y = _entropy(Counter(y for _, y in pairs))
    by_x: Dict[int, Counter] = {}
    for x, y in pairs:
        by_x.setdefault(x, Counter())[y] += 1
    h_y_given_x = sum(sum(c.values()) / n * _entropy(c) for c in by_x.values())
    return h_y - h_y_given_x


def _gini(freq: Counter) -> float:
    total = sum(freq.values())
    return 1.0 - sum((c / total) ** 2 for c in freq.values())


def oracle_info_gain(xs: Sequence[int], ys: Sequence[int]) -> float:
    return _info_gain(_require(_pairs(xs, ys)))


def oracle_gain_ratio(xs: Sequence[int], ys: Sequence[int]) -> float:
    pairs = _require(_pairs(xs, ys))
    h_x = _entropy(Counter(x for x, _ in pairs))
    return 0.0 if h_x == 0 else _info_gain(pairs) / h_x


def oracle_gini(xs: Sequence[int], ys: Sequence[int]) -> float:
    pairs = _require(_pairs(xs, ys))
    n = len(pairs)
    by_x: Dict[int, Counter] = {}
    for x, y in pairs:
        by_x.setdefault(x, Counter())[y] += 1
    weighted = sum(sum(c.values()) / n * _gini(c) for c in by_x.values())
    return _gini(Counter(y for _, y in pairs)) - weighted


def oracle_chi2(xs: Sequence[int], ys: Sequence[int]) -> float:
    pairs = _require(_pairs(xs, ys))
    n = len(pairs)
    x_counts = Counter(x for x, _ in pairs)
    y_counts = Counter(y for _, y in pairs)
    observed = Counter(pairs)
    chi2 = 0.0
    for x, nx in x_counts.items():
        for y, ny in y_counts.items():
            expected = nx * ny / n
            chi2 += (observed[(x, y)] - expected) ** 2 / expected
    return chi2


def oracle_su(xs: Sequence[int], ys: Sequence[int]) -> float:
    pairs = _require(_pairs(xs, ys))
    h_x = _entropy(Counter(x for x, _ in pairs))
    h_y = _entropy(Counter(y for _, y in pairs))
    if h_x + h_y == 0:
        return 0.0
    return 2.0 * _info_gain(pairs) / (h_x + h_y)


def _require(pairs: List[tuple]) -> List[tuple]:
    if not pairs:
        raise ScoringError("No complete (attribute, class) pairs")
    return pairs


def oracle_relieff(table: DataTable, k: int = 1) -> Dict[int, float]:
    """ReliefF visiting every row, neighbours by full sort on (distance, row)"""
    attributes = list(table.schema.attribute_indices)
    rows = [[int(v) for v in table.codes[r, attributes]] for r in range(table.n_rows)]
    labels = [int(v) for v in table.target_codes]
    n = len(rows)
    prior = {c: count / n for c, count in Counter(labels).items()}
    if n < 2 or len(prior) < 2:
        raise ScoringError("ReliefF needs at least 2 rows and 2 classes present")

    weights = [0.0] * len(attributes)
    for r in range(n):
        distance = [sum(a != b for a, b in zip(rows[r], rows[j])) for j in range(n)]
        for c in sorted(prior):
            if c == labels[r]:
                candidates = [j for j in range(n) if labels[j] == c and j != r]
                sign, factor = -1.0, 1.0
            else:
                candidates = [j for j in range(n) if labels[j] == c]
                sign, factor = 1.0, prior[c] / (1.0 - prior[labels[r]])
            neighbours = sorted(candidates, key=lambda j: (distance[j], j))[:k]
            for j in neighbours:
                for a in range(len(attributes)):
                    if rows[r][a] != rows[j][a]:
                        weights[a] += sign * factor / (n * len(neighbours))
    return dict(zip(attributes, weights))


def oracle_fcbf(table: DataTable, threshold: float = 0.0) -> Dict[int, float]:
    attributes = list(table.schema.attribute_indices)
    column = {a: [int(v) for v in table.codes[:, a]] for a in attributes}
    labels = [int(v) for v in table.target_codes]
    su = {a: oracle_su(column[a], labels) for a in attributes}

    candidates = sorted((a for a in attributes if su[a] > threshold), key=lambda a: (-su[a], a))
    selected = []
    while candidates:
        head = candidates.pop(0)
        selected.append(head)
        candidates = [q for q in candidates if oracle_su(column[head], column[q]) < su[q]]
    return {a: (su[a] if a in selected else 0.0) for a in attributes}


_PAIRWISE = {
    "infogain": oracle_info_gain,
    "gainratio": oracle_gain_ratio,
    "gini": oracle_gini,
    "chi2": oracle_chi2,
    "su": oracle_su,
}


def oracle_scores(table: DataTable, method, k: Optional[int] = None) -> Dict[int, float]:
    """
    Reference score per attribute variable index. `method` is a scorer token
    (or any object with a `name`); ReliefF uses every row with `k` neighbours
    (default: the method's k_neighbors, else 1).
    """
    if table.n_rows > MAX_ORACLE_ROWS:
        raise ScoringError(f"Oracle is limited to {MAX_ORACLE_ROWS} rows, table has {table.n_rows}")

    name = getattr(method, "name", method)
    labels = [int(v) for v in table.target_codes]
    if name in _PAIRWISE:
        scorer = _PAIRWISE[name]
        return {
            a: scorer([int(v) for v in table.codes[:, a]], labels)
            for a in table.schema.attribute_indices
        }
    if name == "relieff":
        if k is None:
            k = getattr(method, "k_neighbors", 1)
        return oracle_relieff(table, k)
    if name == "fcbf":
        return oracle_fcbf(table, getattr(method, "threshold", 0.0))
    raise ScoringError(f"No oracle for '{name}' (valid: {', '.join(ORACLE_METHODS)})")
