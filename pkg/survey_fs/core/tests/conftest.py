"""
Shared fixtures: the reference micro-datasets and a random table factory
"""

from pathlib import Path
from typing import Callable, Dict, List

import numpy as np
import pandas as pd
import pytest

from core.data.tabular import DataTable, table_from_frame
from core.utils.random_source import RandomSource, derive_seed

# Single attribute A, binary class
D_PERFECT = {"A": ["1", "1", "2", "2"], "gender": ["M", "M", "F", "F"]}
D_INDEP = {"A": ["1", "1", "2", "2"], "gender": ["M", "F", "M", "F"]}
D_SKEW = {"A": ["1", "1", "1", "2"], "gender": ["M", "M", "F", "F"]}


def make_table(columns: Dict[str, List[str]], target: str = "gender") -> DataTable:
    return table_from_frame(pd.DataFrame(columns), target)


def write_rows(path: Path, header: List[str], rows: List[List[str]]) -> Path:
    lines = [",".join(header)] + [",".join(r) for r in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def random_table(
    seed: int,
    max_rows: int = 200,
    max_attributes: int = 4,
    max_categories: int = 5,
    missing_rate: float = 0.1,
) -> DataTable:
    """
    Random nominal table: 2-3 classes, 10..max_rows rows, attributes with 1..max_categories
    labels, some empty cells (ingested as the NA category). The first rows cover every
    class so at least two classes are present.
    """
    rng = RandomSource(derive_seed(seed, 99))
    n_rows = 10 + int(rng.integers(max_rows - 9, 1)[0])
    n_classes = 2 + int(rng.integers(2, 1)[0])
    n_attributes = 1 + int(rng.integers(max_attributes, 1)[0])

    classes = rng.integers(n_classes, n_rows)
    classes[:n_classes] = np.arange(n_classes)
    data = {}
    for a in range(n_attributes):
        n_categories = 1 + int(rng.integers(max_categories, 1)[0])
        column = np.array([f"v{c}" for c in rng.integers(n_categories, n_rows)], dtype=object)
        if n_categories > 1:
            column[rng.random(n_rows) < missing_rate] = ""
        data[f"a{a}"] = column
    data["cls"] = np.array([f"c{c}" for c in classes], dtype=object)
    return table_from_frame(pd.DataFrame(data), "cls")


@pytest.fixture
def d_perfect() -> DataTable:
    return make_table(D_PERFECT)


@pytest.fixture
def d_indep() -> DataTable:
    return make_table(D_INDEP)


@pytest.fixture
def d_skew() -> DataTable:
    return make_table(D_SKEW)


@pytest.fixture
def d_perfect_csv(tmp_path) -> Path:
    rows = [list(r) for r in zip(D_PERFECT["A"], D_PERFECT["gender"])]
    return write_rows(tmp_path / "d_perfect.csv", ["A", "gender"], rows)


@pytest.fixture
def random_tables() -> Callable[..., DataTable]:
    return random_table
