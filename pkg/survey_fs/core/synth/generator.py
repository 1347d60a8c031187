"""
Synthetic survey tables with planted attribute-class dependence.

Stands in for survey microdata that cannot be redistributed. Every random
draw comes from a SplitMix64 sub-stream keyed by (seed, stream, attribute),
so a table is fully determined by its SynthSpec.

For an informative attribute with strength s, a row takes, with probability
s, a value from its class's own block of categories (the categories are
shuffled per attribute and split into one disjoint block per class);
otherwise the value is uniform over all categories.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config import (
    CLASS_LABELS,
    DEFAULT_TARGET,
    LIKERT_LABELS,
    SURVEY_CLASS_RATIO,
    SURVEY_N_ROWS,
    RANDOM_STATE,
    TOOL_NAME,
    TOOL_VERSION,
    TSI_ATTRIBUTES,
)
from core.data.tabular import DataTable, table_from_frame
from core.errors import SchemaError
from core.utils.random_source import (
    STREAM_SYNTH_ATTRIBUTE,
    STREAM_SYNTH_CLASS,
    STREAM_SYNTH_MISSING,
    STREAM_SYNTH_SUPPORT,
    RandomSource,
    derive_seed,
)

logger = logging.getLogger(__name__)

N_CLASSES = 2
DEFAULT_N_CATEGORIES = len(LIKERT_LABELS)

# Attributes 3, 18 and 7 of the survey catalog, 0-based
SURVEY_INFORMATIVE: Tuple[Tuple[int, float], ...] = ((2, 0.6), (17, 0.5), (6, 0.4))


@dataclass(frozen=True)
class SynthSpec:
    """
    Generator parameters. `informative` holds (0-based attribute position,
    strength) pairs; `class_ratio` is the share of the positive class
    (the second class label).
    """

    n_rows: int
    n_attributes: int
    n_categories: int = DEFAULT_N_CATEGORIES
    informative: Tuple[Tuple[int, float], ...] = ()
    class_ratio: float = SURVEY_CLASS_RATIO
    missing_rate: float = 0.0
    seed: int = RANDOM_STATE
    attribute_names: Optional[Tuple[str, ...]] = None
    target_name: str = DEFAULT_TARGET
    class_labels: Tuple[str, ...] = field(default_factory=lambda: tuple(CLASS_LABELS))

    def __post_init__(self):
        object.__setattr__(self, "informative", tuple((int(i), float(s)) for i, s in self.informative))
        object.__setattr__(self, "class_labels", tuple(self.class_labels))
        if self.attribute_names is None:
            object.__setattr__(self, "attribute_names", default_attribute_names(self.n_attributes))
        else:
            object.__setattr__(self, "attribute_names", tuple(self.attribute_names))

        if self.n_rows < 1:
            raise SchemaError("n_rows must be >= 1")
        if self.n_attributes < 1:
            raise SchemaError("n_attributes must be >= 1")
        if self.n_categories < N_CLASSES:
            raise SchemaError(f"n_categories must be >= {N_CLASSES} (one block per class)")
        if len(self.class_labels) != N_CLASSES or len(set(self.class_labels)) != N_CLASSES:
            raise SchemaError("Exactly two distinct class labels are required")
        if not 0.0 < self.class_ratio < 1.0:
            raise SchemaError(f"class_ratio must be in (0, 1), got {self.class_ratio}")
        if not 0.0 <= self.missing_rate < 1.0:
            raise SchemaError(f"missing_rate must be in [0, 1), got {self.missing_rate}")

        positions = [i for i, _ in self.informative]
        if len(set(positions)) != len(positions):
            raise SchemaError(f"Duplicate informative attribute in {positions}")
        for position, strength in self.informative:
            if not 0 <= position < self.n_attributes:
                raise SchemaError(f"Informative attribute {position + 1} out of range 1..{self.n_attributes}")
            if not 0.0 <= strength <= 1.0:
                raise SchemaError(f"Strength {strength} of attribute {position + 1} not in [0, 1]")

        if len(self.attribute_names) != self.n_attributes:
            raise SchemaError("attribute_names must name every attribute")
        names = list(self.attribute_names) + [self.target_name]
        if len(set(names)) != len(names):
            raise SchemaError("Attribute and target names must be unique")

    @property
    def strengths(self) -> Dict[int, float]:
        return dict(self.informative)

    @property
    def category_labels(self) -> List[str]:
        if self.n_categories == len(LIKERT_LABELS):
            return list(LIKERT_LABELS)
        return [str(v + 1) for v in range(self.n_categories)]

    def manifest(self) -> Dict:
        """Self-describing parameter record; informative attributes are 1-based"""
        return {
            "tool": TOOL_NAME,
            "version": TOOL_VERSION,
            "seed": self.seed,
            "n_rows": self.n_rows,
            "n_attributes": self.n_attributes,
            "n_categories": self.n_categories,
            "class_ratio": self.class_ratio,
            "missing_rate": self.missing_rate,
            "target": self.target_name,
            "informative": [
                {"attribute": i + 1, "name": self.attribute_names[i], "strength": s}
                for i, s in self.informative
            ],
        }


def default_attribute_names(n_attributes: int) -> Tuple[str, ...]:
    """Survey catalog names for the 21-attribute layout, A1..An otherwise"""
    if n_attributes == len(TSI_ATTRIBUTES):
        return tuple(a["name"] for a in TSI_ATTRIBUTES)
    return tuple(f"A{i + 1}" for i in range(n_attributes))


def survey_layout(
    seed: int = RANDOM_STATE,
    informative: Sequence[Tuple[int, float]] = SURVEY_INFORMATIVE,
    n_rows: int = SURVEY_N_ROWS,
    missing_rate: float = 0.0,
) -> SynthSpec:
    """Survey-shaped spec: 21 catalog attributes, 5 answers, male/female at the survey ratio"""
    return SynthSpec(
        n_rows=n_rows,
        n_attributes=len(TSI_ATTRIBUTES),
        informative=tuple(informative),
        class_ratio=SURVEY_CLASS_RATIO,
        missing_rate=missing_rate,
        seed=seed,
    )


def class_supports(spec: SynthSpec, position: int) -> List[np.ndarray]:
    """Disjoint category blocks of one attribute, one per class"""
    rng = RandomSource(derive_seed(spec.seed, STREAM_SYNTH_SUPPORT, position))
    return np.array_split(rng.permutation(spec.n_categories), N_CLASSES)


def generate_codes(spec: SynthSpec) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Raw draws: class codes (n_rows,), attribute codes (n_rows, n_attributes)
    and the missing-cell mask of the same shape.
    """
    n = spec.n_rows
    y = (RandomSource(derive_seed(spec.seed, STREAM_SYNTH_CLASS)).random(n) < spec.class_ratio).astype(np.int64)

    strengths = spec.strengths
    X = np.empty((n, spec.n_attributes), dtype=np.int64)
    missing = np.zeros((n, spec.n_attributes), dtype=bool)
    for a in range(spec.n_attributes):
        rng = RandomSource(derive_seed(spec.seed, STREAM_SYNTH_ATTRIBUTE, a))
        uniform = rng.integers(spec.n_categories, n)
        planted = rng.random(n) < strengths.get(a, 0.0)
        pick = rng.random(n)

        blocks = class_supports(spec, a)
        flat = np.concatenate(blocks)
        sizes = np.array([b.size for b in blocks])
        offsets = np.concatenate(([0], np.cumsum(sizes)[:-1]))
        conditional = flat[offsets[y] + np.minimum((pick * sizes[y]).astype(np.int64), sizes[y] - 1)]

        X[:, a] = np.where(planted, conditional, uniform)
        if spec.missing_rate > 0:
            missing[:, a] = RandomSource(derive_seed(spec.seed, STREAM_SYNTH_MISSING, a)).random(n) < spec.missing_rate

    return y, X, missing


def generate_frame(spec: SynthSpec) -> pd.DataFrame:
    """String-label frame: attributes in order, class column last, missing cells empty"""
    y, X, missing = generate_codes(spec)
    labels = np.array(spec.category_labels, dtype=object)
    data = {}
    for a, name in enumerate(spec.attribute_names):
        column = labels[X[:, a]]
        column[missing[:, a]] = ""
        data[name] = column
    data[spec.target_name] = np.array(spec.class_labels, dtype=object)[y]
    return pd.DataFrame(data, columns=list(spec.attribute_names) + [spec.target_name])


def generate(spec: SynthSpec) -> DataTable:
    """Synthetic table, built the way ingestion builds one from CSV"""
    table = table_from_frame(generate_frame(spec), spec.target_name)
    logger.info(
        f" Generated {table.n_rows} rows x {spec.n_attributes} attributes "
        f"({len(spec.informative)} informative, seed={spec.seed})"
    )
    return table
