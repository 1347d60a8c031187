"""
Nominal data model and CSV ingestion for survey tables.

Every variable is nominal: cells hold small unsigned category codes assigned in
first-appearance order, with a reserved MISSING code. One variable is the class.
"""

import csv
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from config import MAX_CATEGORIES, MISSING_CODE, MISSING_LABEL
from core.errors import DataFormatError, SchemaError

logger = logging.getLogger(__name__)

CODE_DTYPE = np.uint8
MISSING = MISSING_CODE


class MissingPolicy(Enum):
    """What ingestion does with empty attribute fields"""
    AS_CATEGORY = "as_category"
    DROP_ROW = "drop_row"


@dataclass(frozen=True)
class NominalVariable:
    name: str
    categories: Tuple[str, ...]
    includes_missing_category: bool = False

    def __post_init__(self):
        object.__setattr__(self, "categories", tuple(self.categories))
        if not self.categories:
            raise SchemaError(f"Variable '{self.name}' needs at least one category")
        if len(set(self.categories)) != len(self.categories):
            raise SchemaError(f"Variable '{self.name}' has duplicate category labels")
        if len(self.categories) > MAX_CATEGORIES:
            raise SchemaError(
                f"Variable '{self.name}' has {len(self.categories)} categories (max {MAX_CATEGORIES})"
            )
        if self.includes_missing_category and MISSING_LABEL not in self.categories:
            raise SchemaError(f"Variable '{self.name}' flags a missing category but has no '{MISSING_LABEL}'")

    @property
    def n_categories(self) -> int:
        return len(self.categories)

    def code_of(self, label: str) -> int:
        try:
            return self.categories.index(label)
        except ValueError:
            raise SchemaError(f"'{label}' is not a category of '{self.name}'") from None


@dataclass(frozen=True)
class Schema:
    variables: Tuple[NominalVariable, ...]
    target_index: int

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise SchemaError("Variable names must be unique")
        if not 0 <= self.target_index < len(self.variables):
            raise SchemaError(f"target_index {self.target_index} out of range")
        if self.target.n_categories < 2:
            raise SchemaError(f"Class variable '{self.target.name}' needs at least 2 categories")

    @property
    def target(self) -> NominalVariable:
        return self.variables[self.target_index]

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    @property
    def attribute_indices(self) -> Tuple[int, ...]:
        """Variable indices of every non-class attribute, in schema order"""
        return tuple(i for i in range(len(self.variables)) if i != self.target_index)

    @property
    def n_classes(self) -> int:
        return self.target.n_categories

    def index_of(self, name: str) -> int:
        for i, variable in enumerate(self.variables):
            if variable.name == name:
                return i
        raise SchemaError(f"Unknown variable '{name}'")


@dataclass(frozen=True, eq=False)
class DataTable:
    """
    Immutable column-oriented nominal table.

    `codes` has shape (n_rows, n_variables); column j holds the category codes
    of variable j. The array is made read-only on construction.
    """

    schema: Schema
    codes: np.ndarray

    def __post_init__(self):
        codes = np.ascontiguousarray(self.codes, dtype=CODE_DTYPE)
        if codes.ndim != 2 or codes.shape[1] != self.schema.n_variables:
            raise SchemaError(
                f"codes must have shape (n_rows, {self.schema.n_variables}), got {codes.shape}"
            )
        for j, variable in enumerate(self.schema.variables):
            column = codes[:, j]
            present = column[column != MISSING]
            if present.size and int(present.max()) >= variable.n_categories:
                raise SchemaError(f"Column '{variable.name}' has a code outside its categories")
        if np.any(codes[:, self.schema.target_index] == MISSING):
            raise SchemaError("Class column contains MISSING entries")
        if codes is self.codes:
            codes = codes.copy()
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)

    @property
    def n_rows(self) -> int:
        return self.codes.shape[0]

    @property
    def target_codes(self) -> np.ndarray:
        return self.codes[:, self.schema.target_index]

    def column(self, index: int) -> np.ndarray:
        return self.codes[:, index]

    def attribute_matrix(self) -> np.ndarray:
        """Codes of the non-class attributes, shape (n_rows, n_attributes)"""
        return self.codes[:, list(self.schema.attribute_indices)]

    def take(self, rows: Union[Sequence[int], np.ndarray]) -> "DataTable":
        """Row subset (or resample, rows may repeat) sharing this table's schema."""
        return DataTable(self.schema, self.codes[np.asarray(rows, dtype=np.int64)])

    def equals(self, other: "DataTable") -> bool:
        return self.schema == other.schema and np.array_equal(self.codes, other.codes)


@dataclass
class IngestReport:
    """Row bookkeeping of one ingestion"""
    n_input_rows: int = 0
    n_rejected_class: int = 0
    n_dropped_missing: int = 0
    missing_columns: List[str] = field(default_factory=list)

    @property
    def n_removed(self) -> int:
        return self.n_rejected_class + self.n_dropped_missing


def table_from_frame(
    frame: pd.DataFrame,
    target_name: str,
    missing_policy: MissingPolicy = MissingPolicy.AS_CATEGORY,
    report: Optional[IngestReport] = None,
) -> DataTable:
    """
    Build a DataTable from a frame of string labels ("" means missing).

    Categories are registered in first-appearance order. Rows with an empty class
    are rejected; empty attribute fields follow `missing_policy`.
    """
    report = report if report is not None else IngestReport()
    if target_name not in frame.columns:
        raise DataFormatError(f"Target column '{target_name}' not in header")

    frame = frame.astype(str)
    report.n_input_rows = len(frame)

    empty_class = frame[target_name] == ""
    report.n_rejected_class = int(empty_class.sum())
    if report.n_rejected_class:
        logger.warning(f" Rejected {report.n_rejected_class} rows with an empty '{target_name}' field")
        frame = frame.loc[~empty_class]

    attribute_names = [c for c in frame.columns if c != target_name]
    if missing_policy is MissingPolicy.DROP_ROW and attribute_names:
        has_missing = (frame[attribute_names] == "").any(axis=1)
        report.n_dropped_missing = int(has_missing.sum())
        if report.n_dropped_missing:
            logger.warning(f" Dropped {report.n_dropped_missing} rows with missing attribute values")
            frame = frame.loc[~has_missing]

    variables = []
    columns = []
    for name in frame.columns:
        values = frame[name]
        is_missing = values == ""
        includes_missing = bool(is_missing.any())
        if includes_missing:
            if (values == MISSING_LABEL).any():
                raise DataFormatError(
                    f"Column '{name}' uses the reserved label '{MISSING_LABEL}' and also has empty fields"
                )
            report.missing_columns.append(name)
            values = values.where(~is_missing, MISSING_LABEL)

        codes, uniques = pd.factorize(values, sort=False)
        if len(uniques) > MAX_CATEGORIES:
            raise DataFormatError(f"Column '{name}' has {len(uniques)} categories (max {MAX_CATEGORIES})")
        if len(uniques) == 0:
            # Tabla sin filas: sin categorías observadas
            uniques = [MISSING_LABEL] if name != target_name else []
        variables.append(
            NominalVariable(str(name), tuple(str(u) for u in uniques), includes_missing_category=includes_missing)
        )
        columns.append(codes.astype(CODE_DTYPE))

    schema = Schema(tuple(variables), list(frame.columns).index(target_name))
    matrix = np.column_stack(columns) if columns else np.empty((0, 0), dtype=CODE_DTYPE)
    return DataTable(schema, matrix.reshape(len(frame), len(variables)))


def _read_rows(path: Path) -> Tuple[List[str], List[List[str]], int]:
    """
    Header, data rows and the file line number of the header. Leading `#`
    lines and blank lines are skipped; every data row must match the header width.
    """
    header: Optional[List[str]] = None
    header_line = 0
    rows: List[List[str]] = []
    with open(path, "r", encoding="utf-8-sig", newline="") as f:
        reader = csv.reader(f)
        for fields in reader:
            if header is None:
                if not fields or fields[0].startswith("#"):
                    continue
                header = [h.strip() for h in fields]
                header_line = reader.line_num
                continue
            if not fields:
                continue
            if len(fields) != len(header):
                raise DataFormatError(
                    f"ragged row in {path}: expected {len(header)} fields, got {len(fields)}",
                    line=reader.line_num,
                )
            rows.append(fields)

    if header is None:
        raise DataFormatError(f"{path} has no header line")
    return header, rows, header_line


def read_csv_with_report(
    path: Union[str, Path],
    target_name: str,
    missing_policy: MissingPolicy = MissingPolicy.AS_CATEGORY,
) -> Tuple[DataTable, IngestReport]:
    """Read a nominal CSV file and return the table plus its ingestion report."""
    path = Path(path)
    if not path.exists():
        raise DataFormatError(f"File not found: {path}")

    try:
        header, rows, header_line = _read_rows(path)
    except csv.Error as e:
        raise DataFormatError(f"malformed CSV in {path}: {e}") from None
    except UnicodeDecodeError:
        raise DataFormatError(f"{path} is not UTF-8 text") from None

    if any(h == "" for h in header):
        raise DataFormatError("Header contains an empty column name", line=header_line)
    if len(set(header)) != len(header):
        raise DataFormatError("Header column names must be unique", line=header_line)
    if target_name not in header:
        raise DataFormatError(f"Target column '{target_name}' not in header", line=header_line)

    report = IngestReport()
    frame = pd.DataFrame(rows, columns=header, dtype=object)
    table = table_from_frame(frame, target_name, missing_policy, report)
    logger.info(
        f" Loaded {path.name}: {table.n_rows} rows, {len(table.schema.attribute_indices)} attributes"
    )
    return table, report


def read_csv(
    path: Union[str, Path],
    target_name: str,
    missing_policy: MissingPolicy = MissingPolicy.AS_CATEGORY,
) -> DataTable:
    table, _ = read_csv_with_report(path, target_name, missing_policy)
    return table


def table_labels(table: DataTable) -> pd.DataFrame:
    """Frame of string labels; MISSING and the missing category become ""."""
    data = {}
    for j, variable in enumerate(table.schema.variables):
        labels = list(variable.categories)
        if variable.includes_missing_category:
            labels[labels.index(MISSING_LABEL)] = ""
        lookup = np.array(labels + [""] * (MISSING + 1 - len(labels)), dtype=object)
        data[variable.name] = lookup[table.codes[:, j]]
    return pd.DataFrame(data, columns=[v.name for v in table.schema.variables])


def write_csv(
    table: DataTable,
    path: Union[str, Path],
    metadata: Optional[Mapping[str, object]] = None,
) -> Path:
    """Write the table in the ingestion dialect, optional `# key=value` lines first."""
    path = Path(path)
    frame = table_labels(table)
    with open(path, "w", encoding="utf-8", newline="") as f:
        for key, value in (metadata or {}).items():
            f.write(f"# {key}={value}\n")
        frame.to_csv(f, index=False, lineterminator="\n")
    logger.info(f" Wrote {table.n_rows} rows to {path}")
    return path


def select_columns(table: DataTable, attribute_indices: Sequence[int]) -> DataTable:
    """Chosen attributes in the given order, then the class column."""
    schema = table.schema
    indices = [int(i) for i in attribute_indices]
    if len(set(indices)) != len(indices):
        raise SchemaError(f"Duplicate attribute index in {indices}")
    for i in indices:
        if not 0 <= i < schema.n_variables:
            raise SchemaError(f"Attribute index {i} out of range")
        if i == schema.target_index:
            raise SchemaError(f"Index {i} is the class column")

    order = indices + [schema.target_index]
    variables = tuple(schema.variables[i] for i in order)
    return DataTable(Schema(variables, len(order) - 1), table.codes[:, order])


def class_distribution(table: DataTable) -> List[Tuple[str, int]]:
    target = table.schema.target
    counts = np.bincount(table.target_codes, minlength=target.n_categories)
    return [(label, int(count)) for label, count in zip(target.categories, counts)]


def resolve_attributes(table: DataTable, tokens: Sequence[str]) -> List[int]:
    """
    Map attribute names or 1-based attribute numbers to variable indices.

    Numbers count non-class attributes in schema order, so "3" is the third attribute.
    """
    attributes = table.schema.attribute_indices
    names: Dict[str, int] = {table.schema.variables[i].name: i for i in attributes}
    resolved = []
    for token in tokens:
        token = token.strip()
        if token in names:
            resolved.append(names[token])
        elif token.isdigit() and 1 <= int(token) <= len(attributes):
            resolved.append(attributes[int(token) - 1])
        else:
            raise SchemaError(f"Unknown attribute '{token}'")
    return resolved
