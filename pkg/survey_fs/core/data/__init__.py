"""
Nominal survey data: model, ingestion and subsetting
"""

from .tabular import (
    MISSING,
    DataTable,
    IngestReport,
    MissingPolicy,
    NominalVariable,
    Schema,
    class_distribution,
    read_csv,
    read_csv_with_report,
    resolve_attributes,
    select_columns,
    table_from_frame,
    write_csv,
)

__all__ = [
    "MISSING",
    "DataTable",
    "IngestReport",
    "MissingPolicy",
    "NominalVariable",
    "Schema",
    "class_distribution",
    "read_csv",
    "read_csv_with_report",
    "resolve_attributes",
    "select_columns",
    "table_from_frame",
    "write_csv",
]
