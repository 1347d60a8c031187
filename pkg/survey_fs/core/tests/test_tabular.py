"""
Tests for nominal table ingestion, writing and subsetting
"""

import numpy as np
import pandas as pd
import pytest

from conftest import D_PERFECT, make_table, random_table, write_rows
from core.data.tabular import (
    MISSING,
    DataTable,
    MissingPolicy,
    NominalVariable,
    Schema,
    class_distribution,
    read_csv,
    read_csv_with_report,
    resolve_attributes,
    select_columns,
    write_csv,
)
from core.errors import DataFormatError, SchemaError


def test_smallest_well_formed_table(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("a,gender\n1,M\n2,F\n", encoding="utf-8")
    table = read_csv(path, "gender")

    assert table.n_rows == 2
    assert table.schema.variables[0].categories == ("1", "2")
    assert table.schema.target.categories == ("M", "F")
    assert table.schema.target_index == 1


def test_empty_field_becomes_na_category(tmp_path):
    path = write_rows(tmp_path / "t.csv", ["a", "gender"], [["1", "M"], ["", "F"], ["2", "F"]])
    table = read_csv(path, "gender", MissingPolicy.AS_CATEGORY)

    a = table.schema.variables[0]
    assert table.n_rows == 3
    assert a.categories == ("1", "NA", "2")
    assert a.includes_missing_category
    assert not np.any(table.codes == MISSING)


def test_drop_row_policy(tmp_path):
    rows = [["1", "M"], ["", "F"], ["2", "F"], ["1", "M"]]
    path = write_rows(tmp_path / "t.csv", ["a", "gender"], rows)
    table, report = read_csv_with_report(path, "gender", MissingPolicy.DROP_ROW)

    assert table.n_rows == 3
    assert report.n_dropped_missing == 1
    assert table.n_rows + report.n_dropped_missing == len(rows)
    assert report.n_removed == 1
    assert report.n_input_rows == 4


def test_empty_class_rows_rejected(tmp_path):
    path = write_rows(tmp_path / "t.csv", ["a", "gender"], [["1", "M"], ["2", ""], ["2", "F"]])
    table, report = read_csv_with_report(path, "gender")

    assert table.n_rows == 2
    assert report.n_rejected_class == 1


def test_ragged_row_names_line(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("a,b,gender\n1,2,M\n1,F\n", encoding="utf-8")

    with pytest.raises(DataFormatError) as info:
        read_csv(path, "gender")
    assert info.value.line == 3
    assert "line 3" in str(info.value)


def test_missing_target_column(tmp_path):
    path = write_rows(tmp_path / "t.csv", ["a", "sex"], [["1", "M"]])
    with pytest.raises(DataFormatError, match="gender"):
        read_csv(path, "gender")


def test_duplicate_header(tmp_path):
    path = write_rows(tmp_path / "t.csv", ["a", "a", "gender"], [["1", "2", "M"]])
    with pytest.raises(DataFormatError, match="unique"):
        read_csv(path, "gender")


def test_missing_file(tmp_path):
    with pytest.raises(DataFormatError):
        read_csv(tmp_path / "absent.csv", "gender")


def test_na_label_collision(tmp_path):
    path = write_rows(tmp_path / "t.csv", ["a", "gender"], [["NA", "M"], ["", "F"]])
    with pytest.raises(DataFormatError, match="reserved"):
        read_csv(path, "gender")


def test_quoted_fields_accepted(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text('a,gender\n"x, y",M\nz,F\n', encoding="utf-8")
    table = read_csv(path, "gender")
    assert table.schema.variables[0].categories == ("x, y", "z")


def test_comment_lines_skipped(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("# seed=42\na,gender\n1,M\n2,F\n", encoding="utf-8")
    assert read_csv(path, "gender").n_rows == 2


def test_byte_order_mark_is_not_part_of_the_header(tmp_path):
    path = tmp_path / "excel.csv"
    path.write_bytes("a,gender\n1,M\n2,F\n".encode("utf-8-sig"))
    table = read_csv(path, "gender")
    assert table.schema.variables[0].name == "a"
    assert table.n_rows == 2


def test_round_trip_is_exact(tmp_path):
    for seed in range(5):
        table = random_table(seed)
        path = write_csv(table, tmp_path / f"rt{seed}.csv", {"seed": seed})
        again = read_csv(path, "cls")
        assert again.equals(table)


def test_ingestion_is_row_permutation_covariant():
    frame = pd.DataFrame({"a": ["x", "y", "z", "x"], "b": ["1", "1", "2", "2"], "gender": ["M", "F", "F", "M"]})
    order = [3, 1, 0, 2]
    original = make_table(frame.to_dict("list"))
    permuted = make_table(frame.iloc[order].to_dict("list"))

    for j in range(original.schema.n_variables):
        a, b = original.schema.variables[j], permuted.schema.variables[j]
        assert set(a.categories) == set(b.categories)
        labels_a = np.array(a.categories)[original.codes[order, j]]
        labels_b = np.array(b.categories)[permuted.codes[:, j]]
        assert list(labels_a) == list(labels_b)


def test_select_columns_order_and_rows():
    table = make_table({"x": ["1", "2"], "y": ["a", "b"], "z": ["p", "q"], "gender": ["M", "F"]})

    one = select_columns(table, [0])
    assert [v.name for v in one.schema.variables] == ["x", "gender"]
    assert one.n_rows == table.n_rows

    reordered = select_columns(table, [2, 0])
    assert [v.name for v in reordered.schema.variables] == ["z", "x", "gender"]
    assert np.array_equal(reordered.column(0), table.column(2))


def test_select_all_columns_is_identity_up_to_order():
    table = make_table({"gender": ["M", "F", "F"], "x": ["1", "2", "1"], "y": ["a", "a", "b"]})
    everything = select_columns(table, list(table.schema.attribute_indices))
    assert everything.schema.target.name == "gender"
    assert np.array_equal(everything.target_codes, table.target_codes)
    assert np.array_equal(everything.attribute_matrix(), table.attribute_matrix())


@pytest.mark.parametrize("indices", [[0, 0], [5], [1]])
def test_select_columns_rejects_bad_indices(indices):
    table = make_table({"x": ["1", "2"], "gender": ["M", "F"]})
    with pytest.raises(SchemaError):
        select_columns(table, indices)


def test_class_distribution():
    table = make_table({"a": ["1", "2", "3"], "gender": ["M", "M", "F"]})
    assert class_distribution(table) == [("M", 2), ("F", 1)]

    empty = table.take([])
    assert class_distribution(empty) == [("M", 0), ("F", 0)]


def test_resolve_attributes_by_name_and_number():
    table = make_table({"x": ["1", "2"], "gender": ["M", "F"], "y": ["a", "b"], "z": ["b", "c"]})
    assert resolve_attributes(table, ["3", "x"]) == [3, 0]
    with pytest.raises(SchemaError):
        resolve_attributes(table, ["nope"])
    with pytest.raises(SchemaError):
        resolve_attributes(table, ["4"])


def test_schema_invariants():
    with pytest.raises(SchemaError):
        NominalVariable("a", ("1", "1"))
    with pytest.raises(SchemaError):
        NominalVariable("a", ())
    single_class = NominalVariable("gender", ("M",))
    with pytest.raises(SchemaError):
        Schema((NominalVariable("a", ("1",)), single_class), 1)
    with pytest.raises(SchemaError):
        Schema((NominalVariable("a", ("1",)), NominalVariable("a", ("M", "F"))), 1)


def test_table_rejects_out_of_range_codes():
    schema = Schema((NominalVariable("a", ("1", "2")), NominalVariable("gender", ("M", "F"))), 1)
    with pytest.raises(SchemaError):
        DataTable(schema, np.array([[2, 0]]))
    with pytest.raises(SchemaError):
        DataTable(schema, np.array([[0, MISSING]]))


def test_table_is_read_only():
    table = make_table(D_PERFECT)
    with pytest.raises(ValueError):
        table.codes[0, 0] = 1
