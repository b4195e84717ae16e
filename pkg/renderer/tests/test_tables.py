from __future__ import annotations

import pytest

from figrender import DataError, UnknownLayout, load_table
from helpers import write_point, write_sweep


def test_sweep_layout_parses(tmp_path):
    table = load_table(write_sweep(tmp_path / "s.csv"))
    assert table.layout == "sweep"
    assert len(table.rows) == 12
    assert table.metrics() == ("hellinger", "delta")
    assert table.kappa_values() == (0.0, 0.5, 1.0)
    assert table.rows[0].line == 2


def test_point_layout_parses(tmp_path):
    table = load_table(write_point(tmp_path / "p.csv"))
    assert table.layout == "point"
    assert table.metrics() == ("delta", "coherence")
    assert {row.t_alpha for row in table.rows} == {0, 1, 2, 3}


def test_unknown_header_is_its_own_error(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("scenario,kappa0,metric,value\nclassical,0.0,x,1.0\n")
    with pytest.raises(UnknownLayout):
        load_table(path)


def test_truncated_row_names_line(tmp_path):
    path = write_sweep(tmp_path / "s.csv")
    lines = path.read_text().splitlines()
    lines[4] = lines[4].split(",", 6)[0] + ",z,z,15.0"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(DataError, match=r"s\.csv row 5: expected 10 fields"):
        load_table(path)


def test_bad_number_names_line_and_field(tmp_path):
    path = write_point(tmp_path / "p.csv")
    text = path.read_text().replace("contour_z,2,0.5,delta",
                                    "contour_z,2,oops,delta", 1)
    path.write_text(text)
    with pytest.raises(DataError, match=r"row \d+: kappa0 is not a number"):
        load_table(path)


def test_header_only_file_rejected(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("scenario,t_alpha,kappa0,metric,value\n")
    with pytest.raises(DataError, match="no data rows"):
        load_table(path)


def test_zero_byte_file_rejected(tmp_path):
    path = tmp_path / "zero.csv"
    path.write_text("")
    with pytest.raises(DataError, match="file is empty"):
        load_table(path)
