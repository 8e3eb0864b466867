import csv
import io

from dcs import bench
from dcs.errors import PreconditionError


def test_run_suite_rows():
    rows = list(bench.run_suite("symmetric-decreasing", range(3), 4))

    assert len(rows) == 3
    assert {row["method"] for row in rows} == {"symmetric_decreasing_min_dcs"}
    assert all(row["ratio"] == 1.0 for row in rows)
    assert all(row["error"] == "" for row in rows)


def test_run_suite_reports_solver_errors(mocker):
    failing = mocker.Mock(side_effect=PreconditionError("not applicable"))
    failing.__name__ = "failing"
    mocker.patch.dict(bench.SUITES, {"broken": ("tree", {}, [failing])})

    rows = list(bench.run_suite("broken", range(2), 3))

    assert [row["error"] for row in rows] == ["not applicable", "not applicable"]
    assert rows[0]["weight"] == ""


def test_write_report():
    stream = io.StringIO()
    count = bench.write_report(bench.run_suite("random-tree", range(2), 4), stream)

    stream.seek(0)
    rows = list(csv.DictReader(stream))
    assert count == 4
    assert len(rows) == 4
    assert list(rows[0]) == bench.FIELDS
    assert {row["method"] for row in rows} == {"tree_dp_min_dcs", "incremental_min_dcs"}
