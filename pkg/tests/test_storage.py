import json
import logging
from fractions import Fraction

import mpmath
import numpy as np

from app.modforms import delta
from app.pipeline import PartitionParams, chain_validator
from app.storage import (
    BOUND_COLUMNS,
    ReportStore,
    TableWriter,
    chain_rows,
    dumps,
    eigenform_to_dict,
    family_metadata,
    format_real,
    qexpansion_to_dict,
)
from app.satotate import sample_family


def test_format_real():
    """Test 17 significant digits and non-finite values"""
    assert format_real(0.1) == "0.10000000000000001"
    assert format_real(float("nan")) == '"nan"'
    assert format_real(float("-inf")) == '"-inf"'


def test_dumps_types():
    """Test integers as strings, fractions as p/q, sorted keys"""
    text = dumps({"b": 2**70, "a": Fraction(1, 3), "c": [0.5, True], "d": np.int64(4)})
    data = json.loads(text)
    assert list(data) == ["a", "b", "c", "d"]
    assert data["b"] == str(2**70)
    assert data["a"] == "1/3"
    assert data["c"] == [0.5, True]
    assert data["d"] == "4"


def test_dumps_huge_mpf():
    """Test mpmath values beyond float range become decimal strings"""
    data = json.loads(dumps({"x": mpmath.mpf(10) ** 400, "y": mpmath.mpf("0.25")}))
    assert data["x"].startswith("1.0e+400")
    assert data["y"] == 0.25


def test_report_store_round_trip(tmp_path):
    """Test a report is written atomically and read back"""
    store = ReportStore(str(tmp_path))
    path = store.write("report", {"value": 1.5, "n": 3})
    assert path.name == "report.json"
    assert store.read("report") == {"n": "3", "value": 1.5}
    assert not list(tmp_path.glob("*.tmp"))


def test_table_writer(tmp_path):
    """Test CSV header and float formatting"""
    writer = TableWriter(str(tmp_path))
    path = writer.write("t", [{"a": 1, "b": 0.1}], ["a", "b"])
    assert path.read_text().splitlines() == ["a,b", "1,0.10000000000000001"]


def test_table_writer_logs_size(tmp_path, caplog):
    """Test the writer logs file name, row count and size"""
    writer = TableWriter(str(tmp_path))
    with caplog.at_level(logging.INFO, logger="app.storage.table_writer"):
        path = writer.write("t", [{"a": 1}, {"a": 2}], ["a"])
    assert f"Generated CSV: t.csv, 2 rows, {path.stat().st_size} bytes" in caplog.text


def test_family_table_deterministic(tmp_path):
    """Test the family table is byte-identical across runs"""
    family = sample_family(30, 50, 4, threads=1)
    first = TableWriter(str(tmp_path / "a")).write_family("family", family).read_bytes()
    second = TableWriter(str(tmp_path / "b")).write_family("family", sample_family(30, 50, 4, threads=2)).read_bytes()
    assert first == second
    assert first.splitlines()[0] == b"2,3,5,7,11,13,17,19,23,29"
    assert family_metadata(family)["seed"] == 4


def test_chain_rows():
    """Test bound table rows from a chain report"""
    rows = chain_rows(chain_validator(PartitionParams.from_log_loglog(5.2e3, 1e4)))
    assert set(rows[0]) == set(BOUND_COLUMNS)
    assert rows[0]["j"] == 1


def test_serializers(delta_form):
    """Test exact coefficients survive serialization"""
    assert qexpansion_to_dict(delta(10))["coeffs"][:3] == ["0", "1", "-24"]
    record = eigenform_to_dict(delta_form)
    assert record["rational"]
    assert record["coeffs"][2] == "-24"
