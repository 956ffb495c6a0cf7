import hashlib
import json
import os
import tempfile
from unittest.mock import patch

import numpy as np
import pytest

from su2orbits.core.config import RunConfig
from su2orbits.geometry.orbit_analysis import OrbitType
from su2orbits.io import ExportError, ResultExporter, format_value

"""
Tests for the export module of su2orbits.
"""


class TestFormatValue:
    """Test suite for CSV cell rendering."""

    @pytest.mark.parametrize(
        "value, expected",
        [
            (0.1, "0.10000000000000001"),
            (np.float64(1.0), "1"),
            (3, "3"),
            (np.int64(-2), "-2"),
            (True, "true"),
            (np.bool_(False), "false"),
            (OrbitType.TWO_SPHERE, OrbitType.TWO_SPHERE.value),
            ("x", "x"),
        ],
    )
    def test_cells(self, value, expected):
        """Test floats at 17 significant digits, integers, booleans and enums."""
        assert format_value(value) == expected


class TestResultExporter:
    """Test suite for CSV and JSON output."""

    def setup_method(self):
        """Set up a run configuration and exporter."""
        self.run_config = RunConfig(subcommand="scan", version="0.1.0", seed=3, j=1.0)
        self.exporter = ResultExporter(self.run_config)

    def test_render_csv(self):
        """Test header comments, the column row and data rows."""
        text = self.exporter.render_csv(["a", "b"], [(1, 0.5), (2, 0.25)])
        lines = text.splitlines()
        assert lines[:4] == self.run_config.header_lines()
        assert lines[4:] == ["a,b", "1,0.5", "2,0.25"]
        assert text.endswith("\n")

    def test_write_csv(self):
        """Test the returned file information."""
        with tempfile.TemporaryDirectory() as tmp_dir:
            path = os.path.join(tmp_dir, "rows.csv")
            info = self.exporter.write_csv(path, ["a"], [(1,), (2,), (3,)])
            with open(path, "rb") as f:
                data = f.read()
        assert info["rows"] == 3
        assert info["size"] == len(data)
        assert info["checksum"] == hashlib.sha256(data).hexdigest()

    def test_byte_identical(self):
        """Test that equal inputs give byte-identical files."""
        rows = [(0.1 * k, k) for k in range(10)]
        with tempfile.TemporaryDirectory() as tmp_dir:
            first = self.exporter.write_csv(os.path.join(tmp_dir, "a.csv"), ["x", "k"], rows)
            second = self.exporter.write_csv(os.path.join(tmp_dir, "b.csv"), ["x", "k"], rows)
        assert first["checksum"] == second["checksum"]

    def test_render_json(self):
        """Test that JSON payloads embed the run configuration."""
        document = json.loads(self.exporter.render_json({"defect": 0.5}))
        assert document["defect"] == 0.5
        assert document["run_config"]["subcommand"] == "scan"
        assert document["run_config"]["seed"] == 3

    def test_write_json(self):
        """Test writing a JSON document."""
        with tempfile.TemporaryDirectory() as tmp_dir:
            path = os.path.join(tmp_dir, "out.json")
            info = self.exporter.write_json(path, {"value": 1})
            with open(path, encoding="utf-8") as f:
                assert json.load(f)["value"] == 1
        assert info["rows"] is None

    def test_unwritable_path(self):
        """Test that write failures raise ExportError."""
        with tempfile.TemporaryDirectory() as tmp_dir:
            path = os.path.join(tmp_dir, "missing", "rows.csv")
            with pytest.raises(ExportError, match="Cannot write"):
                self.exporter.write_csv(path, ["a"], [(1,)])

    @patch("builtins.open", side_effect=PermissionError("denied"))
    def test_permission_error(self, mock_open):
        """Test that permission errors are wrapped."""
        with pytest.raises(ExportError, match="denied"):
            self.exporter.write_json("out.json", {})
        mock_open.assert_called_once()
