"""Result export.

CSV files start with ``#`` comment lines echoing the run configuration, followed by a
header row and data rows with floats at 17 significant digits. JSON payloads embed the
same configuration under ``"run_config"``. Nothing time-dependent is written, so equal
inputs give byte-identical files.
"""

import hashlib
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, Sequence, Union

import numpy as np

from ..core.config import RunConfig

logger = logging.getLogger(__name__)


class ExportError(Exception):
    """Custom exception for unwritable output paths."""

    pass


def format_value(value: Any) -> str:
    """Render one CSV cell: floats at 17 significant digits, enums by value."""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


class ResultExporter:
    """Writes CSV tables and JSON payloads for one subcommand run."""

    def __init__(self, run_config: RunConfig):
        """Initialize the exporter with the run configuration to echo."""
        self.run_config = run_config

    def render_csv(self, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        lines = list(self.run_config.header_lines())
        lines.append(",".join(header))
        for row in rows:
            lines.append(",".join(format_value(cell) for cell in row))
        return "\n".join(lines) + "\n"

    def write_csv(
        self, path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Any]]
    ) -> Dict[str, Any]:
        """
        Write a CSV table.

        Args:
            path: Output file.
            header: Column names.
            rows: Data rows.

        Raises:
            ExportError: If the file cannot be written.

        Returns:
            Dict[str, Any]: Path, row count, size and SHA-256 checksum.
        """
        text = self.render_csv(header, rows)
        n_rows = text.count("\n") - len(self.run_config.header_lines()) - 1
        return self._write(Path(path), text, rows=n_rows)

    def render_json(self, payload: Dict[str, Any]) -> str:
        document = {"run_config": self.run_config.to_dict(), **payload}
        return json.dumps(document, indent=2, sort_keys=True) + "\n"

    def write_json(self, path: Union[str, Path], payload: Dict[str, Any]) -> Dict[str, Any]:
        """
        Write a JSON document with the run configuration embedded.

        Raises:
            ExportError: If the file cannot be written.
        """
        return self._write(Path(path), self.render_json(payload), rows=None)

    def _write(self, path: Path, text: str, rows: Any) -> Dict[str, Any]:
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
        except OSError as err:
            raise ExportError(f"Cannot write {path}: {err}") from err
        data = text.encode("utf-8")
        info = {
            "path": str(path),
            "rows": rows,
            "size": len(data),
            "checksum": hashlib.sha256(data).hexdigest(),
        }
        logger.info("Wrote %s (%d bytes)", path, len(data))
        return info
