"""
State files and result export.

Modules:
    - state_file: pydantic schemas for spin and Fock state files
    - export: CSV and JSON writers that echo the run configuration
"""

from .export import ExportError, ResultExporter, format_value
from .state_file import (
    FockStateFile,
    StateFile,
    StateFileError,
    dump_state_file,
    load_fock_state_file,
    load_state_file,
)

__all__ = [
    "ExportError",
    "FockStateFile",
    "ResultExporter",
    "StateFile",
    "StateFileError",
    "dump_state_file",
    "format_value",
    "load_fock_state_file",
    "load_state_file",
]
