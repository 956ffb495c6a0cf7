import logging
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml

"""
Configuration module for su2orbits.

Holds the numerical tolerances, sampling defaults, Fock-space settings and logging level
shared by the library entry points and the CLI. Settings come from defaults or from a
YAML file; no environment variables are read.

Example usage:

    config = Config.load_from_yaml("su2orbits.yaml")
    config.setup_logging()
"""

VALID_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

_FLOAT_KEYS = {"rank_tol", "f1_tol", "flip_tol", "hbar"}
_INT_KEYS = {"seed", "samples", "workers", "n_trunc", "grid"}


@dataclass
class Config:
    """
    Main configuration class for su2orbits.

    Attributes:
        rank_tol (float): Relative singular-value threshold of the little-algebra test.
        f1_tol (float): f1 threshold separating TwoSphere from RealProjectivePlane.
        flip_tol (float): Ray-distance threshold of the pi-flip test.
        seed (int): Default root seed for scans and samples.
        samples (int): Default number of random states for scans.
        workers (int): Threads used by scans.
        n_trunc (int): Default Fock truncation.
        hbar (float): Planck constant of the Fock-space module.
        grid (int): Default grid size of the octant and psd commands.
        log_level (str): Logging level (default: 'WARNING').
    """

    rank_tol: float = 1e-9
    f1_tol: float = 1e-9
    flip_tol: float = 1e-9
    seed: int = 0
    samples: int = 1000
    workers: int = 1
    n_trunc: int = 64
    hbar: float = 1.0
    grid: int = 21
    log_level: str = "WARNING"

    @classmethod
    def load_from_yaml(cls, file_path: Union[str, Path]) -> "Config":
        """
        Load configuration from a YAML file.

        Args:
            file_path (Union[str, Path]): Path to the YAML configuration file.

        Raises:
            FileNotFoundError: If the YAML file does not exist.
            yaml.YAMLError: If the YAML file is malformed.
            ValueError: If keys are unknown or values have the wrong type.

        Returns:
            Config: An instance of Config populated from the YAML file.
        """
        file_path = Path(file_path)
        if not file_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {file_path}")

        with open(file_path, encoding="utf-8") as f:
            data = yaml.safe_load(f)

        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ValueError("YAML configuration must be a dictionary.")

        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"Unknown configuration keys: {unknown}")

        for key, value in data.items():
            if key in _FLOAT_KEYS:
                data[key] = value = _as_float(key, value)
            if key in _INT_KEYS and (isinstance(value, bool) or not isinstance(value, int)):
                raise ValueError(f"{key} must be an integer.")
            if key == "log_level" and not isinstance(value, str):
                raise ValueError("log_level must be a string.")

        config = cls(**data)
        config.validate()
        return config

    def setup_logging(self) -> None:
        """
        Configure logging based on the log_level setting.

        Logs go to stderr so that reports and data written to stdout stay parseable.
        """
        level = getattr(logging, self.log_level.upper(), logging.WARNING)
        logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
        logging.getLogger().setLevel(level)

    def validate(self) -> None:
        """
        Validate the configuration settings.

        Raises:
            ValueError: If any setting is out of range.
        """
        if self.log_level.upper() not in VALID_LOG_LEVELS:
            raise ValueError(
                f"Invalid log_level: {self.log_level}. Must be one of {VALID_LOG_LEVELS}."
            )
        for name in ("rank_tol", "f1_tol", "flip_tol"):
            value = getattr(self, name)
            if not 0.0 < value <= 1e-3:
                raise ValueError(f"{name} must lie in (0, 1e-3], got {value}.")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}.")
        if self.samples < 0:
            raise ValueError("samples cannot be negative.")
        if self.workers < 1:
            raise ValueError("workers must be at least 1.")
        if self.n_trunc < 4:
            raise ValueError("n_trunc must be at least 4.")
        if not 0 < self.hbar < float("inf"):
            raise ValueError("hbar must be positive and finite.")
        if self.grid < 2:
            raise ValueError("grid must be at least 2.")

    def tolerances(self) -> Dict[str, float]:
        return {"rank_tol": self.rank_tol, "f1_tol": self.f1_tol, "flip_tol": self.flip_tol}


def _as_float(key: str, value: Any) -> float:
    # YAML 1.1 reads exponent-only floats such as 1e-6 as strings
    if isinstance(value, bool):
        raise ValueError(f"{key} must be a number.")
    try:
        return float(value)
    except (TypeError, ValueError) as err:
        raise ValueError(f"{key} must be a number.") from err


def _render(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ",".join(_render(v) for v in value)
    return str(value)


@dataclass
class RunConfig:
    """
    Effective configuration of one subcommand run, echoed into every output.

    Attributes:
        subcommand (str): CLI subcommand name.
        version (str): Package version.
        seed (Optional[int]): Root seed; recorded as 'none' for deterministic commands.
        j (Optional[float]): Spin label.
        state_path (Optional[str]): Input state file.
        samples (Optional[int]): Sample count.
        orders (Optional[List[int]]): Quadrature orders.
        out (Optional[str]): Output path.
        tolerances (Dict[str, float]): Tolerances in effect.
        settings (Dict[str, Any]): Remaining subcommand options.
    """

    subcommand: str
    version: str
    seed: Optional[int] = None
    j: Optional[float] = None
    state_path: Optional[str] = None
    samples: Optional[int] = None
    orders: Optional[List[int]] = None
    out: Optional[str] = None
    tolerances: Dict[str, float] = field(default_factory=dict)
    settings: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def header_lines(self) -> List[str]:
        """``# key: value`` lines in sorted key order; the seed line is always present."""
        flat: Dict[str, Any] = {}
        for key, value in self.to_dict().items():
            if key in ("tolerances", "settings"):
                flat.update(value)
            elif value is not None or key == "seed":
                flat[key] = "none" if value is None else value
        return [f"# {key}: {_render(flat[key])}" for key in sorted(flat)]
