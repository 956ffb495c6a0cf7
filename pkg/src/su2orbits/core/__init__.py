import logging
from pathlib import Path
from typing import Optional, Sequence, Union

from .config import Config, RunConfig
from .suite import CHECK_GROUPS, CheckResult, SuiteReport, VerificationError, VerificationSuite

"""
Core package for su2orbits.

This package holds the shared configuration and the verification suite that recomputes the
closed-form facts about spin orbits, coherent families and Heisenberg-Weyl moments.

Modules:
    - config: Tolerances, defaults and the per-run configuration echoed into outputs
    - suite: Named check groups and their report

Usage:
    from su2orbits.core import Config, load_config, run_verification
"""

logger = logging.getLogger(__name__)


def load_config(path: Optional[Union[str, Path]] = None) -> Config:
    """
    Load a configuration file, or the defaults when no path is given.

    Args:
        path: Optional YAML file.

    Returns:
        Config: Validated configuration.
    """
    if path is None:
        return Config()
    config = Config.load_from_yaml(path)
    logger.debug("Loaded configuration from %s", path)
    return config


def run_verification(
    only: Optional[Sequence[str]] = None, config: Optional[Config] = None
) -> SuiteReport:
    """
    Run the verification suite.

    Args:
        only: Optional subset of CHECK_GROUPS.
        config: Optional configuration; defaults apply otherwise.

    Raises:
        VerificationError: If a group name is unknown.

    Returns:
        SuiteReport: Results of every executed check.
    """
    return VerificationSuite(config, only=only).run()


__all__ = [
    "CHECK_GROUPS",
    "CheckResult",
    "Config",
    "RunConfig",
    "SuiteReport",
    "VerificationError",
    "VerificationSuite",
    "load_config",
    "run_verification",
]
