"""su2orbits - SU(2) orbits, coherent states and orbit-space invariants.

A Python package for classifying SU(2) orbits in spin-j projective state spaces,
evaluating orbit invariants, building coherent-state families and checking
Heisenberg-Weyl moment invariants, with a CLI for scans and verification.
"""

__version__ = "0.1.0"
__author__ = "Kolerr Lab"
__email__ = "ricky@kolerr.com"

from .cli import cli
from .core.config import Config
from .core.suite import VerificationSuite

__all__ = ["cli", "Config", "VerificationSuite"]
