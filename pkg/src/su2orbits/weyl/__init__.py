"""
Heisenberg-Weyl orbits on a truncated Fock space.

Modules:
    - fock: ladder operators, Weyl displacements, Glauber and finite Fock states
    - moments: centered moment invariants, orbit invariance and Robertson reporting
"""

from .fock import (
    FockError,
    FockRep,
    FockState,
    TruncationError,
    build_fock,
    displacement,
    fock_state,
    fock_superposition,
    glauber,
    number_state,
)
from .moments import (
    MomentOrderError,
    MomentTable,
    RobertsonRecord,
    centered_fiducial,
    group_law_defect,
    moment,
    moment_table,
    robertson_check,
    translation_defect,
    weyl_orbit_invariance,
)

__all__ = [
    "FockError",
    "FockRep",
    "FockState",
    "MomentOrderError",
    "MomentTable",
    "RobertsonRecord",
    "TruncationError",
    "build_fock",
    "centered_fiducial",
    "displacement",
    "fock_state",
    "fock_superposition",
    "glauber",
    "group_law_defect",
    "moment",
    "moment_table",
    "number_state",
    "robertson_check",
    "translation_defect",
    "weyl_orbit_invariance",
]
