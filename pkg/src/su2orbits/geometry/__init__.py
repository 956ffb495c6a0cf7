"""
SU(2) orbit geometry for spin-j projective state spaces.

Modules:
    - spin_rep: generator matrices, exponentiation and Haar sampling
    - projective_state: canonical rays, ray distance and octant coordinates
    - invariant_engine: invariants f1..f8 and structure-constant chains
    - orbit_analysis: little algebras, orbit classification and scans
    - realified_geometry: realified gradients and the spin-1 P matrix
    - su2_coherent: coherent families, identity quadrature and spin uncertainty
"""

from .invariant_engine import (
    ChainSpec,
    ChainSpecError,
    InvariantError,
    InvariantVector,
    chain_invariant,
    generator_moments,
    invariants_f,
    j1_f1_chart,
    mean_chain,
)
from .orbit_analysis import (
    OrbitAnalysisError,
    OrbitReport,
    OrbitType,
    ScanRow,
    SeedKind,
    UndefinedAxisError,
    align_mean_spin,
    classify_orbit,
    little_algebra,
    little_algebra_dim,
    mean_spin,
    orbit_sample,
    orbit_space_dimension,
    orbit_vectors,
    pi_flip_fixes,
    scan_orbit_space,
    two_dim_orbits,
)
from .projective_state import (
    OctantCoords,
    OctantPoint,
    PureState,
    StateError,
    canonicalize,
    eigenstate,
    octant_coords,
    octant_projection_batch,
    octant_projection_j1,
    random_state,
    ray_distance,
    theta_state,
)
from .realified_geometry import (
    PMatrix,
    PMatrixMismatchError,
    Stratum,
    grad_invariant,
    p_matrix,
    psd_classify,
    realify,
    unrealify,
)
from .spin_rep import (
    SpinRep,
    SpinRepError,
    adjoint_rotation,
    build_rep,
    exp_su2,
    rotation_about,
    sample_haar,
    two_j_of,
)
from .su2_coherent import (
    CoherentFamilySpec,
    IdentityCheck,
    OrbitFamily,
    identity_defect,
    j1_orbit_family,
    spin_coherent_general,
    spin_coherent_highest,
    uncertainty_gap,
)

__all__ = [
    "ChainSpec",
    "ChainSpecError",
    "CoherentFamilySpec",
    "IdentityCheck",
    "InvariantError",
    "InvariantVector",
    "OctantCoords",
    "OctantPoint",
    "OrbitAnalysisError",
    "OrbitFamily",
    "OrbitReport",
    "OrbitType",
    "PMatrix",
    "PMatrixMismatchError",
    "PureState",
    "ScanRow",
    "SeedKind",
    "SpinRep",
    "SpinRepError",
    "StateError",
    "Stratum",
    "UndefinedAxisError",
    "adjoint_rotation",
    "align_mean_spin",
    "build_rep",
    "canonicalize",
    "chain_invariant",
    "classify_orbit",
    "eigenstate",
    "exp_su2",
    "generator_moments",
    "grad_invariant",
    "identity_defect",
    "invariants_f",
    "j1_f1_chart",
    "j1_orbit_family",
    "little_algebra",
    "little_algebra_dim",
    "mean_chain",
    "mean_spin",
    "octant_coords",
    "octant_projection_batch",
    "octant_projection_j1",
    "orbit_sample",
    "orbit_space_dimension",
    "orbit_vectors",
    "p_matrix",
    "pi_flip_fixes",
    "psd_classify",
    "random_state",
    "ray_distance",
    "realify",
    "rotation_about",
    "sample_haar",
    "scan_orbit_space",
    "spin_coherent_general",
    "spin_coherent_highest",
    "theta_state",
    "two_dim_orbits",
    "two_j_of",
    "uncertainty_gap",
    "unrealify",
]
