"""Little algebras, orbit classification and orbit-space scans.

A ray |psi> has a one-dimensional projective little algebra exactly when it is an
eigenvector of some r.J. The test solves (r.J - T)|psi> = 0 for real (r, T) through the
singular values of the realified 2(2j+1) x 4 system.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from numpy.typing import NDArray
from tqdm import tqdm

from .invariant_engine import InvariantVector, invariants_f
from .projective_state import PureState, apply, canonicalize, eigenstate, ray_distance
from .realified_geometry import realify
from .spin_rep import SpinLike, SpinRep, exp_su2, exp_su2_batch, sample_haar_batch, two_j_of

logger = logging.getLogger(__name__)

DEFAULT_RANK_TOL = 1e-9
DEFAULT_F1_TOL = 1e-9
DEFAULT_FLIP_TOL = 1e-9
SCAN_BLOCK_SIZE = 256


class OrbitAnalysisError(ValueError):
    """Raised for invalid tolerances or sample counts."""

    pass


class UndefinedAxisError(OrbitAnalysisError):
    """Raised when the mean spin vanishes and no rotation axis is defined."""

    pass


class OrbitType(str, Enum):
    """Topological type of an orbit."""

    TWO_SPHERE = "TwoSphere"
    REAL_PROJECTIVE_PLANE = "RealProjectivePlane"
    THREE_DIM = "ThreeDim"


class SeedKind(str, Enum):
    """Origin of a scan row."""

    EIGEN = "eigen"
    RANDOM = "random"


@dataclass(frozen=True)
class LittleAlgebra:
    """
    Result of the eigen-direction test.

    Attributes:
        dim (int): Nullity of the realified system.
        singular_values (NDArray): Singular values, descending.
        axis (Optional[NDArray]): Unit r with r.J|psi> = eigenvalue |psi>, when dim >= 1.
        eigenvalue (Optional[float]): Eigenvalue along ``axis``, chosen non-negative.
        well_conditioned (bool): False when the singular-value gap is below 10 * tol.
    """

    dim: int
    singular_values: NDArray[np.float64]
    axis: Optional[NDArray[np.float64]]
    eigenvalue: Optional[float]
    well_conditioned: bool


@dataclass
class OrbitReport:
    """Classification of the orbit through one state."""

    little_algebra_dim: int
    orbit_dim: int
    orbit_type: OrbitType
    mean_spin: Tuple[float, float, float]
    f1: float
    pi_flip_fixed: Optional[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "little_algebra_dim": self.little_algebra_dim,
            "orbit_dim": self.orbit_dim,
            "orbit_type": self.orbit_type.value,
            "mean_spin": list(self.mean_spin),
            "f1": self.f1,
            "pi_flip_fixed": self.pi_flip_fixed,
        }


@dataclass(frozen=True)
class ScanRow:
    """One row of an orbit-space scan."""

    invariants: InvariantVector
    orbit_dim: int
    seed_kind: SeedKind

    def as_row(self) -> Tuple[Any, ...]:
        return (*self.invariants.as_tuple(), self.orbit_dim, self.seed_kind.value)


SCAN_HEADER = ("f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8", "orbit_dim", "seed_kind")


def little_algebra(rep: SpinRep, state: PureState, tol: float = DEFAULT_RANK_TOL) -> LittleAlgebra:
    """
    Solve (r.J - T)|psi> = 0 over real (r, T).

    Columns of the realified system are J_x psi, J_y psi, J_z psi and -psi; the nullity
    counts singular values below ``tol * sigma_max``.

    Raises:
        OrbitAnalysisError: If tol is outside (0, 1e-3].
    """
    if not 0.0 < tol <= 1e-3:
        raise OrbitAnalysisError(f"Rank tolerance must lie in (0, 1e-3], got {tol}")
    psi = state.amplitudes
    columns = [realify(g @ psi) for g in rep.generators] + [realify(-psi)]
    system = np.stack(columns, axis=1)
    _, singular_values, vt = np.linalg.svd(system)
    sigma_max = singular_values[0]
    nullity = int(np.sum(singular_values < tol * sigma_max))

    well_conditioned = True
    if nullity < len(singular_values):
        smallest_kept = singular_values[len(singular_values) - nullity - 1]
        if smallest_kept / sigma_max <= 10 * tol:
            well_conditioned = False
            logger.warning(
                "Singular-value gap %.3e is within 10*tol of the rank threshold; "
                "little-algebra dimension %d may be misclassified",
                smallest_kept / sigma_max,
                nullity,
            )

    axis: Optional[NDArray[np.float64]] = None
    eigenvalue: Optional[float] = None
    if nullity >= 1:
        null = vt[-1]
        direction, shift = null[:3], null[3]
        scale = float(np.linalg.norm(direction))
        axis = direction / scale
        eigenvalue = float(shift / scale)
        if eigenvalue < 0:
            axis, eigenvalue = -axis, -eigenvalue

    return LittleAlgebra(
        dim=nullity,
        singular_values=singular_values,
        axis=axis,
        eigenvalue=eigenvalue,
        well_conditioned=well_conditioned,
    )


def little_algebra_dim(rep: SpinRep, state: PureState, tol: float = DEFAULT_RANK_TOL) -> int:
    """Projective little-algebra dimension (0 or 1 for su(2))."""
    return little_algebra(rep, state, tol).dim


def mean_spin(rep: SpinRep, state: PureState) -> NDArray[np.float64]:
    """(<J_x>, <J_y>, <J_z>) with imaginary rounding residues dropped."""
    psi = state.amplitudes
    values = (rep.generators @ psi) @ psi.conj()
    return np.asarray(values.real, dtype=np.float64)


def pi_flip_fixes(
    rep: SpinRep,
    state: PureState,
    tol: float = DEFAULT_FLIP_TOL,
    f1_tol: float = DEFAULT_F1_TOL,
) -> bool:
    """
    Whether the rotation by pi about the mean-spin axis fixes the ray.

    Raises:
        UndefinedAxisError: If f1 <= f1_tol.
    """
    spin = mean_spin(rep, state)
    f1 = float(spin @ spin)
    if f1 <= f1_tol:
        raise UndefinedAxisError(f"Mean spin vanishes (f1={f1:.3e}); no rotation axis")
    axis = spin / np.sqrt(f1)
    rotated = apply(exp_su2(rep, np.pi * axis), state)
    return ray_distance(rotated, state) < tol


def classify_orbit(
    rep: SpinRep,
    state: PureState,
    rank_tol: float = DEFAULT_RANK_TOL,
    f1_tol: float = DEFAULT_F1_TOL,
    flip_tol: float = DEFAULT_FLIP_TOL,
) -> OrbitReport:
    """
    Classify the orbit through ``state``.

    Dimension-1 little algebras give TwoSphere when f1 > f1_tol and RealProjectivePlane
    otherwise; dimension 0 gives ThreeDim. The pi-flip test runs only when f1 > f1_tol
    and compares ray distances against flip_tol.
    """
    la_dim = little_algebra_dim(rep, state, rank_tol)
    spin = mean_spin(rep, state)
    f1 = float(spin @ spin)
    if la_dim >= 1:
        orbit_type = OrbitType.TWO_SPHERE if f1 > f1_tol else OrbitType.REAL_PROJECTIVE_PLANE
    else:
        orbit_type = OrbitType.THREE_DIM
    flip = pi_flip_fixes(rep, state, flip_tol, f1_tol) if f1 > f1_tol else None
    return OrbitReport(
        little_algebra_dim=la_dim,
        orbit_dim=3 - la_dim,
        orbit_type=orbit_type,
        mean_spin=(float(spin[0]), float(spin[1]), float(spin[2])),
        f1=f1,
        pi_flip_fixed=flip,
    )


def orbit_vectors(
    rep: SpinRep, fiducial: PureState, n: int, rng: np.random.Generator
) -> NDArray[np.complex128]:
    """
    Raw amplitudes U(g_k)|fiducial> for n Haar-random g_k, shape (n, 2j+1).

    Raises:
        OrbitAnalysisError: If n < 1.
    """
    if n < 1:
        raise OrbitAnalysisError(f"Sample count must be at least 1, got {n}")
    unitaries = exp_su2_batch(rep, sample_haar_batch(rng, n))
    return np.asarray(unitaries @ fiducial.amplitudes)


def orbit_sample(
    rep: SpinRep, fiducial: PureState, n: int, rng: np.random.Generator
) -> List[PureState]:
    """n canonical points U(g_k)|fiducial> with Haar-random g_k."""
    return [canonicalize(vec, rep.two_j / 2) for vec in orbit_vectors(rep, fiducial, n, rng)]


def eigen_seeds(rep: SpinRep) -> List[PureState]:
    """|m> for m = j, j-1, ..., down to 0 or 1/2."""
    two_ms = range(rep.two_j, rep.two_j % 2 - 1, -2)
    return [eigenstate(rep, two_m / 2) for two_m in two_ms]


def _scan_row(rep: SpinRep, state: PureState, kind: SeedKind, rank_tol: float) -> ScanRow:
    return ScanRow(
        invariants=invariants_f(rep, state),
        orbit_dim=3 - little_algebra_dim(rep, state, rank_tol),
        seed_kind=kind,
    )


def _scan_block(
    rep: SpinRep, seed_seq: np.random.SeedSequence, count: int, rank_tol: float
) -> List[ScanRow]:
    rng = np.random.default_rng(seed_seq)
    gauss = rng.standard_normal((count, rep.dim)) + 1j * rng.standard_normal((count, rep.dim))
    return [
        _scan_row(rep, canonicalize(vec, rep.two_j / 2), SeedKind.RANDOM, rank_tol)
        for vec in gauss
    ]


def scan_orbit_space(
    rep: SpinRep,
    n_random: int,
    seed: Union[int, np.random.SeedSequence],
    workers: int = 1,
    progress: bool = False,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> List[ScanRow]:
    """
    Invariant rows for the eigen seeds followed by n_random Fubini-Study random states.

    Random states come in fixed blocks of 256, each drawing from its own stream spawned
    from ``SeedSequence(seed)`` by block index, so rows are identical for any ``workers``.

    Args:
        rep: Spin representation.
        n_random: Number of random states.
        seed: Root seed.
        workers: Thread count.
        progress: Show a tqdm progress bar on stderr.
        rank_tol: Rank tolerance for the orbit dimension.

    Raises:
        OrbitAnalysisError: If n_random < 0 or workers < 1.

    Returns:
        List[ScanRow]: int(j+1) eigen rows, then n_random random rows.
    """
    if n_random < 0:
        raise OrbitAnalysisError(f"n_random must be non-negative, got {n_random}")
    if workers < 1:
        raise OrbitAnalysisError(f"workers must be at least 1, got {workers}")

    rows = [_scan_row(rep, state, SeedKind.EIGEN, rank_tol) for state in eigen_seeds(rep)]

    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    n_blocks = math.ceil(n_random / SCAN_BLOCK_SIZE)
    children = root.spawn(n_blocks)
    counts = [min(SCAN_BLOCK_SIZE, n_random - k * SCAN_BLOCK_SIZE) for k in range(n_blocks)]

    logger.info(
        "Scanning j=%s: %d random states in %d blocks on %d workers",
        rep.label(),
        n_random,
        n_blocks,
        workers,
    )
    with ThreadPoolExecutor(max_workers=workers) as pool, tqdm(
        total=n_random, disable=not progress, desc="scan", unit="state"
    ) as bar:
        blocks = pool.map(
            lambda args: _scan_block(rep, args[0], args[1], rank_tol), zip(children, counts)
        )
        for block in blocks:
            rows.extend(block)
            bar.update(len(block))
    return rows


def orbit_space_dimension(j: SpinLike) -> int:
    """Real dimension of the principal stratum of CP^(2j)/SU(2): 4j - 3, or 0 for j = 1/2."""
    two_j = two_j_of(j)
    return 0 if two_j == 1 else 2 * two_j - 3


def two_dim_orbits(j: SpinLike) -> List[Tuple[float, float, OrbitType]]:
    """
    The int(j+1) two-dimensional orbits as (m, f1 = m^2, type).

    Only m = 0, present for integer j, is a real projective plane.
    """
    two_j = two_j_of(j)
    orbits = []
    for two_m in range(two_j, two_j % 2 - 1, -2):
        m = two_m / 2
        kind = OrbitType.TWO_SPHERE if two_m else OrbitType.REAL_PROJECTIVE_PLANE
        orbits.append((m, m * m, kind))
    return orbits


def align_mean_spin(rep: SpinRep, state: PureState) -> PureState:
    """Rotate ``state`` within its orbit so that its mean spin points along +z."""
    spin = mean_spin(rep, state)
    length = float(np.linalg.norm(spin))
    if length <= np.sqrt(DEFAULT_F1_TOL):
        return state
    target = spin / length
    # R(r) e_z = target; the mean spin then maps to R^T spin = |spin| e_z
    axis = np.cross([0.0, 0.0, 1.0], target)
    sin_angle = float(np.linalg.norm(axis))
    angle = float(np.arctan2(sin_angle, target[2]))
    if sin_angle < 1e-12:
        r = np.zeros(3) if target[2] > 0 else np.array([np.pi, 0.0, 0.0])
    else:
        r = angle * axis / sin_angle
    return apply(exp_su2(rep, r), state)


def j1_theta(rep: SpinRep, state: PureState) -> float:
    """
    Label theta in [0, pi/4] of the spin-1 orbit through ``state``.

    The orbit contains |theta> = (cos theta, 0, sin theta), with f1 = cos^2(2 theta).
    """
    if rep.two_j != 2:
        raise OrbitAnalysisError(f"theta labels exist for j=1 only, got j={rep.j}")
    spin = mean_spin(rep, state)
    root = float(np.sqrt(np.clip(spin @ spin, 0.0, 1.0)))
    return 0.5 * float(np.arccos(root))
