"""Rays in CP^(2j): canonical representatives, ray distance and octant coordinates.

A ray is stored as its unit-norm representative whose first nonzero amplitude (in basis
order m = j, ..., -j) is real and non-negative. The octant picture writes a ray as moduli
on the positive octant of the unit sphere plus relative phases on a torus fibre.
"""

import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.spatial import ConvexHull

from .spin_rep import SpinLike, SpinRep, two_j_of

logger = logging.getLogger(__name__)

# Amplitudes below this modulus do not carry the canonical phase.
PHASE_CUTOFF = 1e-12
# Amplitudes at or below this modulus report relative phase 0.
ZERO_MODULUS = 1e-14


class StateError(ValueError):
    """Raised for zero vectors, wrong lengths or out-of-range magnetic numbers."""

    pass


@dataclass(frozen=True, eq=False)
class PureState:
    """
    Canonical representative of a ray in CP^(2j).

    Attributes:
        two_j (int): Twice the spin label.
        amplitudes (NDArray): Unit-norm complex vector in the |j, m> basis, m descending.
    """

    two_j: int
    amplitudes: NDArray[np.complex128]

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def dim(self) -> int:
        return self.two_j + 1

    def __len__(self) -> int:
        return self.dim


class OctantCoords(NamedTuple):
    """Moduli on the octant and phases relative to the ``reference`` amplitude."""

    moduli: NDArray[np.float64]
    rel_phases: NDArray[np.float64]
    reference: int


class OctantPoint(NamedTuple):
    """Spin-1 octant projection: |Z_1|, |Z_2| and the rotated pair (u, v)."""

    abs_z1: float
    abs_z2: float
    u: float
    v: float


def canonicalize(raw: ArrayLike, j: SpinLike) -> PureState:
    """
    Return the unit-norm, phase-canonical representative of the ray through ``raw``.

    Args:
        raw: Complex amplitudes of length 2j+1.
        j: Spin label.

    Raises:
        StateError: If the vector is zero, non-finite or has the wrong length.

    Returns:
        PureState: Canonical representative.
    """
    two_j = two_j_of(j)
    vec = np.asarray(raw, dtype=np.complex128).ravel()
    if vec.shape[0] != two_j + 1:
        raise StateError(f"Expected {two_j + 1} amplitudes for j={two_j / 2}, got {vec.shape[0]}")
    if not np.all(np.isfinite(vec)):
        raise StateError("Amplitudes must be finite")
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise StateError("The zero vector does not define a ray")

    vec = vec / norm
    moduli = np.abs(vec)
    lead = int(np.argmax(moduli > PHASE_CUTOFF))
    vec = vec * (np.conj(vec[lead]) / moduli[lead])
    vec[lead] = moduli[lead]
    vec.setflags(write=False)
    return PureState(two_j=two_j, amplitudes=vec)


def random_state(j: SpinLike, rng: np.random.Generator) -> PureState:
    """Fubini-Study uniform ray: complex standard Gaussian vector, canonicalized."""
    dim = two_j_of(j) + 1
    return canonicalize(rng.standard_normal(dim) + 1j * rng.standard_normal(dim), j)


def apply(unitary: NDArray[np.complex128], state: PureState) -> PureState:
    """Act with a unitary on a ray."""
    return canonicalize(unitary @ state.amplitudes, state.two_j / 2)


def ray_distance(a: PureState, b: PureState) -> float:
    """
    sqrt(1 - |<a|b>|^2), evaluated as the norm of the component of b orthogonal to a.

    Raises:
        StateError: If the states belong to different spins.
    """
    if a.two_j != b.two_j:
        raise StateError(f"Dimension mismatch: {a.dim} vs {b.dim}")
    overlap = np.vdot(a.amplitudes, b.amplitudes)
    residual = b.amplitudes - overlap * a.amplitudes
    return float(min(1.0, np.linalg.norm(residual)))


def eigenstate(rep: SpinRep, m: SpinLike) -> PureState:
    """
    Basis vector |j, m>.

    Raises:
        StateError: If m is not one of j, j-1, ..., -j.
    """
    two_m = 2 * float(m)
    if abs(two_m - round(two_m)) > 1e-9:
        raise StateError(f"m must be a half-integer, got {m!r}")
    two_m_int = int(round(two_m))
    if abs(two_m_int) > rep.two_j or (rep.two_j - two_m_int) % 2:
        raise StateError(f"m={m} out of range for j={rep.j}")
    vec = np.zeros(rep.dim, dtype=np.complex128)
    vec[(rep.two_j - two_m_int) // 2] = 1.0
    return canonicalize(vec, rep.two_j / 2)


def theta_state(theta: float) -> PureState:
    """Spin-1 orbit representative |theta> = (cos theta, 0, sin theta)."""
    return canonicalize([np.cos(theta), 0.0, np.sin(theta)], 1)


def octant_coords(state: PureState) -> OctantCoords:
    """
    Moduli and phases relative to the first amplitude of largest modulus.

    Phases lie in [0, 2pi); the reference is dropped from ``rel_phases``.
    """
    amps = state.amplitudes
    moduli = np.abs(amps)
    reference = int(np.argmax(moduli))
    phases = np.mod(np.angle(amps) - np.angle(amps[reference]), 2 * np.pi)
    phases[phases >= 2 * np.pi] = 0.0
    phases[moduli <= ZERO_MODULUS] = 0.0
    return OctantCoords(
        moduli=moduli, rel_phases=np.delete(phases, reference), reference=reference
    )


def octant_projection_j1(state: PureState) -> OctantPoint:
    """
    Spin-1 octant projection onto the |Z_1|, |Z_2| quarter plane.

    Z_1 and Z_2 are the amplitudes of |1> and |-1>; Z_0 belongs to |0>.

    Raises:
        StateError: If the state is not spin 1.
    """
    if state.two_j != 2:
        raise StateError(f"Octant projection is defined for j=1 only, got j={state.j}")
    abs_z1 = float(abs(state.amplitudes[0]))
    abs_z2 = float(abs(state.amplitudes[2]))
    root2 = np.sqrt(2.0)
    return OctantPoint(
        abs_z1=abs_z1,
        abs_z2=abs_z2,
        u=(abs_z1 + abs_z2) / root2,
        v=(abs_z1 - abs_z2) / root2,
    )


def theta_orbit_rectangle(theta: float) -> Tuple[float, float, float, float]:
    """
    Rectangle (u_min, u_max, v_min, v_max) covered by the orbit of |theta>.

    u spans [b, a] and v spans [-b, b] with a = sqrt((1 + sin 2theta)/2) and
    b = sqrt((1 - sin 2theta)/2).
    """
    s = float(np.sin(2 * theta))
    a = float(np.sqrt((1 + s) / 2))
    b = float(np.sqrt(max(0.0, (1 - s) / 2)))
    return b, a, -b, b


def rectangle_fill_ratio(
    points: ArrayLike, box: Optional[Tuple[float, float, float, float]] = None
) -> float:
    """
    Convex-hull area of a planar point set divided by its bounding-box area.

    Args:
        points: Array of shape (n, 2).
        box: Optional (x_min, x_max, y_min, y_max); defaults to the points' own box.

    Returns:
        float: Fill ratio, 0 for degenerate point sets.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if box is None:
        box = (
            float(pts[:, 0].min()),
            float(pts[:, 0].max()),
            float(pts[:, 1].min()),
            float(pts[:, 1].max()),
        )
    box_area = (box[1] - box[0]) * (box[3] - box[2])
    if box_area <= 0.0 or len(pts) < 3:
        return 0.0
    hull = ConvexHull(pts)
    # ConvexHull.volume is the enclosed area in two dimensions
    return float(hull.volume / box_area)


def octant_projection_batch(vectors: ArrayLike) -> NDArray[np.float64]:
    """
    Octant projection of many spin-1 vectors at once.

    Args:
        vectors: Array of shape (n, 3); rows need not be canonical or normalized.

    Returns:
        NDArray: Columns (abs_z1, abs_z2, u, v), shape (n, 4).
    """
    vecs = np.asarray(vectors, dtype=np.complex128).reshape(-1, 3)
    vecs = vecs / np.linalg.norm(vecs, axis=1, keepdims=True)
    abs_z1 = np.abs(vecs[:, 0])
    abs_z2 = np.abs(vecs[:, 2])
    root2 = np.sqrt(2.0)
    return np.column_stack((abs_z1, abs_z2, (abs_z1 + abs_z2) / root2, (abs_z1 - abs_z2) / root2))
