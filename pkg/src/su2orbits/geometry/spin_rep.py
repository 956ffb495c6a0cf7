"""Spin-j irreducible representations of su(2).

Builds the generator matrices J_x, J_y, J_z, J_+ and J_- in the |j, m> basis with m
descending, exponentiates Lie-algebra elements into unitary group elements and draws
Haar-uniform SU(2) elements. hbar is fixed to 1 throughout the SU(2) modules.

Spins are carried as the integer ``two_j = 2j`` so that half-integers never go through
float equality.

Example usage:

    rep = build_rep(1)
    u = exp_su2(rep, rotation_about((1.0, 0.0, 0.0), np.pi))
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.spatial.transform import Rotation

logger = logging.getLogger(__name__)

SpinLike = Union[int, float, Fraction, str]

AXIS_TOLERANCE = 1e-12


class SpinRepError(ValueError):
    """Raised for invalid spin labels, axes or canonical coordinates."""

    pass


def two_j_of(j: SpinLike) -> int:
    """
    Convert a spin label to the integer 2j.

    Args:
        j: Spin as an int, float, Fraction or string such as ``"3/2"`` or ``"1.5"``.

    Raises:
        SpinRepError: If j is not a positive half-integer.

    Returns:
        int: The integer 2j.
    """
    try:
        doubled = 2 * Fraction(j).limit_denominator(1000)
    except (TypeError, ValueError, ZeroDivisionError) as err:
        raise SpinRepError(f"Invalid spin label: {j!r}") from err
    if doubled.denominator != 1 or abs(float(doubled) - 2 * float(Fraction(j))) > 1e-9:
        raise SpinRepError(f"Spin must be a half-integer, got {j!r}")
    two_j = int(doubled)
    if two_j <= 0:
        raise SpinRepError(f"Spin must be positive, got {j!r}")
    return two_j


def spin_label(two_j: int) -> str:
    """Render 2j as ``"1"`` or ``"3/2"``."""
    return str(two_j // 2) if two_j % 2 == 0 else f"{two_j}/2"


@dataclass(frozen=True, eq=False)
class SpinRep:
    """
    Generator matrices of the spin-j irreducible representation.

    Attributes:
        two_j (int): Twice the spin label.
        jx, jy, jz (NDArray): Hermitian generators, shape (dim, dim).
        jplus, jminus (NDArray): Ladder operators J_+ = J_x + iJ_y and J_- = J_x - iJ_y.
    """

    two_j: int
    jx: NDArray[np.complex128]
    jy: NDArray[np.complex128]
    jz: NDArray[np.complex128]
    jplus: NDArray[np.complex128]
    jminus: NDArray[np.complex128]

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def dim(self) -> int:
        return self.two_j + 1

    @property
    def generators(self) -> NDArray[np.complex128]:
        """Stacked (J_x, J_y, J_z), shape (3, dim, dim)."""
        return np.stack((self.jx, self.jy, self.jz))

    @property
    def m_values(self) -> NDArray[np.float64]:
        """Magnetic quantum numbers in basis order j, j-1, ..., -j."""
        return (self.two_j - 2 * np.arange(self.dim)) / 2.0

    def casimir(self) -> NDArray[np.complex128]:
        """J_x^2 + J_y^2 + J_z^2."""
        return self.jx @ self.jx + self.jy @ self.jy + self.jz @ self.jz

    def label(self) -> str:
        return spin_label(self.two_j)


def _frozen(matrix: NDArray[np.complex128]) -> NDArray[np.complex128]:
    matrix.setflags(write=False)
    return matrix


def build_rep(j: SpinLike) -> SpinRep:
    """
    Build the spin-j representation from the ladder formula.

    <m+1|J_+|m> = sqrt(j(j+1) - m(m+1)), basis ordered m = j, j-1, ..., -j.

    Args:
        j: Positive half-integer spin.

    Raises:
        SpinRepError: If j is not a positive half-integer.

    Returns:
        SpinRep: The generators.
    """
    two_j = two_j_of(j)
    dim = two_j + 1
    spin = two_j / 2.0
    m = (two_j - 2 * np.arange(dim)) / 2.0

    # jplus[k-1, k] raises m_k to m_k + 1
    ladder = np.sqrt(spin * (spin + 1) - m[1:] * (m[1:] + 1))
    jplus = np.diag(ladder, k=1).astype(np.complex128)
    jminus = jplus.T.copy()
    jx = 0.5 * (jplus + jminus)
    jy = -0.5j * (jplus - jminus)
    jz = np.diag(m).astype(np.complex128)

    logger.debug("Built spin-%s representation of dimension %d", spin_label(two_j), dim)
    return SpinRep(
        two_j=two_j,
        jx=_frozen(jx),
        jy=_frozen(jy),
        jz=_frozen(jz),
        jplus=_frozen(jplus),
        jminus=_frozen(jminus),
    )


def _coords(r: ArrayLike) -> NDArray[np.float64]:
    vec = np.asarray(r, dtype=np.float64)
    if vec.shape != (3,) or not np.all(np.isfinite(vec)):
        raise SpinRepError(f"Canonical coordinates must be a finite 3-vector, got {r!r}")
    return vec


def exp_su2(rep: SpinRep, r: ArrayLike) -> NDArray[np.complex128]:
    """
    Unitary U = exp(i r.J) by spectral decomposition of the Hermitian r.J.

    Args:
        rep: Spin representation.
        r: Canonical coordinates, a real 3-vector.

    Returns:
        NDArray: The (dim, dim) unitary.
    """
    vec = _coords(r)
    generator = np.tensordot(vec, rep.generators, axes=1)
    eigenvalues, eigenvectors = np.linalg.eigh(generator)
    return (eigenvectors * np.exp(1j * eigenvalues)) @ eigenvectors.conj().T


def exp_su2_batch(rep: SpinRep, rs: ArrayLike) -> NDArray[np.complex128]:
    """Vectorized exp_su2 over an (n, 3) array of coordinates."""
    coords = np.asarray(rs, dtype=np.float64).reshape(-1, 3)
    generators = np.einsum("ni,iab->nab", coords, rep.generators)
    eigenvalues, eigenvectors = np.linalg.eigh(generators)
    return np.einsum(
        "nab,nb,ncb->nac", eigenvectors, np.exp(1j * eigenvalues), eigenvectors.conj()
    )


def j1_closed_form_unitary(r: ArrayLike) -> NDArray[np.complex128]:
    """
    Closed-form spin-1 group element.

    U(r) = 1 + i (sin r / r) A + ((cos r - 1) / r^2) A^2 with A = r.J written as
    [[z, c*, 0], [c, 0, c*], [0, c, -z]], c = (x + iy)/sqrt(2). Uses A^3 = r^2 A.
    """
    x, y, z = _coords(r)
    norm = float(np.sqrt(x * x + y * y + z * z))
    c = (x + 1j * y) / np.sqrt(2.0)
    a = np.array(
        [[z, np.conj(c), 0.0], [c, 0.0, np.conj(c)], [0.0, c, -z]], dtype=np.complex128
    )
    # sinc form stays finite at r = 0
    sin_ratio = np.sinc(norm / np.pi)
    cos_ratio = -0.5 * np.sinc(norm / (2 * np.pi)) ** 2
    return np.eye(3, dtype=np.complex128) + 1j * sin_ratio * a + cos_ratio * (a @ a)


def rotation_about(axis: Sequence[float], angle: float) -> NDArray[np.float64]:
    """
    Canonical coordinates of a rotation by ``angle`` about a unit ``axis``.

    Raises:
        SpinRepError: If the axis is not a unit 3-vector within 1e-12.
    """
    vec = _coords(axis)
    if abs(float(np.linalg.norm(vec)) - 1.0) > AXIS_TOLERANCE:
        raise SpinRepError(f"Rotation axis must have unit length, got |axis|={np.linalg.norm(vec)}")
    return float(angle) * vec


def adjoint_rotation(r: ArrayLike) -> NDArray[np.float64]:
    """
    3x3 rotation R(r) of the adjoint action.

    U(r)^dagger (n.J) U(r) = (R(r) n).J for U(r) = exp(i r.J).
    """
    return np.asarray(Rotation.from_rotvec(_coords(r)).as_matrix())


def sample_haar_batch(rng: np.random.Generator, n: int) -> NDArray[np.float64]:
    """
    Draw n Haar-uniform SU(2) elements as canonical coordinates, shape (n, 3).

    A standard Gaussian 4-vector normalized to a unit quaternion (w, v) maps to
    r = 2 atan2(|v|, w) v/|v|, with r = 0 when v vanishes.
    """
    gauss = rng.standard_normal((n, 4))
    quaternions = gauss / np.linalg.norm(gauss, axis=1, keepdims=True)
    w = quaternions[:, 0]
    v = quaternions[:, 1:]
    v_norm = np.linalg.norm(v, axis=1)
    angle = 2.0 * np.arctan2(v_norm, w)
    scale = np.divide(angle, v_norm, out=np.zeros_like(angle), where=v_norm > 0)
    return v * scale[:, None]


def sample_haar(rng: np.random.Generator) -> NDArray[np.float64]:
    """Single Haar-uniform SU(2) element as canonical coordinates."""
    return sample_haar_batch(rng, 1)[0]
