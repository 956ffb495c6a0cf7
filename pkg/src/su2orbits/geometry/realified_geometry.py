"""Realified coordinates, invariant gradients and the spin-1 gradient Gram matrix.

A complex vector Z in C^(2j+1) is viewed as x = (Re Z, Im Z) in R^(2(2j+1)). On these
coordinates f0 = |x|^2 and the homogeneous (degree four) extension of f1,
f1(x) = sum_i (x^T G_i x)^2 with G_i the realification of J_i, have analytic gradients.
Their Gram matrix P decides the orbit-space stratum for j = 1.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .projective_state import PureState
from .spin_rep import SpinRep

logger = logging.getLogger(__name__)

RealifiedVector = NDArray[np.float64]

P_MATRIX_RTOL = 1e-8
RANK_TOL = 1e-9


class RealifiedGeometryError(ValueError):
    """Raised for unsupported spins or malformed realified vectors."""

    pass


class PMatrixMismatchError(RuntimeError):
    """The gradient-built P matrix disagrees with its closed form."""

    pass


class Stratum(str, Enum):
    """Spin-1 orbit-space strata in the (f0, f1) plane."""

    PRINCIPAL = "Principal"
    BOUNDARY = "Boundary"
    ORIGIN = "Origin"
    OUTSIDE = "Outside"


class GradientTarget(str, Enum):
    F0 = "f0"
    F1 = "f1"


@dataclass(frozen=True)
class PMatrix:
    """Symmetric 2x2 Gram matrix of the gradients of f0 and f1."""

    entries: NDArray[np.float64]
    rank: int
    psd: bool


@dataclass(frozen=True)
class PsdClassification:
    stratum: Stratum
    rank: int


def realify(amplitudes: Union[PureState, ArrayLike]) -> RealifiedVector:
    """(Re Z_0, ..., Re Z_N, Im Z_0, ..., Im Z_N)."""
    vec = amplitudes.amplitudes if isinstance(amplitudes, PureState) else amplitudes
    z = np.asarray(vec, dtype=np.complex128).ravel()
    if z.size == 0:
        raise RealifiedGeometryError("Cannot realify an empty vector")
    return np.concatenate((z.real, z.imag))


def unrealify(x: ArrayLike) -> NDArray[np.complex128]:
    """Inverse of realify."""
    arr = np.asarray(x, dtype=np.float64).ravel()
    if arr.size == 0 or arr.size % 2:
        raise RealifiedGeometryError(
            f"Realified vector must have even positive length, got {arr.size}"
        )
    half = arr.size // 2
    return arr[:half] + 1j * arr[half:]


def realify_operator(matrix: ArrayLike) -> NDArray[np.float64]:
    """Real 2n x 2n matrix [[A, -B], [B, A]] of a complex matrix A + iB."""
    op = np.asarray(matrix, dtype=np.complex128)
    a, b = op.real, op.imag
    return np.block([[a, -b], [b, a]])


def _check_x(rep: SpinRep, x: ArrayLike) -> RealifiedVector:
    arr = np.asarray(x, dtype=np.float64).ravel()
    if arr.size != 2 * rep.dim:
        raise RealifiedGeometryError(
            f"Expected a realified vector of length {2 * rep.dim}, got {arr.size}"
        )
    return arr


def _realified_generators(rep: SpinRep) -> NDArray[np.float64]:
    return np.stack([realify_operator(g) for g in rep.generators])


def f0_value(x: ArrayLike) -> float:
    arr = np.asarray(x, dtype=np.float64).ravel()
    return float(arr @ arr)


def f1_homogeneous(rep: SpinRep, x: ArrayLike) -> float:
    """f1 without normalization: sum_i <psi|J_i|psi>^2, degree four in x."""
    arr = _check_x(rep, x)
    means = np.einsum("a,iab,b->i", arr, _realified_generators(rep), arr)
    return float(means @ means)


def grad_invariant(
    which: Union[str, GradientTarget], rep: SpinRep, x: ArrayLike
) -> RealifiedVector:
    """
    Euclidean gradient of f0 or f1 in realified coordinates.

    grad f0 = 2x and grad f1 = 4 sum_i g_i G_i x with g_i = x^T G_i x.

    Raises:
        RealifiedGeometryError: For an unknown target or wrong length.
    """
    try:
        target = GradientTarget(which)
    except ValueError as err:
        raise RealifiedGeometryError(f"Unknown invariant {which!r}; expected f0 or f1") from err
    arr = _check_x(rep, x)
    if target is GradientTarget.F0:
        return 2.0 * arr
    generators = _realified_generators(rep)
    applied = generators @ arr  # G_i x
    means = applied @ arr
    return np.asarray(4.0 * (means @ applied))


def closed_form_p(f0: float, f1: float) -> NDArray[np.float64]:
    """Spin-1 closed form [[4 f0, 8 f1], [8 f1, 16 f0 f1]]."""
    return np.array([[4.0 * f0, 8.0 * f1], [8.0 * f1, 16.0 * f0 * f1]])


def _rank_and_psd(matrix: NDArray[np.float64], tol: float) -> Tuple[int, bool]:
    eigenvalues = np.linalg.eigvalsh(matrix)
    scale = max(float(np.max(np.abs(eigenvalues))), 1e-300)
    rank = int(np.sum(np.abs(eigenvalues) > tol * scale))
    psd = bool(np.min(eigenvalues) >= -tol * scale)
    return rank, psd


def p_matrix(rep: SpinRep, x: ArrayLike, rtol: float = P_MATRIX_RTOL) -> PMatrix:
    """
    Gradient Gram matrix P for a spin-1 point, checked against the closed form.

    Raises:
        RealifiedGeometryError: If j != 1.
        PMatrixMismatchError: If the relative Frobenius deviation exceeds ``rtol``.
    """
    if rep.two_j != 2:
        raise RealifiedGeometryError(
            f"P matrix closed form is available for j=1 only, got j={rep.j}"
        )
    arr = _check_x(rep, x)
    g0 = grad_invariant(GradientTarget.F0, rep, arr)
    g1 = grad_invariant(GradientTarget.F1, rep, arr)
    entries = np.array([[g0 @ g0, g0 @ g1], [g1 @ g0, g1 @ g1]])

    expected = closed_form_p(f0_value(arr), f1_homogeneous(rep, arr))
    deviation = float(np.linalg.norm(entries - expected))
    scale = max(float(np.linalg.norm(expected)), 1e-300)
    if deviation > rtol * scale:
        raise PMatrixMismatchError(
            f"P matrix deviates from closed form by {deviation / scale:.3e} (relative)"
        )

    rank, psd = _rank_and_psd(entries, RANK_TOL)
    return PMatrix(entries=entries, rank=rank, psd=psd)


def psd_classify(f0: float, f1: float, tol: float = 1e-12) -> PsdClassification:
    """
    Stratum of the point (f0, f1) from the closed-form P matrix.

    Both eigenvalues positive gives Principal, a zero matrix gives Origin, any negative
    eigenvalue gives Outside and a positive semi-definite rank-1 matrix gives Boundary.
    """
    matrix = closed_form_p(f0, f1)
    eigenvalues = np.linalg.eigvalsh(matrix)
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    threshold = tol * scale
    if np.all(np.abs(eigenvalues) <= threshold):
        return PsdClassification(Stratum.ORIGIN, 0)
    if np.any(eigenvalues < -threshold):
        return PsdClassification(Stratum.OUTSIDE, int(np.sum(np.abs(eigenvalues) > threshold)))
    rank = int(np.sum(eigenvalues > threshold))
    return PsdClassification(Stratum.PRINCIPAL if rank == 2 else Stratum.BOUNDARY, rank)
