"""Truncated bosonic Fock space: ladder operators, Weyl displacements and Glauber states.

Operators act on levels |0>, ..., |n_trunc - 1>. The canonical commutator [Q, P] = i hbar
holds off the top level; the top level violates it by truncation.
"""

import logging
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import gammaln
from scipy.stats import poisson

logger = logging.getLogger(__name__)

MIN_TRUNCATION = 4
TAIL_TOLERANCE = 1e-12


class FockError(ValueError):
    """Raised for invalid truncations, hbar values or Fock amplitudes."""

    pass


class TruncationError(FockError):
    """Raised when a state or displacement leaks past the truncation."""

    pass


@dataclass(frozen=True, eq=False)
class FockRep:
    """
    Truncated oscillator operators.

    Attributes:
        n_trunc (int): Number of Fock levels.
        hbar (float): Planck constant.
        a, a_dag (NDArray): Annihilation and creation, <n-1|a|n> = sqrt(n).
        q, p (NDArray): Q = sqrt(hbar/2)(a + a^dag), P = -i sqrt(hbar/2)(a - a^dag).
    """

    n_trunc: int
    hbar: float
    a: NDArray[np.complex128]
    a_dag: NDArray[np.complex128]
    q: NDArray[np.complex128]
    p: NDArray[np.complex128]

    @property
    def number(self) -> NDArray[np.complex128]:
        return self.a_dag @ self.a


@dataclass(frozen=True, eq=False)
class FockState:
    """Unit-norm amplitudes over the Fock levels of a truncation."""

    amplitudes: NDArray[np.complex128]

    @property
    def n_trunc(self) -> int:
        return int(self.amplitudes.shape[0])

    def support(self, cutoff: float = 1e-12) -> int:
        """Highest level with modulus above ``cutoff``."""
        levels = np.nonzero(np.abs(self.amplitudes) > cutoff)[0]
        return int(levels[-1]) if levels.size else 0


def build_fock(n_trunc: int, hbar: float = 1.0) -> FockRep:
    """
    Build ladder, position and momentum matrices on n_trunc levels.

    Raises:
        FockError: If n_trunc < 4 or hbar is not positive and finite.
    """
    if int(n_trunc) != n_trunc or n_trunc < MIN_TRUNCATION:
        raise FockError(f"n_trunc must be an integer >= {MIN_TRUNCATION}, got {n_trunc}")
    if not np.isfinite(hbar) or hbar <= 0:
        raise FockError(f"hbar must be positive and finite, got {hbar}")
    n_trunc = int(n_trunc)
    a = np.diag(np.sqrt(np.arange(1, n_trunc)), k=1).astype(np.complex128)
    a_dag = a.T.copy()
    scale = np.sqrt(hbar / 2.0)
    q = scale * (a + a_dag)
    p = -1j * scale * (a - a_dag)
    for matrix in (a, a_dag, q, p):
        matrix.setflags(write=False)
    logger.debug("Built Fock space with %d levels, hbar=%g", n_trunc, hbar)
    return FockRep(n_trunc=n_trunc, hbar=float(hbar), a=a, a_dag=a_dag, q=q, p=p)


def fock_state(fock: FockRep, amplitudes: ArrayLike) -> FockState:
    """
    Normalize amplitudes, zero-padding to the truncation.

    Raises:
        FockError: For zero vectors or more amplitudes than levels.
    """
    vec = np.asarray(amplitudes, dtype=np.complex128).ravel()
    if vec.size > fock.n_trunc:
        raise FockError(f"{vec.size} amplitudes exceed n_trunc={fock.n_trunc}")
    norm = float(np.linalg.norm(vec))
    if norm == 0.0 or not np.isfinite(norm):
        raise FockError("Fock amplitudes must be finite and not all zero")
    padded = np.zeros(fock.n_trunc, dtype=np.complex128)
    padded[: vec.size] = vec / norm
    padded.setflags(write=False)
    return FockState(amplitudes=padded)


def fock_superposition(
    fock: FockRep, coefficients: Union[Mapping[int, complex], Sequence[complex]]
) -> FockState:
    """Normalized finite combination sum_n c_n |n>, given as {level: c_n} or a sequence."""
    if isinstance(coefficients, Mapping):
        if not coefficients:
            raise FockError("At least one Fock level is required")
        top = max(coefficients)
        if min(coefficients) < 0:
            raise FockError("Fock levels must be non-negative")
        vec = np.zeros(top + 1, dtype=np.complex128)
        for level, value in coefficients.items():
            vec[level] = value
        return fock_state(fock, vec)
    return fock_state(fock, coefficients)


def number_state(fock: FockRep, n: int) -> FockState:
    return fock_superposition(fock, {n: 1.0})


def displacement(fock: FockRep, q: float, p: float) -> NDArray[np.complex128]:
    """
    Weyl operator exp(i(pQ - qP)/hbar) by Hermitian spectral exponentiation.

    i(pQ - qP)/hbar = z a^dag - z* a with z = (q + ip)/sqrt(2 hbar).
    """
    generator = (p * fock.q - q * fock.p) / fock.hbar
    eigenvalues, eigenvectors = np.linalg.eigh(generator)
    return (eigenvectors * np.exp(1j * eigenvalues)) @ eigenvectors.conj().T


def apply_unitary(unitary: NDArray[np.complex128], state: FockState) -> FockState:
    vec = unitary @ state.amplitudes
    vec = vec / np.linalg.norm(vec)
    vec.setflags(write=False)
    return FockState(amplitudes=vec)


def poisson_tail(mean: float, n_trunc: int) -> float:
    """Probability mass of Poisson(mean) at levels >= n_trunc."""
    return float(poisson.sf(n_trunc - 1, mean))


def glauber(fock: FockRep, z: complex) -> FockState:
    """
    Glauber state e^{-|z|^2/2} sum_n z^n / sqrt(n!) |n>, renormalized after truncation.

    Raises:
        TruncationError: If the Poisson tail beyond the truncation exceeds 1e-12.
    """
    z = complex(z)
    mean = abs(z) ** 2
    tail = poisson_tail(mean, fock.n_trunc)
    if tail > TAIL_TOLERANCE:
        raise TruncationError(
            f"|z|={abs(z):.3g} leaks {tail:.2e} past n_trunc={fock.n_trunc}"
        )
    levels = np.arange(fock.n_trunc)
    if z == 0:
        vec = np.zeros(fock.n_trunc, dtype=np.complex128)
        vec[0] = 1.0
    else:
        log_modulus = -mean / 2 + levels * np.log(abs(z)) - 0.5 * gammaln(levels + 1)
        vec = np.exp(log_modulus) * np.exp(1j * levels * np.angle(z))
    return fock_state(fock, vec)


def glauber_parameter(fock: FockRep, q: float, p: float) -> complex:
    """z = (q + ip)/sqrt(2 hbar)."""
    return complex(q, p) / np.sqrt(2 * fock.hbar)


def canonical_commutator_defect(fock: FockRep) -> float:
    """Max deviation of [Q, P] from i hbar on all levels but the top one."""
    commutator = fock.q @ fock.p - fock.p @ fock.q
    expected = 1j * fock.hbar * np.eye(fock.n_trunc)
    block = slice(0, fock.n_trunc - 1)
    return float(np.max(np.abs(commutator[block, block] - expected[block, block])))
