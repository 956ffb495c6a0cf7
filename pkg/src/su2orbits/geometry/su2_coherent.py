"""SU(2) coherent-state families, resolution-of-identity quadrature and spin uncertainty."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np
from numpy.polynomial.legendre import leggauss
from numpy.typing import NDArray

from .projective_state import PureState, canonicalize, eigenstate
from .spin_rep import SpinLike, SpinRep, exp_su2

logger = logging.getLogger(__name__)


class CoherentStateError(ValueError):
    """Raised for invalid family kinds, parameters or quadrature orders."""

    pass


class OrbitFamily(str, Enum):
    """Spin-1 eigen-direction families: the S^2 orbit of |1> and the RP^2 orbit of |0>."""

    S2 = "s2"
    RP2 = "rp2"


@dataclass(frozen=True)
class CoherentFamilySpec:
    """Fiducial |j, m> and the complex family parameter z."""

    j: float
    fiducial_m: float
    z: complex

    def __post_init__(self) -> None:
        if abs(self.fiducial_m) > self.j or (self.j - self.fiducial_m) % 1:
            raise CoherentStateError(f"fiducial_m={self.fiducial_m} out of range for j={self.j}")

    def state(self, rep: SpinRep) -> PureState:
        """The family member at ``z``."""
        if rep.two_j != round(2 * self.j):
            raise CoherentStateError(f"Family spec for j={self.j} does not fit j={rep.j}")
        return spin_coherent_general(rep, self.fiducial_m, self.z)


@dataclass(frozen=True)
class IdentityCheck:
    """
    Quadrature estimate of the resolution of identity.

    Attributes:
        defect (float): Frobenius norm of dim * integral - Identity.
        d_prime (float): Estimate of the integral of |<phi|U(g)|phi>|^2 over the group.
        quadrature_orders (Tuple[int, int, int]): (n_alpha, n_beta, n_gamma).
    """

    defect: float
    d_prime: float
    quadrature_orders: Tuple[int, int, int]


def _nilpotent_exp(matrix: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Exact exponential of a nilpotent matrix as a finite series."""
    dim = matrix.shape[0]
    result = np.eye(dim, dtype=np.complex128)
    term = np.eye(dim, dtype=np.complex128)
    for k in range(1, dim):
        term = term @ matrix / k
        result = result + term
    return result


def coherent_displacement(rep: SpinRep, z: complex) -> NDArray[np.complex128]:
    """
    Unitary e^{z J_-} e^{-ln(1 + |z|^2) J_z} e^{-z* J_+}.

    Equals exp(xi J_- - xi* J_+) with z = tan|xi| e^{i arg xi}.
    """
    z = complex(z)
    weight = (1.0 + abs(z) ** 2) ** (-rep.m_values)
    lower = _nilpotent_exp(z * rep.jminus)
    upper = _nilpotent_exp(-np.conj(z) * rep.jplus)
    return np.asarray((lower * weight) @ upper)


def spin_coherent_highest(rep: SpinRep, z: complex) -> PureState:
    """Normalized e^{z J_-}|j>; amplitudes are z^k sqrt(binom(2j, k)) up to normalization."""
    if not np.isfinite(complex(z)):
        raise CoherentStateError(f"z must be finite, got {z!r}")
    vec = _nilpotent_exp(complex(z) * rep.jminus)[:, 0]
    return canonicalize(vec, rep.two_j / 2)


def spin_coherent_general(rep: SpinRep, m: SpinLike, z: complex) -> PureState:
    """
    Coherent state with fiducial |j, m>: the unitary coherent displacement applied to |m>.

    For m = j this is e^{z J_-}|j>; for other m the diagonal J_z factor keeps the family on
    the orbit of |m>.
    """
    if not np.isfinite(complex(z)):
        raise CoherentStateError(f"z must be finite, got {z!r}")
    fiducial = eigenstate(rep, m)
    return canonicalize(coherent_displacement(rep, z) @ fiducial.amplitudes, rep.two_j / 2)


def family_direction(alpha: float, beta: float) -> NDArray[np.float64]:
    """r = (sin 2a cos b, sin 2a sin b, cos 2a)."""
    return np.array(
        [
            np.sin(2 * alpha) * np.cos(beta),
            np.sin(2 * alpha) * np.sin(beta),
            np.cos(2 * alpha),
        ]
    )


def j1_orbit_family(kind: Union[str, OrbitFamily], alpha: float, beta: float) -> PureState:
    """
    Spin-1 eigenvectors of r.J along ``family_direction(alpha, beta)``.

    S2 (eigenvalue 1): (cos^2 a e^{-ib}, sin 2a / sqrt 2, sin^2 a e^{ib}).
    RP2 (eigenvalue 0): (-sin 2a e^{-ib} / sqrt 2, cos 2a, sin 2a e^{ib} / sqrt 2).

    Raises:
        CoherentStateError: For an unknown family kind.
    """
    try:
        family = OrbitFamily(kind.value if isinstance(kind, OrbitFamily) else str(kind).lower())
    except ValueError as err:
        raise CoherentStateError(f"Unknown family {kind!r}; expected s2 or rp2") from err
    phase = np.exp(1j * beta)
    root2 = np.sqrt(2.0)
    if family is OrbitFamily.S2:
        vec = [
            np.cos(alpha) ** 2 * np.conj(phase),
            np.sin(2 * alpha) / root2,
            np.sin(alpha) ** 2 * phase,
        ]
    else:
        vec = [
            -np.sin(2 * alpha) * np.conj(phase) / root2,
            np.cos(2 * alpha),
            np.sin(2 * alpha) * phase / root2,
        ]
    return canonicalize(vec, 1)


def cp1_point(alpha: float, beta: float) -> PureState:
    """Spin-1/2 ray (cos a, sin a e^{ib}), the +1/2 eigenvector along family_direction."""
    return canonicalize([np.cos(alpha), np.sin(alpha) * np.exp(1j * beta)], 0.5)


def default_orders(rep: SpinRep) -> Tuple[int, int, int]:
    """(4j + 2, 2j + 2, 4j + 2): exact for the degree-4j integrands of an irrep."""
    return 2 * rep.two_j + 2, rep.two_j + 2, 2 * rep.two_j + 2


def identity_defect(
    rep: SpinRep,
    fiducial: PureState,
    n_alpha: Optional[int] = None,
    n_beta: Optional[int] = None,
    n_gamma: Optional[int] = None,
) -> IdentityCheck:
    """
    Quadrature check of the resolution of identity over SU(2).

    U = e^{i alpha J_z} e^{i beta J_y} e^{i gamma J_z}; alpha and gamma use the trapezoid
    rule, cos(beta) uses Gauss-Legendre. The normalized Haar integral of U|phi><phi|U^dagger
    equals Identity/dim.

    Args:
        rep: Spin representation.
        fiducial: Fiducial state.
        n_alpha, n_beta, n_gamma: Quadrature orders; defaults from ``default_orders``.

    Raises:
        CoherentStateError: If an order is below 1.

    Returns:
        IdentityCheck: Defect, d_prime and the orders used.
    """
    defaults = default_orders(rep)
    orders = (
        n_alpha if n_alpha is not None else defaults[0],
        n_beta if n_beta is not None else defaults[1],
        n_gamma if n_gamma is not None else defaults[2],
    )
    if min(orders) < 1:
        raise CoherentStateError(f"Quadrature orders must be at least 1, got {orders}")
    na, nb, ng = orders

    m = rep.m_values
    phi = fiducial.amplitudes
    alphas = 2 * np.pi * np.arange(na) / na
    gammas = 2 * np.pi * np.arange(ng) / ng
    nodes, weights = leggauss(nb)
    betas = np.arccos(nodes)
    beta_weights = weights / 2.0

    phase_alpha = np.exp(1j * np.outer(alphas, m))  # (na, dim)
    phase_gamma = np.exp(1j * np.outer(gammas, m))  # (ng, dim)
    small_d = np.stack([exp_su2(rep, (0.0, beta, 0.0)) for beta in betas])  # (nb, dim, dim)
    # psi[b, c] = e^{i beta_b J_y} e^{i gamma_c J_z} phi
    psi = np.einsum("bij,cj->bci", small_d, phase_gamma * phi)

    rho = np.einsum("b,bci,bck->ik", beta_weights, psi, psi.conj()) / ng
    # trapezoid average of e^{i alpha (m_i - m_k)}
    alpha_factor = (phase_alpha.T @ phase_alpha.conj()) / na
    integral = rho * alpha_factor
    defect = float(np.linalg.norm(rep.dim * integral - np.eye(rep.dim)))

    overlaps = np.einsum("k,ak,bck->abc", phi.conj(), phase_alpha, psi)
    d_prime = float(
        np.einsum("abc,b->", np.abs(overlaps) ** 2, beta_weights) / (na * ng)
    )
    logger.debug("Identity defect at orders %s: %.3e", orders, defect)
    return IdentityCheck(defect=defect, d_prime=d_prime, quadrature_orders=orders)


def uncertainty_gap(rep: SpinRep, state: PureState) -> float:
    """Var(J_x) Var(J_y) - <J_z>^2 / 4, non-negative for every state."""
    psi = state.amplitudes
    means = ((rep.generators @ psi) @ psi.conj()).real
    var_x = float(np.vdot(rep.jx @ psi, rep.jx @ psi).real) - means[0] ** 2
    var_y = float(np.vdot(rep.jy @ psi, rep.jy @ psi).real) - means[1] ** 2
    return float(var_x * var_y - 0.25 * means[2] ** 2)
