"""Orbit invariants built from mean values of generator products.

The eight contracted invariants f1..f8 use the first, second and third moments
<J_i>, <J_i J_j>, <J_i J_j J_k> of a state. ``chain_invariant`` evaluates the general
structure-constant chains: a closed loop of adjoint matrices (C_a)_bc = c_ab^c contracted
with mean values of operator blocks. Repeated indices are contracted with the Euclidean
metric, not the Killing form.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .projective_state import PureState
from .spin_rep import SpinRep

logger = logging.getLogger(__name__)

MAX_CHAIN_LENGTH = 8
IMAGINARY_TOLERANCE = 1e-11


class InvariantError(ValueError):
    """Raised for bad axes, mismatched dimensions or non-real invariants."""

    pass


class ChainSpecError(InvariantError):
    """Raised for malformed or oversized chain specifications."""

    pass


@dataclass(frozen=True)
class InvariantVector:
    """The eight orbit invariants of a state."""

    f1: float
    f2: float
    f3: float
    f4: float
    f5: float
    f6: float
    f7: float
    f8: float

    def as_tuple(self) -> Tuple[float, ...]:
        return (self.f1, self.f2, self.f3, self.f4, self.f5, self.f6, self.f7, self.f8)

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class GeneratorMoments:
    """<J_i>, <J_i J_j> and <J_i J_j J_k> of one state."""

    first: NDArray[np.complex128]
    second: NDArray[np.complex128]
    third: NDArray[np.complex128]


@dataclass(frozen=True)
class ChainSpec:
    """
    Chain of length n whose slots are grouped into contiguous blocks.

    Each block is averaged as one operator product. Slots are numbered 1..n.
    """

    n: int
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ChainSpecError(f"Chain length must be positive, got {self.n}")
        flat = [slot for block in self.blocks for slot in block]
        if any(len(block) == 0 for block in self.blocks):
            raise ChainSpecError("Blocks must be nonempty")
        if flat != list(range(1, self.n + 1)):
            raise ChainSpecError(
                f"Blocks {self.blocks} must partition 1..{self.n} into ordered contiguous groups"
            )

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "ChainSpec":
        """Build a spec from block sizes, e.g. (1, 2) -> blocks ((1,), (2, 3))."""
        blocks = []
        start = 1
        for size in sizes:
            blocks.append(tuple(range(start, start + size)))
            start += size
        return cls(n=start - 1, blocks=tuple(blocks))

    @classmethod
    def singletons(cls, n: int) -> "ChainSpec":
        return cls.from_sizes([1] * n)


def _check_dims(rep: SpinRep, state: PureState) -> None:
    if rep.two_j != state.two_j:
        raise InvariantError(f"State of dimension {state.dim} does not fit j={rep.j}")


def mean_chain(rep: SpinRep, state: PureState, axes: Sequence[int]) -> complex:
    """
    <psi| J_{a1} ... J_{ap} |psi> for axes numbered 1, 2, 3.

    Raises:
        InvariantError: For an empty axis list or an axis outside {1, 2, 3}.
    """
    _check_dims(rep, state)
    if len(axes) == 0:
        raise InvariantError("axes must be nonempty")
    generators = rep.generators
    vec = state.amplitudes
    for axis in reversed(axes):
        if axis not in (1, 2, 3):
            raise InvariantError(f"Axis index must be 1, 2 or 3, got {axis}")
        vec = generators[axis - 1] @ vec
    return complex(np.vdot(state.amplitudes, vec))


def generator_moments(rep: SpinRep, state: PureState) -> GeneratorMoments:
    """First, second and third generator moments of a state."""
    _check_dims(rep, state)
    psi = state.amplitudes
    generators = rep.generators
    single = generators @ psi  # J_i psi
    double = np.einsum("jab,kb->jka", generators, single)  # J_j J_k psi
    first = single @ psi.conj()
    second = np.einsum("ia,ja->ij", single.conj(), single)
    third = np.einsum("ia,jka->ijk", single.conj(), double)
    return GeneratorMoments(first=first, second=second, third=third)


def _real(value: complex, name: str) -> float:
    if abs(value.imag) > IMAGINARY_TOLERANCE * max(1.0, abs(value.real)):
        raise InvariantError(f"{name} has imaginary residue {value.imag:.3e}")
    return float(value.real)


def invariants_f(rep: SpinRep, state: PureState) -> InvariantVector:
    """
    Evaluate f1..f8.

    f1 = <J_i><J_i>, f2 = <J_i><J_j><J_iJ_j>, f3 = <J_iJ_j><J_jJ_i>,
    f4 = <J_i><J_j><J_iJ_k><J_kJ_j>, f5 = <J_iJ_j><J_jJ_k><J_kJ_i>,
    f6 = <J_i><J_j><J_k><J_iJ_jJ_k>, f7 = <J_i><J_jJ_k><J_jJ_iJ_k>,
    f8 = <J_iJ_jJ_k><J_kJ_jJ_i>.

    Raises:
        InvariantError: If an imaginary residue exceeds 1e-11 (relative to max(1, |f|)).
    """
    moments = generator_moments(rep, state)
    m, t, s = moments.first, moments.second, moments.third
    raw = (
        np.einsum("i,i->", m, m),
        np.einsum("i,j,ij->", m, m, t),
        np.einsum("ij,ji->", t, t),
        np.einsum("i,j,ik,kj->", m, m, t, t),
        np.einsum("ij,jk,ki->", t, t, t),
        np.einsum("i,j,k,ijk->", m, m, m, s),
        np.einsum("i,jk,jik->", m, t, s),
        np.einsum("ijk,kji->", s, s),
    )
    values = [_real(complex(value), f"f{k}") for k, value in enumerate(raw, start=1)]
    return InvariantVector(*values)


def su2_structure_constants() -> NDArray[np.complex128]:
    """c_ab^c = i epsilon_abc, so that [J_a, J_b] = c_ab^c J_c."""
    epsilon = np.zeros((3, 3, 3))
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        epsilon[a, b, c] = 1.0
        epsilon[a, c, b] = -1.0
    return 1j * epsilon


def _structure_tensor(adjoint: NDArray[np.complex128], n: int) -> NDArray[np.complex128]:
    """K_{a1..an} = tr(C_{a1} ... C_{an})."""
    product = adjoint
    for _ in range(n - 1):
        product = np.tensordot(product, adjoint, axes=([-1], [1]))
        # move the new slot index ahead of the two matrix indices
        product = np.moveaxis(product, -2, -3)
    return np.trace(product, axis1=-2, axis2=-1)


def _block_means(rep: SpinRep, state: PureState, size: int) -> NDArray[np.complex128]:
    """Tensor of <J_{a1} ... J_{a_size}> over all axis assignments."""
    generators = rep.generators
    vectors = state.amplitudes.reshape(1, rep.dim)
    for _ in range(size):
        # the newest generator becomes the leftmost factor
        vectors = np.einsum("aij,nj->ani", generators, vectors).reshape(-1, rep.dim)
    means = vectors @ state.amplitudes.conj()
    return np.asarray(means.reshape((3,) * size))


def chain_invariant(
    rep: SpinRep,
    state: PureState,
    spec: ChainSpec,
    structure_constants: Optional[ArrayLike] = None,
) -> complex:
    """
    Structure-constant chain invariant.

    Sum over a_1..a_n and b_1..b_n of prod_k c_{a_k b_k}^{b_(k+1 mod n)} times the product of
    block means <prod_{slot in B} J_{a_slot}>.

    Args:
        rep: Spin representation.
        state: State to evaluate.
        spec: Chain length and block partition.
        structure_constants: Optional (3, 3, 3) array c_ab^c; su(2) by default.

    Raises:
        ChainSpecError: If the chain is longer than 8 or the structure constants are malformed.

    Returns:
        complex: The invariant.
    """
    _check_dims(rep, state)
    if spec.n > MAX_CHAIN_LENGTH:
        raise ChainSpecError(f"Chain length {spec.n} exceeds the limit of {MAX_CHAIN_LENGTH}")
    if structure_constants is None:
        adjoint = su2_structure_constants()
    else:
        adjoint = np.asarray(structure_constants, dtype=np.complex128)
        if adjoint.shape != (3, 3, 3):
            raise ChainSpecError(
                f"Structure constants must have shape (3, 3, 3), got {adjoint.shape}"
            )

    structure = _structure_tensor(adjoint, spec.n)
    means = np.ones((), dtype=np.complex128)
    for block in spec.blocks:
        means = np.multiply.outer(means, _block_means(rep, state, len(block)))
    value = complex(np.sum(structure * means))
    logger.debug("Chain invariant n=%d blocks=%s -> %s", spec.n, spec.blocks, value)
    return value


def j1_f1_chart(theta1: float, theta2: float, beta1: float, beta2: float) -> float:
    """
    f1 on the spin-1 chart (sin t1 sin t2 e^{i b1}, cos t1, sin t1 cos t2 e^{i b2}).

    f1 = sin^4 t1 cos^2(2 t2) + 2 sin^2 t1 cos^2 t1 (1 + sin(2 t2) cos(b1 + b2)).
    """
    s1, c1 = np.sin(theta1), np.cos(theta1)
    return float(
        s1**4 * np.cos(2 * theta2) ** 2
        + 2 * s1**2 * c1**2 * (1 + np.sin(2 * theta2) * np.cos(beta1 + beta2))
    )
