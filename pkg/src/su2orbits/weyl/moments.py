"""Centered symmetrized moments M^mn and their invariance along Heisenberg-Weyl orbits.

M^mn = 1/2 <{(Q - Qbar)^m (P - Pbar)^n + (P - Pbar)^n (Q - Qbar)^m}>, so that M^m0 is the
plain central moment. Displacements shift Qbar and Pbar and leave every M^mn unchanged.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from .fock import (
    FockError,
    FockRep,
    FockState,
    TruncationError,
    apply_unitary,
    displacement,
)

logger = logging.getLogger(__name__)

MAX_MOMENT_ORDER = 8
MAX_DISPLACEMENT = 2.0
IMAGINARY_TOLERANCE = 1e-10


class MomentOrderError(FockError):
    """Raised when a moment order is negative or exceeds the cap."""

    pass


@dataclass
class MomentTable:
    """
    Moments M[m][n] for m + n <= max_order.

    ``entries[m]`` holds M^{m0}, ..., M^{m, max_order - m}.
    """

    max_order: int
    qbar: float
    pbar: float
    entries: List[List[float]] = field(default_factory=list)

    def get(self, m: int, n: int) -> float:
        return self.entries[m][n]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class RobertsonRecord:
    """Second moments and both right-hand sides of the Robertson inequality."""

    m20: float
    m02: float
    m11: float
    lhs: float
    rhs_standard: float
    rhs_variant: float
    satisfied: bool

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _expectation(fock: FockRep, state: FockState, operator: NDArray[np.complex128]) -> float:
    psi = state.amplitudes
    return float(np.vdot(psi, operator @ psi).real)


def _check_order(m: int, n: int) -> None:
    if m < 0 or n < 0:
        raise MomentOrderError(f"Moment orders must be non-negative, got ({m}, {n})")
    if m + n > MAX_MOMENT_ORDER:
        raise MomentOrderError(f"m + n = {m + n} exceeds the cap of {MAX_MOMENT_ORDER}")


def _centered(fock: FockRep, state: FockState) -> Tuple[NDArray, NDArray, float, float]:
    qbar = _expectation(fock, state, fock.q)
    pbar = _expectation(fock, state, fock.p)
    identity = np.eye(fock.n_trunc)
    return fock.q - qbar * identity, fock.p - pbar * identity, qbar, pbar


def _moment(
    psi: NDArray[np.complex128], qc: NDArray, pc: NDArray, m: int, n: int
) -> float:
    forward = psi
    for _ in range(n):
        forward = pc @ forward
    for _ in range(m):
        forward = qc @ forward  # Qc^m Pc^n psi
    backward = psi
    for _ in range(m):
        backward = qc @ backward
    for _ in range(n):
        backward = pc @ backward  # Pc^n Qc^m psi
    value = 0.5 * (np.vdot(psi, forward) + np.vdot(psi, backward))
    if abs(value.imag) > IMAGINARY_TOLERANCE * max(1.0, abs(value.real)):
        raise FockError(f"M^{m}{n} has imaginary residue {value.imag:.3e}")
    return float(value.real)


def moment(fock: FockRep, state: FockState, m: int, n: int) -> float:
    """
    Centered symmetrized moment M^mn.

    Raises:
        MomentOrderError: If m or n is negative or m + n > 8.
    """
    _check_order(m, n)
    qc, pc, _, _ = _centered(fock, state)
    return _moment(state.amplitudes, qc, pc, m, n)


def moment_table(fock: FockRep, state: FockState, max_order: int) -> MomentTable:
    """All M^mn with m + n <= max_order."""
    _check_order(0, max_order)
    qc, pc, qbar, pbar = _centered(fock, state)
    entries = [
        [_moment(state.amplitudes, qc, pc, m, n) for n in range(max_order - m + 1)]
        for m in range(max_order + 1)
    ]
    return MomentTable(max_order=max_order, qbar=qbar, pbar=pbar, entries=entries)


def _max_table_deviation(a: MomentTable, b: MomentTable) -> float:
    return max(
        abs(x - y) for row_a, row_b in zip(a.entries, b.entries) for x, y in zip(row_a, row_b)
    )


def weyl_orbit_invariance(
    fock: FockRep,
    fiducial: FockState,
    displacements: Sequence[Tuple[float, float]],
    max_order: int = 4,
) -> float:
    """
    Max deviation of M^mn between the fiducial and its displaced copies.

    Raises:
        TruncationError: If the fiducial reaches above n_trunc/4 or |q|, |p| > 2.
    """
    if fiducial.support() > fock.n_trunc // 4:
        raise TruncationError(
            f"Fiducial support {fiducial.support()} exceeds n_trunc/4 = {fock.n_trunc // 4}"
        )
    for q, p in displacements:
        if abs(q) > MAX_DISPLACEMENT or abs(p) > MAX_DISPLACEMENT:
            raise TruncationError(
                f"Displacement ({q}, {p}) exceeds |q|, |p| <= {MAX_DISPLACEMENT}"
            )

    reference = moment_table(fock, fiducial, max_order)
    deviation = 0.0
    for q, p in displacements:
        moved = apply_unitary(displacement(fock, q, p), fiducial)
        table = moment_table(fock, moved, max_order)
        deviation = max(deviation, _max_table_deviation(reference, table))
    logger.debug("Weyl orbit deviation over %d displacements: %.3e", len(displacements), deviation)
    return deviation


def robertson_check(fock: FockRep, state: FockState, tol: float = 1e-10) -> RobertsonRecord:
    """
    Compare M^20 M^02 with M^11^2 + hbar^2/4 and with (1/4)((2 M^11)^2 - hbar^2).

    ``satisfied`` reports lhs >= rhs_standard within ``tol``.
    """
    qc, pc, _, _ = _centered(fock, state)
    psi = state.amplitudes
    m20 = _moment(psi, qc, pc, 2, 0)
    m02 = _moment(psi, qc, pc, 0, 2)
    m11 = _moment(psi, qc, pc, 1, 1)
    lhs = m20 * m02
    hbar2 = fock.hbar**2
    rhs_standard = m11**2 + hbar2 / 4
    rhs_variant = 0.25 * ((2 * m11) ** 2 - hbar2)
    return RobertsonRecord(
        m20=m20,
        m02=m02,
        m11=m11,
        lhs=lhs,
        rhs_standard=rhs_standard,
        rhs_variant=rhs_variant,
        satisfied=bool(lhs >= rhs_standard - tol),
    )


def group_law_defect(
    fock: FockRep,
    first: Tuple[float, float],
    second: Tuple[float, float],
    support: int = 0,
) -> float:
    """
    Max deviation of D(q2,p2) D(q1,p1) from e^{i(q1 p2 - p1 q2)/2hbar} D(q1+q2, p1+p2).

    Compared on the columns of levels 0..support (default n_trunc/4).
    """
    (q1, p1), (q2, p2) = first, second
    columns = slice(0, (support or fock.n_trunc // 4) + 1)
    product = displacement(fock, q2, p2) @ displacement(fock, q1, p1)
    phase = np.exp(1j * (q1 * p2 - p1 * q2) / (2 * fock.hbar))
    combined = phase * displacement(fock, q1 + q2, p1 + p2)
    return float(np.max(np.abs(product[:, columns] - combined[:, columns])))


def translation_defect(fock: FockRep, q: float, p: float, support: int = 0) -> float:
    """Max deviation of D^dag Q D - (Q + q) and D^dag P D - (P + p) on levels 0..support."""
    block = slice(0, (support or fock.n_trunc // 4) + 1)
    unitary = displacement(fock, q, p)
    identity = np.eye(fock.n_trunc)
    shifted_q = unitary.conj().T @ fock.q @ unitary - (fock.q + q * identity)
    shifted_p = unitary.conj().T @ fock.p @ unitary - (fock.p + p * identity)
    return float(
        max(np.max(np.abs(shifted_q[block, block])), np.max(np.abs(shifted_p[block, block])))
    )


def centered_fiducial(fock: FockRep, state: FockState) -> FockState:
    """The orbit point D(-Qbar, -Pbar)|psi> with vanishing mean position and momentum."""
    qbar = _expectation(fock, state, fock.q)
    pbar = _expectation(fock, state, fock.p)
    return apply_unitary(displacement(fock, -qbar, -pbar), state)
