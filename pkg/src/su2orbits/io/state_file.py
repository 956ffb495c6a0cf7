"""State-file schemas.

Spin states are stored as ``{"j": 1, "amplitudes": [[re, im], ...]}`` with 2j+1 entries in
m-descending order; Fock states as ``{"amplitudes": [[re, im], ...]}`` starting at |0>.
"""

import json
import logging
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from ..geometry.projective_state import PureState, canonicalize
from ..geometry.spin_rep import SpinRepError, two_j_of
from ..weyl.fock import FockRep, FockState, fock_state

logger = logging.getLogger(__name__)


class StateFileError(ValueError):
    """Raised for unreadable, malformed or inconsistent state files."""

    pass


class StateFile(BaseModel):
    """Spin-j state file."""

    j: float = Field(..., gt=0, description="Half-integer spin label")
    amplitudes: List[Tuple[float, float]] = Field(
        ..., min_length=2, description="(re, im) pairs in m-descending order"
    )

    @field_validator("j")
    @classmethod
    def _half_integer(cls, value: float) -> float:
        try:
            two_j_of(value)
        except SpinRepError as err:
            raise ValueError(str(err)) from err
        return value

    @model_validator(mode="after")
    def _length_matches_spin(self) -> "StateFile":
        expected = two_j_of(self.j) + 1
        if len(self.amplitudes) != expected:
            raise ValueError(
                f"j={self.j} needs {expected} amplitudes, got {len(self.amplitudes)}"
            )
        return self

    def to_state(self) -> PureState:
        vec = np.array([complex(re, im) for re, im in self.amplitudes])
        return canonicalize(vec, self.j)

    @classmethod
    def from_state(cls, state: PureState) -> "StateFile":
        pairs = [(float(a.real), float(a.imag)) for a in state.amplitudes]
        return cls(j=state.j, amplitudes=pairs)


class FockStateFile(BaseModel):
    """Truncated Fock state file."""

    amplitudes: List[Tuple[float, float]] = Field(
        ..., min_length=1, description="(re, im) pairs for |0>, |1>, ..."
    )

    def to_state(self, fock: FockRep) -> FockState:
        return fock_state(fock, [complex(re, im) for re, im in self.amplitudes])


def _read_json(path: Union[str, Path]) -> object:
    file_path = Path(path)
    try:
        with open(file_path, encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as err:
        raise StateFileError(f"State file not found: {file_path}") from err
    except (OSError, json.JSONDecodeError) as err:
        raise StateFileError(f"Cannot read state file {file_path}: {err}") from err


def load_state_file(path: Union[str, Path]) -> PureState:
    """
    Load and canonicalize a spin state.

    Raises:
        StateFileError: If the file is missing, not JSON, or fails validation.
    """
    data = _read_json(path)
    try:
        state = StateFile.model_validate(data).to_state()
    except (ValidationError, ValueError) as err:
        raise StateFileError(f"Invalid state file {path}: {err}") from err
    logger.debug("Loaded j=%s state from %s", state.j, path)
    return state


def load_fock_state_file(path: Union[str, Path], fock: FockRep) -> FockState:
    """
    Load a Fock state and pad it to the truncation.

    Raises:
        StateFileError: If the file is missing, malformed or longer than n_trunc.
    """
    data = _read_json(path)
    try:
        return FockStateFile.model_validate(data).to_state(fock)
    except (ValidationError, ValueError) as err:
        raise StateFileError(f"Invalid Fock state file {path}: {err}") from err


def dump_state_file(state: PureState, path: Union[str, Path]) -> None:
    """Write a spin state in the state-file format."""
    payload = StateFile.from_state(state).model_dump()
    payload["amplitudes"] = [list(pair) for pair in payload["amplitudes"]]
    with open(Path(path), "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2)
