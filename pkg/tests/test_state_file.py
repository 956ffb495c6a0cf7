import json
import os
import tempfile

import numpy as np
import pytest

from su2orbits.geometry.projective_state import random_state, ray_distance
from su2orbits.io import (
    StateFileError,
    dump_state_file,
    load_fock_state_file,
    load_state_file,
)
from su2orbits.weyl.fock import build_fock

"""
Tests for the state_file module of su2orbits.
"""


def _write_json(payload) -> str:
    with tempfile.NamedTemporaryFile(mode="w", suffix=".json", delete=False) as f:
        if isinstance(payload, str):
            f.write(payload)
        else:
            json.dump(payload, f)
        return f.name


class TestLoadStateFile:
    """Test suite for spin state files."""

    def test_load_success(self):
        """Test loading and canonicalizing a spin-1 state."""
        path = _write_json({"j": 1, "amplitudes": [[0, 0], [0, 3], [4, 0]]})
        try:
            state = load_state_file(path)
            assert state.j == 1.0
            assert np.allclose(state.amplitudes, [0.0, 0.6, -0.8j])
        finally:
            os.unlink(path)

    def test_half_integer_spin(self):
        """Test that half-integer spins are accepted."""
        path = _write_json({"j": 1.5, "amplitudes": [[1, 0], [0, 0], [0, 0], [0, 0]]})
        try:
            assert load_state_file(path).dim == 4
        finally:
            os.unlink(path)

    @pytest.mark.parametrize(
        "payload",
        [
            {"j": 1, "amplitudes": [[1, 0], [0, 0]]},
            {"j": 0.3, "amplitudes": [[1, 0], [0, 0]]},
            {"j": 1, "amplitudes": [[0, 0], [0, 0], [0, 0]]},
            {"amplitudes": [[1, 0], [0, 0]]},
            {"j": 0.5, "amplitudes": [[1, 0, 0], [0, 0, 0]]},
            [1, 2, 3],
        ],
    )
    def test_invalid_payloads(self, payload):
        """Test wrong lengths, bad spins, zero vectors and malformed entries."""
        path = _write_json(payload)
        try:
            with pytest.raises(StateFileError, match="Invalid state file"):
                load_state_file(path)
        finally:
            os.unlink(path)

    def test_not_json(self):
        """Test that non-JSON content is reported."""
        path = _write_json("{not json")
        try:
            with pytest.raises(StateFileError, match="Cannot read"):
                load_state_file(path)
        finally:
            os.unlink(path)

    def test_missing_file(self):
        """Test that a missing file is reported."""
        with pytest.raises(StateFileError, match="not found"):
            load_state_file("no_such_state.json")

    def test_dump_and_load(self):
        """Test that a dumped state loads as the same ray."""
        state = random_state(2, np.random.default_rng(0))
        with tempfile.TemporaryDirectory() as tmp_dir:
            path = os.path.join(tmp_dir, "state.json")
            dump_state_file(state, path)
            with open(path, encoding="utf-8") as f:
                payload = json.load(f)
            assert payload["j"] == 2.0
            assert len(payload["amplitudes"]) == 5
            assert ray_distance(load_state_file(path), state) < 1e-12


class TestLoadFockStateFile:
    """Test suite for Fock state files."""

    def setup_method(self):
        """Set up a 16-level truncation."""
        self.fock = build_fock(16)

    def test_load_and_pad(self):
        """Test padding to the truncation."""
        path = _write_json({"amplitudes": [[1, 0], [0, 1]]})
        try:
            state = load_fock_state_file(path, self.fock)
            assert state.n_trunc == 16
            assert np.allclose(state.amplitudes[:2], [np.sqrt(0.5), 1j * np.sqrt(0.5)])
        finally:
            os.unlink(path)

    def test_too_many_levels(self):
        """Test that a state longer than the truncation is rejected."""
        path = _write_json({"amplitudes": [[1, 0]] * 17})
        try:
            with pytest.raises(StateFileError, match="Invalid Fock state file"):
                load_fock_state_file(path, self.fock)
        finally:
            os.unlink(path)

    def test_empty_amplitudes(self):
        """Test that an empty amplitude list is rejected."""
        path = _write_json({"amplitudes": []})
        try:
            with pytest.raises(StateFileError):
                load_fock_state_file(path, self.fock)
        finally:
            os.unlink(path)