from unittest.mock import patch

import numpy as np
import pytest

from su2orbits.geometry.invariant_engine import invariants_f
from su2orbits.geometry.projective_state import eigenstate, random_state
from su2orbits.geometry.realified_geometry import (
    GradientTarget,
    PMatrixMismatchError,
    RealifiedGeometryError,
    Stratum,
    closed_form_p,
    f0_value,
    f1_homogeneous,
    grad_invariant,
    p_matrix,
    psd_classify,
    realify,
    realify_operator,
    unrealify,
)
from su2orbits.geometry.spin_rep import build_rep

"""
Tests for the realified_geometry module of su2orbits.
"""


def _finite_difference(func, x, h=1e-6):
    grad = np.zeros_like(x)
    for k in range(x.size):
        step = np.zeros_like(x)
        step[k] = h
        grad[k] = (func(x + step) - func(x - step)) / (2 * h)
    return grad


class TestRealify:
    """Test suite for real coordinates."""

    def test_layout(self):
        """Test that real parts precede imaginary parts."""
        assert np.array_equal(realify([1 + 2j, 3 - 4j]), [1, 3, 2, -4])

    def test_inverse(self):
        """Test that unrealify undoes realify."""
        vec = np.array([0.5 - 1j, 2j, -3.0])
        assert np.array_equal(unrealify(realify(vec)), vec)

    def test_accepts_pure_state(self):
        """Test realification of a canonical ray."""
        rep = build_rep(1)
        assert np.array_equal(realify(eigenstate(rep, 0)), [0, 1, 0, 0, 0, 0])

    @pytest.mark.parametrize("x", [[], [1.0, 2.0, 3.0]])
    def test_unrealify_rejects_bad_length(self, x):
        """Test that empty or odd-length vectors are rejected."""
        with pytest.raises(RealifiedGeometryError):
            unrealify(x)

    def test_realify_rejects_empty(self):
        """Test that an empty vector cannot be realified."""
        with pytest.raises(RealifiedGeometryError):
            realify([])

    def test_operator_realification(self):
        """Test realify(A z) = realify_operator(A) realify(z)."""
        rng = np.random.default_rng(0)
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        assert np.allclose(realify(a @ z), realify_operator(a) @ realify(z), atol=1e-13)


class TestInvariantsAndGradients:
    """Test suite for f0, f1 and their gradients."""

    def setup_method(self):
        """Set up the spin-1 representation and a random point."""
        self.rep = build_rep(1)
        self.rng = np.random.default_rng(1)
        self.x = 1.3 * self.rng.standard_normal(2 * self.rep.dim)

    def test_f1_matches_unit_rays(self):
        """Test that the homogeneous f1 agrees with invariants_f on unit vectors."""
        state = random_state(1, self.rng)
        assert f1_homogeneous(self.rep, realify(state)) == pytest.approx(
            invariants_f(self.rep, state).f1, abs=1e-12
        )

    def test_f1_is_degree_four(self):
        """Test f1(t x) = t^4 f1(x)."""
        base = f1_homogeneous(self.rep, self.x)
        assert f1_homogeneous(self.rep, 2.0 * self.x) == pytest.approx(16 * base, rel=1e-12)

    def test_gradients_against_finite_differences(self):
        """Test the analytic gradients against central differences."""
        g0 = grad_invariant(GradientTarget.F0, self.rep, self.x)
        g1 = grad_invariant("f1", self.rep, self.x)
        assert np.allclose(g0, _finite_difference(f0_value, self.x), rtol=1e-6, atol=1e-6)
        numeric = _finite_difference(lambda y: f1_homogeneous(self.rep, y), self.x)
        assert np.allclose(g1, numeric, rtol=1e-6, atol=1e-5)

    @pytest.mark.parametrize("j", [0.5, 1.5, 2])
    def test_gradient_other_spins(self, j):
        """Test the f1 gradient for spins other than 1."""
        rep = build_rep(j)
        x = self.rng.standard_normal(2 * rep.dim)
        numeric = _finite_difference(lambda y: f1_homogeneous(rep, y), x)
        assert np.allclose(grad_invariant("f1", rep, x), numeric, rtol=1e-6, atol=1e-5)

    def test_unknown_target(self):
        """Test that only f0 and f1 have gradients."""
        with pytest.raises(RealifiedGeometryError, match="Unknown invariant"):
            grad_invariant("f2", self.rep, self.x)

    def test_wrong_length(self):
        """Test that a realified vector of the wrong length is rejected."""
        with pytest.raises(RealifiedGeometryError, match="length 6"):
            grad_invariant("f1", self.rep, self.x[:4])


class TestPMatrix:
    """Test suite for the gradient Gram matrix."""

    def setup_method(self):
        """Set up the spin-1 representation."""
        self.rep = build_rep(1)

    def test_random_points_principal(self):
        """Test that generic points give a positive definite P of rank 2."""
        rng = np.random.default_rng(2)
        for _ in range(50):
            x = rng.uniform(0.5, 2.0) * rng.standard_normal(6)
            result = p_matrix(self.rep, x)
            assert result.rank == 2
            assert result.psd
            expected = closed_form_p(f0_value(x), f1_homogeneous(self.rep, x))
            assert np.allclose(result.entries, expected, rtol=1e-8)

    @pytest.mark.parametrize("m", [1, 0])
    def test_eigenstates_on_boundary(self, m):
        """Test that |1> and |0> give a rank-1 P."""
        result = p_matrix(self.rep, realify(eigenstate(self.rep, m)))
        assert result.rank == 1
        assert result.psd

    def test_requires_spin_one(self):
        """Test that the closed form is spin-1 only."""
        rep = build_rep(1.5)
        with pytest.raises(RealifiedGeometryError, match="j=1 only"):
            p_matrix(rep, np.ones(8))

    @patch("su2orbits.geometry.realified_geometry.closed_form_p")
    def test_mismatch_raises(self, mock_closed_form):
        """Test that a disagreeing closed form raises PMatrixMismatchError."""
        mock_closed_form.return_value = 100.0 * np.eye(2)
        with pytest.raises(PMatrixMismatchError):
            p_matrix(self.rep, realify(eigenstate(self.rep, 1)))
        mock_closed_form.assert_called_once()


class TestPsdClassify:
    """Test suite for the (f0, f1) strata."""

    @pytest.mark.parametrize(
        "point, stratum, rank",
        [
            ((1.0, 0.5), Stratum.PRINCIPAL, 2),
            ((1.0, 1.0), Stratum.BOUNDARY, 1),
            ((1.0, 0.0), Stratum.BOUNDARY, 1),
            ((0.0, 0.0), Stratum.ORIGIN, 0),
        ],
    )
    def test_reference_points(self, point, stratum, rank):
        """Test the stratum and rank of reference points."""
        result = psd_classify(*point)
        assert result.stratum is stratum
        assert result.rank == rank

    def test_outside(self):
        """Test that f1 > f0^2 lies outside the orbit space."""
        assert psd_classify(1.0, 1.5).stratum is Stratum.OUTSIDE

    def test_stratum_values(self):
        """Test the rendered stratum names."""
        assert Stratum.PRINCIPAL.value == "Principal"
        assert Stratum("Boundary") is Stratum.BOUNDARY
