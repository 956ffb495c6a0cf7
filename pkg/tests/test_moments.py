import numpy as np
import pytest

from su2orbits.weyl.fock import (
    TruncationError,
    build_fock,
    fock_superposition,
    glauber,
    number_state,
)
from su2orbits.weyl.moments import (
    MomentOrderError,
    centered_fiducial,
    group_law_defect,
    moment,
    moment_table,
    robertson_check,
    translation_defect,
    weyl_orbit_invariance,
)

"""
Tests for the moments module of su2orbits.

Centered symmetrized moments, their constancy along displacement orbits, the
displacement group law and the Robertson inequality.
"""


class TestMoments:
    """Test suite for M^mn."""

    def setup_method(self):
        """Set up a 64-level truncation."""
        self.fock = build_fock(64)

    def test_vacuum_values(self):
        """Test the vacuum second and fourth moments."""
        table = moment_table(self.fock, number_state(self.fock, 0), 4)
        assert table.get(2, 0) == pytest.approx(0.5, abs=1e-12)
        assert table.get(0, 2) == pytest.approx(0.5, abs=1e-12)
        assert table.get(1, 1) == pytest.approx(0.0, abs=1e-12)
        assert table.get(4, 0) == pytest.approx(0.75, abs=1e-12)
        assert table.get(0, 0) == pytest.approx(1.0, abs=1e-12)

    def test_table_shape(self):
        """Test that row m holds orders n = 0..max_order - m."""
        table = moment_table(self.fock, number_state(self.fock, 0), 3)
        assert [len(row) for row in table.entries] == [4, 3, 2, 1]
        assert set(table.to_dict()) == {"max_order", "qbar", "pbar", "entries"}

    def test_number_state(self):
        """Test M^20 = 3 hbar / 2 on |1>."""
        for hbar in (1.0, 2.0):
            fock = build_fock(32, hbar)
            assert moment(fock, number_state(fock, 1), 2, 0) == pytest.approx(1.5 * hbar)

    def test_glauber_moments_independent_of_z(self):
        """Test that every Glauber state has the vacuum moments up to order 6."""
        vacuum = moment_table(self.fock, glauber(self.fock, 0.0), 6)
        for z in (1.0, 0.5 + 1.5j, -1.2 + 0.7j):
            table = moment_table(self.fock, glauber(self.fock, z), 6)
            for row_a, row_b in zip(table.entries, vacuum.entries):
                assert np.allclose(row_a, row_b, atol=1e-8)

    def test_means_recorded(self):
        """Test that the table records Qbar and Pbar of the state."""
        z = 1.0 + 0.5j
        table = moment_table(self.fock, glauber(self.fock, z), 2)
        assert table.qbar == pytest.approx(np.sqrt(2) * z.real, abs=1e-10)
        assert table.pbar == pytest.approx(np.sqrt(2) * z.imag, abs=1e-10)

    @pytest.mark.parametrize("m, n", [(5, 4), (-1, 0), (0, 9)])
    def test_order_cap(self, m, n):
        """Test that negative orders and m + n > 8 are rejected."""
        with pytest.raises(MomentOrderError):
            moment(self.fock, number_state(self.fock, 0), m, n)

    def test_table_order_cap(self):
        """Test that tables stop at order 8."""
        with pytest.raises(MomentOrderError):
            moment_table(self.fock, number_state(self.fock, 0), 9)

    def test_centered_fiducial(self):
        """Test that the centered orbit point has zero means and the same moments."""
        state = fock_superposition(self.fock, {0: 1.0, 1: 0.5, 2: 0.3j})
        centered = centered_fiducial(self.fock, state)
        table = moment_table(self.fock, centered, 4)
        assert table.qbar == pytest.approx(0.0, abs=1e-10)
        assert table.pbar == pytest.approx(0.0, abs=1e-10)
        assert table.get(2, 2) == pytest.approx(moment(self.fock, state, 2, 2), abs=1e-8)


class TestOrbitInvariance:
    """Test suite for Heisenberg-Weyl orbit invariance."""

    def test_finite_combination(self):
        """Test (|0> + |3>)/sqrt 2 at 128 levels."""
        fock = build_fock(128)
        fiducial = fock_superposition(fock, {0: 1.0, 3: 1.0})
        deviation = weyl_orbit_invariance(fock, fiducial, [(0.3, -0.2), (-0.5, 0.1)], 4)
        assert deviation < 1e-6

    def test_vacuum(self):
        """Test that the vacuum orbit keeps its moments."""
        fock = build_fock(64)
        deviation = weyl_orbit_invariance(fock, number_state(fock, 0), [(1.0, 1.0), (-2.0, 0.5)])
        assert deviation < 1e-8

    def test_empty_displacements(self):
        """Test that no displacements gives zero deviation."""
        fock = build_fock(32)
        assert weyl_orbit_invariance(fock, number_state(fock, 0), []) == 0.0

    @pytest.mark.slow
    def test_refines_with_truncation(self):
        """Test that moments stabilize when the truncation doubles."""
        fiducials = {}
        for n_trunc in (64, 128):
            fock = build_fock(n_trunc)
            state = fock_superposition(fock, {0: 1.0, 2: 0.5, 3: 1j})
            fiducials[n_trunc] = moment_table(fock, state, 6)
        for row_a, row_b in zip(fiducials[64].entries, fiducials[128].entries):
            assert np.allclose(row_a, row_b, atol=1e-8)

    def test_support_guard(self):
        """Test that fiducials above n_trunc/4 are rejected."""
        fock = build_fock(16)
        with pytest.raises(TruncationError, match="support"):
            weyl_orbit_invariance(fock, number_state(fock, 5), [(0.1, 0.1)])

    def test_displacement_guard(self):
        """Test that |q| or |p| above 2 is rejected."""
        fock = build_fock(32)
        with pytest.raises(TruncationError):
            weyl_orbit_invariance(fock, number_state(fock, 0), [(2.5, 0.0)])


class TestGroupLaw:
    """Test suite for displacement products."""

    def setup_method(self):
        """Set up a 128-level truncation."""
        self.fock = build_fock(128)

    @pytest.mark.parametrize(
        "first, second", [((0.5, -0.3), (1.0, 0.7)), ((-1.2, 0.4), (0.3, -0.9))]
    )
    def test_phase(self, first, second):
        """Test D2 D1 = e^{i(q1 p2 - p1 q2)/2hbar} D(1 + 2) on low levels."""
        assert group_law_defect(self.fock, first, second) < 1e-8

    def test_translation(self):
        """Test D^dag Q D = Q + q and D^dag P D = P + p."""
        assert translation_defect(self.fock, 1.0, -0.5) < 1e-8


class TestRobertson:
    """Test suite for the Robertson inequality record."""

    def setup_method(self):
        """Set up a 64-level truncation."""
        self.fock = build_fock(64)

    def test_vacuum_saturates(self):
        """Test equality on the vacuum and both right-hand sides."""
        record = robertson_check(self.fock, number_state(self.fock, 0))
        assert record.lhs == pytest.approx(0.25, abs=1e-12)
        assert record.rhs_standard == pytest.approx(0.25, abs=1e-12)
        assert record.rhs_variant == pytest.approx(-0.25, abs=1e-12)
        assert record.satisfied

    def test_number_state(self):
        """Test lhs = 9/4 on |1>."""
        record = robertson_check(self.fock, number_state(self.fock, 1))
        assert record.lhs == pytest.approx(2.25, abs=1e-12)
        assert record.satisfied

    def test_random_combinations(self):
        """Test the inequality on random combinations of the first nine levels."""
        rng = np.random.default_rng(0)
        for _ in range(100):
            coefficients = rng.standard_normal(9) + 1j * rng.standard_normal(9)
            assert robertson_check(self.fock, fock_superposition(self.fock, coefficients)).satisfied

    def test_to_dict(self):
        """Test the serialized record fields."""
        data = robertson_check(self.fock, number_state(self.fock, 0)).to_dict()
        assert set(data) == {
            "m20",
            "m02",
            "m11",
            "lhs",
            "rhs_standard",
            "rhs_variant",
            "satisfied",
        }
