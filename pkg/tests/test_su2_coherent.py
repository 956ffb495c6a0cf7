import numpy as np
import pytest

from su2orbits.geometry.orbit_analysis import OrbitType, classify_orbit
from su2orbits.geometry.projective_state import (
    canonicalize,
    eigenstate,
    random_state,
    ray_distance,
)
from su2orbits.geometry.su2_coherent import (
    CoherentFamilySpec,
    CoherentStateError,
    OrbitFamily,
    coherent_displacement,
    cp1_point,
    default_orders,
    family_direction,
    identity_defect,
    j1_orbit_family,
    spin_coherent_general,
    spin_coherent_highest,
    uncertainty_gap,
)
from su2orbits.geometry.spin_rep import build_rep

"""
Tests for the su2_coherent module of su2orbits.

Checks the coherent families against the spin-1 eigen-direction families, the
resolution-of-identity quadrature and the spin uncertainty relation.
"""


class TestCoherentStates:
    """Test suite for coherent-state families."""

    def setup_method(self):
        """Set up the spin-1 representation."""
        self.rep = build_rep(1)

    def test_highest_at_origin(self):
        """Test that z = 0 gives the fiducial state."""
        top = spin_coherent_highest(self.rep, 0)
        middle = spin_coherent_general(self.rep, 0, 0)
        assert ray_distance(top, eigenstate(self.rep, 1)) < 1e-15
        assert ray_distance(middle, eigenstate(self.rep, 0)) < 1e-15

    def test_highest_amplitudes(self):
        """Test amplitudes proportional to z^k sqrt(binom(2j, k))."""
        z = 0.5
        expected = canonicalize([1.0, np.sqrt(2) * z, z * z], 1)
        assert np.allclose(spin_coherent_highest(self.rep, z).amplitudes, expected.amplitudes)

    def test_displacement_unitary(self):
        """Test that the coherent displacement is unitary."""
        for j in (0.5, 1, 2.5):
            rep = build_rep(j)
            u = coherent_displacement(rep, 0.7 - 1.9j)
            assert np.allclose(u.conj().T @ u, np.eye(rep.dim), atol=1e-12)

    def test_highest_matches_s2_family(self):
        """Test that e^{zJ-}|1> traces the S^2 family with z = tan(a) e^{ib}."""
        for alpha in np.linspace(0.05, 1.5, 8):
            for beta in np.linspace(0, 2 * np.pi, 7, endpoint=False):
                z = np.tan(alpha) * np.exp(1j * beta)
                s2 = j1_orbit_family("s2", alpha, beta)
                assert ray_distance(spin_coherent_highest(self.rep, z), s2) < 1e-10

    def test_m0_matches_rp2_family(self):
        """Test that the m = 0 family traces the RP^2 family with z = tan(a) e^{ib}."""
        for alpha in np.linspace(0.05, 1.5, 8):
            for beta in np.linspace(0, 2 * np.pi, 7, endpoint=False):
                z = np.tan(alpha) * np.exp(1j * beta)
                rp2 = j1_orbit_family(OrbitFamily.RP2, alpha, beta)
                assert ray_distance(spin_coherent_general(self.rep, 0, z), rp2) < 1e-10

    def test_lowest_weight_inversion(self):
        """Test that the m = -1 family at z is the highest-weight family at -1/z*."""
        rng = np.random.default_rng(0)
        for _ in range(20):
            z = complex(*rng.standard_normal(2))
            low = spin_coherent_general(self.rep, -1, z)
            assert ray_distance(low, spin_coherent_highest(self.rep, -1 / np.conj(z))) < 1e-10

    @pytest.mark.parametrize("j", [0.5, 1.5, 2])
    def test_general_reduces_to_highest(self, j):
        """Test that the fiducial m = j reproduces e^{zJ-}|j>."""
        rep = build_rep(j)
        z = 0.4 + 1.1j
        assert ray_distance(spin_coherent_general(rep, j, z), spin_coherent_highest(rep, z)) < 1e-10

    def test_rejects_non_finite_z(self):
        """Test that infinite parameters are rejected."""
        with pytest.raises(CoherentStateError):
            spin_coherent_highest(self.rep, complex(np.inf, 0))
        with pytest.raises(CoherentStateError):
            spin_coherent_general(self.rep, 0, complex(0, np.nan))

    def test_family_accepts_enum_members(self):
        """Test that OrbitFamily members and their string values build the same ray."""
        for kind in OrbitFamily:
            by_member = j1_orbit_family(kind, 0.3, 0.1)
            by_name = j1_orbit_family(kind.value, 0.3, 0.1)
            assert ray_distance(by_member, by_name) < 1e-13
        upper = j1_orbit_family("RP2", 0.3, 0.1)
        assert ray_distance(upper, j1_orbit_family("rp2", 0.3, 0.1)) < 1e-13

    def test_highest_injective_on_grid(self):
        """Test that distinct z on a grid give distinct highest-weight rays."""
        axis = np.linspace(-2.0, 2.0, 9)
        zs = [complex(x, y) for x in axis for y in axis]
        states = [spin_coherent_highest(self.rep, z) for z in zs]
        for i in range(len(states)):
            for k in range(i + 1, len(states)):
                assert ray_distance(states[i], states[k]) > 1e-3

    def test_family_members_are_two_dimensional(self):
        """Test that coherent family members lie on two-dimensional orbits."""
        rng = np.random.default_rng(4)
        for _ in range(20):
            z = complex(*rng.standard_normal(2))
            top = classify_orbit(self.rep, spin_coherent_highest(self.rep, z))
            assert top.orbit_dim == 2
            assert top.orbit_type is OrbitType.TWO_SPHERE
            middle = classify_orbit(self.rep, spin_coherent_general(self.rep, 0, z))
            assert middle.orbit_dim == 2
            assert middle.orbit_type is OrbitType.REAL_PROJECTIVE_PLANE
        for z in (0.3 - 0.8j, 1.7 + 0.2j):
            half = build_rep(1.5)
            assert classify_orbit(half, spin_coherent_highest(half, z)).orbit_dim == 2

    def test_unknown_family(self):
        """Test that only s2 and rp2 families exist."""
        with pytest.raises(CoherentStateError, match="Unknown family"):
            j1_orbit_family("torus", 0.1, 0.2)

    def test_family_direction_unit(self):
        """Test that family directions are unit vectors."""
        assert np.isclose(np.linalg.norm(family_direction(0.3, 1.2)), 1.0)

    def test_cp1_point(self):
        """Test the spin-1/2 ray (cos a, sin a e^{ib})."""
        point = cp1_point(np.pi / 4, 0.0)
        assert np.allclose(point.amplitudes, [np.sqrt(0.5), np.sqrt(0.5)])


class TestCoherentFamilySpec:
    """Test suite for family specifications."""

    def test_state(self):
        """Test that the spec builds the matching family member."""
        rep = build_rep(1)
        spec = CoherentFamilySpec(j=1.0, fiducial_m=0.0, z=0.3j)
        assert ray_distance(spec.state(rep), spin_coherent_general(rep, 0, 0.3j)) < 1e-13

    @pytest.mark.parametrize("m", [0.5, 2.0, -1.5])
    def test_invalid_fiducial(self, m):
        """Test that fiducials off the weight lattice are rejected."""
        with pytest.raises(CoherentStateError):
            CoherentFamilySpec(j=1.0, fiducial_m=m, z=0.0)

    def test_spin_mismatch(self):
        """Test that a spec only builds states of its own spin."""
        spec = CoherentFamilySpec(j=1.0, fiducial_m=1.0, z=0.0)
        with pytest.raises(CoherentStateError, match="does not fit"):
            spec.state(build_rep(2))


class TestIdentityDefect:
    """Test suite for the resolution-of-identity quadrature."""

    @pytest.mark.parametrize("j", [0.5, 1, 1.5, 2, 2.5, 3])
    def test_default_orders_exact(self, j):
        """Test that default orders resolve the identity for several fiducials."""
        rep = build_rep(j)
        rng = np.random.default_rng(3)
        for fiducial in (eigenstate(rep, j), random_state(j, rng)):
            check = identity_defect(rep, fiducial)
            assert check.defect < 1e-10
            assert check.d_prime == pytest.approx(1 / rep.dim, abs=1e-10)
            assert check.quadrature_orders == default_orders(rep)

    def test_default_orders_values(self):
        """Test (4j + 2, 2j + 2, 4j + 2)."""
        assert default_orders(build_rep(1)) == (6, 4, 6)

    @pytest.mark.parametrize(
        "orders, expected",
        [
            ((2, 1, 2), np.sqrt(1.5)),
            ((3, 1, 3), np.sqrt(0.375)),
            ((3, 2, 3), 0.0),
            ((4, 2, 4), 0.0),
        ],
    )
    def test_spin_one_low_orders(self, orders, expected):
        """Test the defect of |1> at low quadrature orders."""
        rep = build_rep(1)
        check = identity_defect(rep, eigenstate(rep, 1), *orders)
        assert check.defect == pytest.approx(expected, abs=1e-10)

    def test_half_spin_single_node(self):
        """Test that one node per angle leaves a defect of sqrt 2 for spin 1/2."""
        rep = build_rep(0.5)
        assert identity_defect(rep, eigenstate(rep, 0.5), 1, 1, 1).defect == pytest.approx(
            np.sqrt(2), abs=1e-12
        )
        assert identity_defect(rep, eigenstate(rep, 0.5), 2, 1, 2).defect < 1e-12

    def test_rejects_zero_order(self):
        """Test that quadrature orders below 1 are rejected."""
        rep = build_rep(1)
        with pytest.raises(CoherentStateError):
            identity_defect(rep, eigenstate(rep, 1), 0, 2, 2)


class TestUncertainty:
    """Test suite for the spin uncertainty relation."""

    @pytest.mark.parametrize("j", [0.5, 1, 1.5, 2, 3])
    def test_gap_nonnegative(self, j):
        """Test Var(Jx) Var(Jy) >= <Jz>^2 / 4 on random states."""
        rep = build_rep(j)
        rng = np.random.default_rng(4)
        assert min(uncertainty_gap(rep, random_state(j, rng)) for _ in range(500)) >= -1e-12

    @pytest.mark.parametrize("j", [0.5, 1, 2.5])
    def test_highest_weight_saturates(self, j):
        """Test that |j> saturates the bound."""
        rep = build_rep(j)
        assert abs(uncertainty_gap(rep, eigenstate(rep, j))) < 1e-12

    def test_zero_weight_value(self):
        """Test the gap of the spin-1 state |0>."""
        rep = build_rep(1)
        assert uncertainty_gap(rep, eigenstate(rep, 0)) == pytest.approx(1.0, abs=1e-12)
