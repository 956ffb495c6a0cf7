import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from ..geometry.invariant_engine import ChainSpec, chain_invariant, invariants_f
from ..geometry.orbit_analysis import (
    OrbitType,
    classify_orbit,
    eigen_seeds,
    little_algebra_dim,
    mean_spin,
    orbit_vectors,
    pi_flip_fixes,
    scan_orbit_space,
    two_dim_orbits,
)
from ..geometry.projective_state import (
    apply,
    canonicalize,
    eigenstate,
    octant_projection_batch,
    octant_projection_j1,
    random_state,
    ray_distance,
    rectangle_fill_ratio,
    theta_orbit_rectangle,
    theta_state,
)
from ..geometry.realified_geometry import (
    GradientTarget,
    Stratum,
    closed_form_p,
    f0_value,
    f1_homogeneous,
    grad_invariant,
    psd_classify,
)
from ..geometry.spin_rep import (
    adjoint_rotation,
    build_rep,
    exp_su2,
    j1_closed_form_unitary,
    sample_haar,
    sample_haar_batch,
)
from ..geometry.su2_coherent import (
    identity_defect,
    j1_orbit_family,
    spin_coherent_general,
    spin_coherent_highest,
    uncertainty_gap,
)
from ..weyl.fock import (
    build_fock,
    canonical_commutator_defect,
    displacement,
    fock_superposition,
    glauber,
    glauber_parameter,
)
from ..weyl.moments import (
    group_law_defect,
    moment_table,
    robertson_check,
    translation_defect,
    weyl_orbit_invariance,
)
from .config import Config

"""
Verification suite for su2orbits.

Each named group recomputes a family of closed-form facts about spin orbits, coherent
families and Heisenberg-Weyl moments, and records one CheckResult per fact. Groups draw
random numbers from their own stream spawned from the configured seed, so running a subset
with ``only`` gives the same numbers as the full run.

Example usage:

    report = VerificationSuite(Config(), only=["las"]).run()
    assert report.passed
"""

logger = logging.getLogger(__name__)

CHECK_GROUPS = (
    "generators",
    "closed_form_exp",
    "invariance",
    "las",
    "eigen_f1",
    "popu",
    "orbit_dims",
    "pi_flip",
    "p_matrix",
    "identity",
    "coherent",
    "uncertainty",
    "weyl",
    "octant",
)

SUITE_SPINS = (0.5, 1, 1.5, 2, 2.5, 3)


class VerificationError(Exception):
    """Custom exception for unknown check groups."""

    pass


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of one check.

    Attributes:
        name (str): Dotted name ``group.check``.
        expected (str): Target value or bound, as printed.
        observed (float): Measured deviation, count or value.
        tolerance (float): Allowed deviation; 0 for exact counts and bounds.
        passed (bool): Whether the check holds.
    """

    name: str
    expected: str
    observed: float
    tolerance: float
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class SuiteReport:
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def failures(self) -> List[CheckResult]:
        return [result for result in self.results if not result.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "results": [r.to_dict() for r in self.results]}


def _max_abs(matrix: Any) -> float:
    return float(np.max(np.abs(matrix)))


class VerificationSuite:
    """
    Runs the named check groups.

    Attributes:
        config (Config): Tolerances and root seed.
        groups (List[str]): Groups to run, in CHECK_GROUPS order.
    """

    def __init__(self, config: Optional[Config] = None, only: Optional[Sequence[str]] = None):
        """
        Initialize the suite.

        Args:
            config (Optional[Config]): Settings; defaults to ``Config()``.
            only (Optional[Sequence[str]]): Restrict the run to these groups.

        Raises:
            VerificationError: If a requested group does not exist.
        """
        self.config = config or Config()
        requested = list(only) if only else list(CHECK_GROUPS)
        unknown = sorted(set(requested) - set(CHECK_GROUPS))
        if unknown:
            raise VerificationError(
                f"Unknown check group(s) {unknown}; choose from {', '.join(CHECK_GROUPS)}"
            )
        self.groups = [name for name in CHECK_GROUPS if name in requested]
        streams = np.random.SeedSequence(self.config.seed).spawn(len(CHECK_GROUPS))
        self._streams = dict(zip(CHECK_GROUPS, streams))
        self._results: List[CheckResult] = []
        logger.info("Verification suite initialized with groups: %s", self.groups)

    def run(self) -> SuiteReport:
        """
        Execute every selected group.

        An exception inside a group is recorded as a failed ``<group>.error`` check and the
        remaining groups still run.

        Returns:
            SuiteReport: All check results.
        """
        self._results = []
        handlers: Dict[str, Callable[[np.random.Generator], None]] = {
            name: getattr(self, f"_check_{name}") for name in self.groups
        }
        for name in self.groups:
            logger.info("Running check group: %s", name)
            rng = np.random.default_rng(self._streams[name])
            try:
                handlers[name](rng)
            except Exception as e:
                logger.error("Check group %s raised: %s", name, e)
                self._record(f"{name}.error", "no exception", math.nan, 0.0, False)
        report = SuiteReport(results=list(self._results))
        logger.info(
            "Verification finished: %d checks, %d failed",
            len(report.results),
            len(report.failures()),
        )
        return report

    def _record(
        self, name: str, expected: str, observed: float, tolerance: float, passed: bool
    ) -> None:
        self._results.append(CheckResult(name, expected, float(observed), tolerance, passed))

    def _within(self, name: str, deviation: float, tolerance: float) -> None:
        self._record(name, "0", deviation, tolerance, bool(deviation <= tolerance))

    def _at_least(self, name: str, value: float, bound: float) -> None:
        self._record(name, f">= {bound:g}", value, 0.0, bool(value >= bound))

    def _count(self, name: str, value: int, expected: int) -> None:
        self._record(name, str(expected), value, 0.0, value == expected)

    def _check_generators(self, rng: np.random.Generator) -> None:
        commutator = hermiticity = casimir = 0.0
        for j in SUITE_SPINS:
            rep = build_rep(j)
            jx, jy, jz = rep.jx, rep.jy, rep.jz
            commutator = max(
                commutator,
                _max_abs(jx @ jy - jy @ jx - 1j * jz),
                _max_abs(jy @ jz - jz @ jy - 1j * jx),
                _max_abs(jz @ jx - jx @ jz - 1j * jy),
            )
            hermiticity = max(hermiticity, *(_max_abs(g - g.conj().T) for g in rep.generators))
            casimir = max(casimir, _max_abs(rep.casimir() - rep.j * (rep.j + 1) * np.eye(rep.dim)))
        self._within("generators.commutators", commutator, 1e-12)
        self._within("generators.hermiticity", hermiticity, 1e-12)
        self._within("generators.casimir", casimir, 1e-12)

        rep = build_rep(1)
        s = 1.0 / np.sqrt(2.0)
        printed = (
            s * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]),
            s * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]]),
            np.diag([1.0, 0.0, -1.0]),
        )
        deviation = max(_max_abs(g - p) for g, p in zip(rep.generators, printed))
        self._within("generators.j1_matrices", deviation, 1e-15)

    def _check_closed_form_exp(self, rng: np.random.Generator) -> None:
        rep = build_rep(1)
        coords = np.pi * rng.standard_normal((100, 3))
        deviation = max(_max_abs(exp_su2(rep, r) - j1_closed_form_unitary(r)) for r in coords)
        self._within("closed_form_exp.j1_formula", deviation, 1e-12)

        half = build_rep(0.5)
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        full_turn = _max_abs(exp_su2(half, 2 * np.pi * axis) + np.eye(2))
        self._within("closed_form_exp.half_spin_2pi", full_turn, 1e-12)

        unitarity = 0.0
        for two_j in range(1, 9):
            rep_j = build_rep(two_j / 2)
            for r in sample_haar_batch(rng, 100):
                u = exp_su2(rep_j, r)
                unitarity = max(unitarity, _max_abs(u.conj().T @ u - np.eye(rep_j.dim)))
        self._within("closed_form_exp.unitarity", unitarity, 1e-12)

        covariance = 0.0
        for r in sample_haar_batch(rng, 20):
            u = exp_su2(rep, r)
            rotation = adjoint_rotation(r)
            for axis_index in range(3):
                n = np.eye(3)[axis_index]
                lhs = u.conj().T @ np.tensordot(n, rep.generators, axes=1) @ u
                rhs = np.tensordot(rotation @ n, rep.generators, axes=1)
                covariance = max(covariance, _max_abs(lhs - rhs))
        self._within("closed_form_exp.adjoint_covariance", covariance, 1e-12)

    def _check_invariance(self, rng: np.random.Generator) -> None:
        deviation = 0.0
        for j in (0.5, 1, 1.5, 2):
            rep = build_rep(j)
            for _ in range(200):
                state = random_state(j, rng)
                moved = apply(exp_su2(rep, sample_haar(rng)), state)
                before = invariants_f(rep, state).as_tuple()
                after = invariants_f(rep, moved).as_tuple()
                deviation = max(
                    deviation, *(abs(a - b) / max(1.0, abs(a)) for a, b in zip(before, after))
                )
        self._within("invariance.f1_to_f8", deviation, 1e-9)

        specs = [ChainSpec.singletons(n) for n in (2, 3, 4)] + [
            ChainSpec.from_sizes(sizes) for sizes in ((2,), (1, 2), (2, 2))
        ]
        chain_deviation = oracle_deviation = 0.0
        for j in (0.5, 1, 1.5, 2):
            rep = build_rep(j)
            for _ in range(30):
                state = random_state(j, rng)
                moved = apply(exp_su2(rep, sample_haar(rng)), state)
                for spec in specs:
                    a = chain_invariant(rep, state, spec)
                    b = chain_invariant(rep, moved, spec)
                    chain_deviation = max(chain_deviation, abs(a - b) / max(1.0, abs(a)))
                f1 = invariants_f(rep, state).f1
                oracle_deviation = max(
                    oracle_deviation,
                    abs(chain_invariant(rep, state, ChainSpec.singletons(2)) - 2 * f1),
                    abs(chain_invariant(rep, state, ChainSpec.from_sizes((2,))) - 2 * j * (j + 1)),
                    abs(chain_invariant(rep, state, ChainSpec.singletons(4)) - 2 * f1**2),
                )
        self._within("invariance.chains", chain_deviation, 1e-9)
        self._within("invariance.chain_reductions", oracle_deviation, 1e-11)

        rep = build_rep(1)
        covariance = 0.0
        for _ in range(50):
            state = random_state(1, rng)
            r = sample_haar(rng)
            moved = apply(exp_su2(rep, r), state)
            expected = adjoint_rotation(r).T @ mean_spin(rep, state)
            covariance = max(covariance, _max_abs(mean_spin(rep, moved) - expected))
        self._within("invariance.mean_spin_covariance", covariance, 1e-12)

    def _check_las(self, rng: np.random.Generator) -> None:
        rep = build_rep(1)
        relations = ("f2=f1", "f3=2", "f4=f1", "f5=2", "f6=f1^2", "f7=f1", "f8=2+f1")
        deviations = dict.fromkeys(relations, 0.0)
        for _ in range(1000):
            f = invariants_f(rep, random_state(1, rng))
            observed = {
                "f2=f1": f.f2 - f.f1,
                "f3=2": f.f3 - 2.0,
                "f4=f1": f.f4 - f.f1,
                "f5=2": f.f5 - 2.0,
                "f6=f1^2": f.f6 - f.f1**2,
                "f7=f1": f.f7 - f.f1,
                "f8=2+f1": f.f8 - 2.0 - f.f1,
            }
            for key, value in observed.items():
                deviations[key] = max(deviations[key], abs(value))
        for key, value in deviations.items():
            self._within(f"las.{key}", value, 1e-10)

    def _check_eigen_f1(self, rng: np.random.Generator) -> None:
        deviation = 0.0
        for two_j in range(1, 9):
            rep = build_rep(two_j / 2)
            for m in rep.m_values:
                deviation = max(deviation, abs(invariants_f(rep, eigenstate(rep, m)).f1 - m * m))
        self._within("eigen_f1.eigenstates", deviation, 1e-12)

        rep = build_rep(1)
        mean_dev = f1_dev = 0.0
        for theta in np.linspace(0.0, np.pi / 2, 37):
            state = theta_state(theta)
            mean_dev = max(mean_dev, abs(mean_spin(rep, state)[2] - np.cos(2 * theta)))
            f1_dev = max(f1_dev, abs(invariants_f(rep, state).f1 - np.cos(2 * theta) ** 2))
        self._within("eigen_f1.theta_mean_spin", mean_dev, 1e-12)
        self._within("eigen_f1.theta_f1", f1_dev, 1e-12)

    def _check_popu(self, rng: np.random.Generator) -> None:
        rows = scan_orbit_space(build_rep(1.5), 0, self.config.seed, rank_tol=self.config.rank_tol)
        self._count("popu.eigen_rows", len(rows), 2)
        # f1 = m^2 and f2 = m^4; f8 is the full contraction, not m^6
        targets = ((2.25, 5.0625, 1413 / 64), (0.25, 0.0625, 589 / 64))
        deviation = 0.0
        for row, target in zip(rows, targets):
            values = (row.invariants.f1, row.invariants.f2, row.invariants.f8)
            deviation = max(deviation, *(abs(a - b) for a, b in zip(values, target)))
        self._within("popu.eigen_values", deviation if len(rows) == 2 else math.inf, 1e-12)

    def _check_orbit_dims(self, rng: np.random.Generator) -> None:
        tol = self.config.rank_tol
        for j, expected in ((0.5, 1), (1, 0), (1.5, 0)):
            rep = build_rep(j)
            hits = sum(
                little_algebra_dim(rep, random_state(j, rng), tol) == expected for _ in range(1000)
            )
            self._count(f"orbit_dims.random_j{rep.label()}", hits, 1000)

        eigen_hits = eigen_total = 0
        type_mismatches = 0
        for j in SUITE_SPINS:
            rep = build_rep(j)
            for m in rep.m_values:
                eigen_total += 1
                eigen_hits += little_algebra_dim(rep, eigenstate(rep, m), tol) == 1
            for state, (_, _, kind) in zip(eigen_seeds(rep), two_dim_orbits(j)):
                report = classify_orbit(rep, state, tol, self.config.f1_tol, self.config.flip_tol)
                type_mismatches += report.orbit_type is not kind
        self._count("orbit_dims.eigenstates", eigen_hits, eigen_total)
        self._count("orbit_dims.two_dim_types", type_mismatches, 0)

        rp2_counts = [
            sum(kind is OrbitType.REAL_PROJECTIVE_PLANE for _, _, kind in two_dim_orbits(j))
            for j in SUITE_SPINS
        ]
        self._count("orbit_dims.rp2_integer_spins", sum(rp2_counts[1::2]), 3)
        self._count("orbit_dims.rp2_half_spins", sum(rp2_counts[0::2]), 0)

    def _check_pi_flip(self, rng: np.random.Generator) -> None:
        flip_tol = self.config.flip_tol
        cases = ((1, 1e-6, True, "j1_fixed"), (1.5, 0.01, False, "j3/2_moved"))
        for j, threshold, expected, key in cases:
            rep = build_rep(j)
            hits = total = 0
            while total < 1000:
                state = random_state(j, rng)
                spin = mean_spin(rep, state)
                if spin @ spin <= threshold:
                    continue
                total += 1
                hits += pi_flip_fixes(rep, state, flip_tol) is expected
            self._count(f"pi_flip.{key}", hits, 1000)

    def _check_p_matrix(self, rng: np.random.Generator) -> None:
        rep = build_rep(1)
        deviation = 0.0
        for _ in range(500):
            x = rng.uniform(0.5, 2.0) * rng.standard_normal(2 * rep.dim)
            g0 = grad_invariant(GradientTarget.F0, rep, x)
            g1 = grad_invariant(GradientTarget.F1, rep, x)
            built = np.array([[g0 @ g0, g0 @ g1], [g1 @ g0, g1 @ g1]])
            expected = closed_form_p(f0_value(x), f1_homogeneous(rep, x))
            deviation = max(
                deviation, float(np.linalg.norm(built - expected) / np.linalg.norm(expected))
            )
        self._within("p_matrix.closed_form", deviation, 1e-8)

        reference_points = (
            ((1.0, 0.5), Stratum.PRINCIPAL),
            ((1.0, 1.0), Stratum.BOUNDARY),
            ((1.0, 0.0), Stratum.BOUNDARY),
            ((0.0, 0.0), Stratum.ORIGIN),
            ((1.0, 1.5), Stratum.OUTSIDE),
        )
        mismatches = sum(
            psd_classify(*point).stratum is not stratum for point, stratum in reference_points
        )
        self._count("p_matrix.strata_points", mismatches, 0)

    def _check_identity(self, rng: np.random.Generator) -> None:
        worst = 0.0
        for j in SUITE_SPINS:
            rep = build_rep(j)
            fiducials = [eigenstate(rep, rep.j), eigenstate(rep, rep.m_values[rep.two_j // 2])]
            fiducials.append(random_state(j, rng))
            for fiducial in fiducials:
                worst = max(worst, identity_defect(rep, fiducial).defect)
        self._within("identity.default_orders", worst, 1e-10)

        rep = build_rep(1)
        control = identity_defect(rep, eigenstate(rep, 1), 2, 1, 2).defect
        self._at_least("identity.under_resolved_control", control, 0.05)

    def _check_coherent(self, rng: np.random.Generator) -> None:
        rep = build_rep(1)
        alphas = (np.arange(50) + 0.5) / 50 * (np.pi / 2)
        betas = np.arange(50) / 50 * (2 * np.pi)
        s2_dev = rp2_dev = 0.0
        for alpha in alphas:
            for beta in betas:
                z = np.tan(alpha) * np.exp(1j * beta)
                s2 = j1_orbit_family("s2", alpha, beta)
                rp2 = j1_orbit_family("rp2", alpha, beta)
                s2_dev = max(s2_dev, ray_distance(spin_coherent_highest(rep, z), s2))
                rp2_dev = max(rp2_dev, ray_distance(spin_coherent_general(rep, 0, z), rp2))
        self._within("coherent.highest_matches_s2_family", s2_dev, 1e-10)
        self._within("coherent.m0_matches_rp2_family", rp2_dev, 1e-10)

        lowest_dev = top_dev = 0.0
        for _ in range(100):
            z = complex(*rng.standard_normal(2))
            lowest_dev = max(
                lowest_dev,
                ray_distance(
                    spin_coherent_general(rep, -1, z), spin_coherent_highest(rep, -1 / np.conj(z))
                ),
            )
            for j in (0.5, 1.5, 2):
                rep_j = build_rep(j)
                top_dev = max(
                    top_dev,
                    ray_distance(
                        spin_coherent_general(rep_j, j, z), spin_coherent_highest(rep_j, z)
                    ),
                )
        self._within("coherent.lowest_weight_inversion", lowest_dev, 1e-10)
        self._within("coherent.highest_weight_reduction", top_dev, 1e-10)

    def _check_uncertainty(self, rng: np.random.Generator) -> None:
        worst = math.inf
        saturation = 0.0
        for j in SUITE_SPINS:
            rep = build_rep(j)
            gauss = rng.standard_normal((10_000, rep.dim)) + 1j * rng.standard_normal(
                (10_000, rep.dim)
            )
            for vec in gauss:
                worst = min(worst, uncertainty_gap(rep, canonicalize(vec, j)))
            saturation = max(saturation, abs(uncertainty_gap(rep, eigenstate(rep, j))))
        self._at_least("uncertainty.gap_nonnegative", worst, -1e-12)
        self._within("uncertainty.saturation_highest_weight", saturation, 1e-12)

    def _check_weyl(self, rng: np.random.Generator) -> None:
        fock = build_fock(64)
        vacuum = moment_table(fock, glauber(fock, 0.0), 6)
        second = higher = 0.0
        for z in (0.0, 1.0, 0.5 + 1.5j, 2.0j, -1.2 + 0.7j, np.sqrt(2) * (1 - 1j)):
            table = moment_table(fock, glauber(fock, z), 6)
            second = max(
                second,
                abs(table.get(2, 0) - fock.hbar / 2),
                abs(table.get(0, 2) - fock.hbar / 2),
                abs(table.get(1, 1)),
            )
            for m, row in enumerate(table.entries):
                for n, value in enumerate(row):
                    higher = max(higher, abs(value - vacuum.get(m, n)))
        self._within("weyl.glauber_second_moments", second, 1e-8)
        self._within("weyl.glauber_higher_moments", higher, 1e-8)

        grid = [(q, p) for q in (-2.0, -0.7, 0.0, 1.3, 2.0) for p in (-2.0, -0.4, 0.0, 0.9, 2.0)]
        deviations = []
        for n_trunc in (128, 256):
            big = build_fock(n_trunc)
            fiducial = fock_superposition(big, {0: 1.0, 3: 1.0})
            deviations.append(weyl_orbit_invariance(big, fiducial, grid, max_order=4))
        self._within("weyl.orbit_invariance", deviations[0], 1e-6)
        self._record(
            "weyl.orbit_invariance_refines",
            "<= half or 1e-10",
            deviations[1],
            max(deviations[0] / 2, 1e-10),
            bool(deviations[1] <= max(deviations[0] / 2, 1e-10)),
        )

        big = build_fock(128)
        pairs = (((0.5, -0.3), (1.0, 0.7)), ((-1.2, 0.4), (0.3, -0.9)), ((1.5, 1.0), (-0.5, 0.5)))
        law = max(group_law_defect(big, a, b) for a, b in pairs)
        self._within("weyl.group_law_phase", law, 1e-8)
        self._within("weyl.translation", translation_defect(big, 1.0, -0.5), 1e-8)

        vacuum_state = glauber(fock, 0.0)
        shift = 0.0
        for q, p in ((1.0, 0.5), (-0.8, 1.6), (2.0, -2.0)):
            moved = displacement(fock, q, p) @ vacuum_state.amplitudes
            target = glauber(fock, glauber_parameter(fock, q, p)).amplitudes
            shift = max(shift, float(np.linalg.norm(moved - np.vdot(target, moved) * target)))
        self._within("weyl.displaced_vacuum_is_glauber", shift, 1e-8)
        self._within("weyl.canonical_commutator", canonical_commutator_defect(fock), 1e-12)

        satisfied = 0
        for _ in range(1000):
            coefficients = rng.standard_normal(9) + 1j * rng.standard_normal(9)
            satisfied += robertson_check(fock, fock_superposition(fock, coefficients)).satisfied
        self._count("weyl.robertson_random_states", satisfied, 1000)

    def _check_octant(self, rng: np.random.Generator) -> None:
        alphas = np.linspace(0.0, np.pi / 2, 50)
        betas = np.linspace(0.0, 2 * np.pi, 50, endpoint=False)
        rp2_v = s2_sum = 0.0
        for alpha in alphas:
            for beta in betas:
                rp2_v = max(rp2_v, abs(octant_projection_j1(j1_orbit_family("rp2", alpha, beta)).v))
                point = octant_projection_j1(j1_orbit_family("s2", alpha, beta))
                s2_sum = max(s2_sum, abs(point.abs_z1 + point.abs_z2 - 1.0))
        self._within("octant.rp2_on_bisectrix", rp2_v, 1e-12)
        self._within("octant.s2_on_antidiagonal", s2_sum, 1e-12)

        theta = np.pi / 8
        vectors = orbit_vectors(build_rep(1), theta_state(theta), 100_000, rng)
        points = octant_projection_batch(vectors)
        uv = points[:, 2:]
        self._at_least("octant.theta_fill_ratio", rectangle_fill_ratio(uv), 0.95)
        u_min, u_max, v_min, v_max = theta_orbit_rectangle(theta)
        outside = max(
            float(np.max(u_min - uv[:, 0])),
            float(np.max(uv[:, 0] - u_max)),
            float(np.max(v_min - uv[:, 1])),
            float(np.max(uv[:, 1] - v_max)),
            0.0,
        )
        self._within("octant.theta_inside_rectangle", outside, 1e-9)
