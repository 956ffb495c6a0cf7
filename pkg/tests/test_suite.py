import dataclasses
import math
from unittest.mock import patch

import pytest

from su2orbits.core import (
    CHECK_GROUPS,
    CheckResult,
    Config,
    SuiteReport,
    VerificationError,
    VerificationSuite,
    run_verification,
)
from su2orbits.geometry.spin_rep import build_rep

"""
Tests for the verification suite of su2orbits.
"""


def _corrupted_rep(j):
    rep = build_rep(j)
    return dataclasses.replace(rep, jx=rep.jx * 1.01)


class TestSuiteReport:
    """Test suite for report aggregation."""

    def test_passed_and_failures(self):
        """Test that one failing result fails the report."""
        good = CheckResult("a.x", "0", 0.0, 1e-12, True)
        bad = CheckResult("a.y", "0", 1.0, 1e-12, False)
        report = SuiteReport([good, bad])
        assert not report.passed
        assert report.failures() == [bad]
        assert SuiteReport([good]).passed

    def test_to_dict(self):
        """Test the serialized report."""
        data = SuiteReport([CheckResult("a.x", "0", 0.0, 1e-12, True)]).to_dict()
        assert data["passed"] is True
        assert data["results"][0]["name"] == "a.x"


class TestVerificationSuite:
    """Test suite for running check groups."""

    def test_unknown_group(self):
        """Test that unknown group names are rejected."""
        with pytest.raises(VerificationError, match="Unknown check group"):
            VerificationSuite(only=["bogus"])

    def test_groups_keep_canonical_order(self):
        """Test that requested groups run in CHECK_GROUPS order."""
        suite = VerificationSuite(only=["popu", "las"])
        assert suite.groups == ["las", "popu"]

    @pytest.mark.parametrize("group", ["generators", "las", "eigen_f1", "popu", "pi_flip"])
    def test_group_passes(self, group):
        """Test that fast groups pass with the default configuration."""
        report = run_verification(only=[group])
        assert report.results
        assert report.passed, [r.name for r in report.failures()]
        assert all(r.name.startswith(f"{group}.") for r in report.results)

    def test_las_relations_named(self):
        """Test one result per spin-1 relation."""
        names = [r.name for r in run_verification(only=["las"]).results]
        assert names == [
            "las.f2=f1",
            "las.f3=2",
            "las.f4=f1",
            "las.f5=2",
            "las.f6=f1^2",
            "las.f7=f1",
            "las.f8=2+f1",
        ]

    def test_subset_matches_full_streams(self):
        """Test that a group draws the same numbers alone or with others."""
        alone = run_verification(only=["las"]).results
        together = [
            r for r in run_verification(only=["las", "eigen_f1"]).results if r.name[:4] == "las."
        ]
        assert [r.observed for r in alone] == [r.observed for r in together]

    def test_corrupted_generators_fail(self):
        """Test that a perturbed J_x breaks the generator checks."""
        with patch("su2orbits.core.suite.build_rep", side_effect=_corrupted_rep):
            report = run_verification(only=["generators"])
        failed = {r.name for r in report.failures()}
        assert {"generators.commutators", "generators.casimir"} <= failed
        assert "generators.hermiticity" not in failed

    def test_group_exception_recorded(self):
        """Test that an exception inside a group becomes a failed '.error' result."""
        with patch("su2orbits.core.suite.invariants_f", side_effect=RuntimeError("boom")):
            report = run_verification(only=["las", "popu"])
        error = next(r for r in report.results if r.name == "las.error")
        assert not error.passed
        assert math.isnan(error.observed)
        assert any(r.name.startswith("popu.") for r in report.results)

    def test_seed_from_config(self):
        """Test that the configured seed drives the group streams."""
        first = VerificationSuite(Config(seed=1), only=["las"]).run()
        second = VerificationSuite(Config(seed=1), only=["las"]).run()
        assert [r.observed for r in first.results] == [r.observed for r in second.results]

    @pytest.mark.slow
    def test_full_run(self):
        """Test that every group passes."""
        report = run_verification()
        assert report.passed, [r.name for r in report.failures()]
        groups = {r.name.split(".")[0] for r in report.results}
        assert groups == set(CHECK_GROUPS)
