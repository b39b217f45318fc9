"""
Unit tests for correlations and the two inequalities.
"""

import math

import numpy as np
import pytest

from src.quantum.bellcat import StateParams, spin_correlation
from src.quantum.correlation import (
    BellTriple,
    ChshQuad,
    Mode,
    Which,
    bell_lhs_rhs,
    chsh,
    correlate,
    correlate_many,
    correlation_arrays,
    correlation_matrix,
)
from src.quantum.spincore import Direction

SPINS = (1, 2, 3, 4, 5)
STANDARD_QUAD = (0.0, math.pi / 4.0, -math.pi / 4.0, math.pi / 2.0)


def random_angles(rng, size):
    return rng.uniform(0.0, math.pi, size), rng.uniform(0.0, 2.0 * math.pi, size)


class TestCorrelate:
    """Test cases for single correlations."""

    def setup_method(self):
        """Set up test fixtures."""
        self.rng = np.random.default_rng(5)

    def test_spin_half_local_part(self):
        """Test spin half local part."""
        p = StateParams.of(1, xi=0.3, eta=1.1)
        theta_a, phi_a = random_angles(self.rng, 1000)
        theta_b, phi_b = random_angles(self.rng, 1000)
        p_lc, _, _, _ = correlate_many(p, theta_a, phi_a, theta_b, phi_b)
        np.testing.assert_allclose(p_lc, np.cos(theta_a) * np.cos(theta_b), atol=1e-12)

    def test_local_part_factorizes(self):
        """Test local part factorizes."""
        for two_s in SPINS:
            p = StateParams.of(two_s, xi=0.7)
            theta_a, phi_a = random_angles(self.rng, 1000)
            theta_b, phi_b = random_angles(self.rng, 1000)
            p_lc, _, _, _ = correlate_many(p, theta_a, phi_a, theta_b, phi_b)
            f = lambda t: np.cos(t / 2.0) ** (2 * two_s) - np.sin(t / 2.0) ** (2 * two_s)  # noqa: E731
            np.testing.assert_allclose(p_lc, f(theta_a) * f(theta_b), atol=1e-12)

    def test_coplanar_spin_half_is_cosine(self):
        """Test coplanar spin half is cosine."""
        p = StateParams.of(1)
        theta = np.linspace(0.0, math.pi, 50)
        _, _, p_total, weight = correlate_many(p, theta[:, None], 0.0, theta[None, :], 0.0)
        np.testing.assert_allclose(p_total, np.cos(theta[:, None] - theta[None, :]), atol=1e-12)
        np.testing.assert_allclose(weight, 1.0, atol=1e-12)

    def test_integer_spin_has_no_nonlocal_correlation(self):
        """Test integer spin has no nonlocal correlation."""
        breakdown = correlate(StateParams.of(2, xi=0.785), Direction(theta=1.5708), Direction(theta=1.5708))
        assert breakdown.p_nlc == 0.0
        assert breakdown.p_total == breakdown.p_lc

    def test_nonlocal_maximum(self):
        """Test nonlocal maximum."""
        equator = Direction(theta=math.pi / 2.0)
        for two_s, expected in ((1, 1.0), (3, 0.0625), (5, 0.00390625)):
            breakdown = correlate(StateParams.of(two_s), equator, equator)
            assert abs(breakdown.p_nlc) == pytest.approx(expected, abs=1e-15)

    def test_oracle_mode_agrees(self):
        """Test oracle mode agrees."""
        for two_s in (1, 2, 3):
            p = StateParams.of(two_s, xi=0.5, eta=0.25)
            a = Direction(theta=0.8, phi=2.0)
            b = Direction(theta=2.1, phi=0.4)
            closed = correlate(p, a, b, Mode.CLOSED_FORM)
            oracle = correlate(p, a, b, Mode.ORACLE)
            assert closed.p_lc == pytest.approx(oracle.p_lc, abs=1e-12)
            assert closed.p_nlc == pytest.approx(oracle.p_nlc, abs=1e-12)

    def test_spin_half_matches_operator_expectation(self):
        """Test spin half matches operator expectation."""
        p = StateParams.of(1)
        for alpha, beta in ((0.0, 0.4), (1.0, -2.0), (2.5, 0.3)):
            a, b = Direction.coplanar(alpha), Direction.coplanar(beta)
            assert spin_correlation(p, a, b) == pytest.approx(correlate(p, a, b).p_total, abs=1e-12)

    def test_matrix_is_symmetric(self):
        """Test matrix is symmetric."""
        p = StateParams.of(3, xi=0.6, eta=0.2)
        thetas, phis = random_angles(self.rng, 6)
        matrix = correlation_matrix(p, thetas, phis)
        np.testing.assert_allclose(matrix, matrix.T, atol=1e-15)
        local = correlation_matrix(p, thetas, phis, Which.LOCAL_ONLY)
        assert local.shape == (6, 6)

    def test_part(self):
        """Test selecting the local or total part of a breakdown."""
        breakdown = correlate(StateParams.of(1), Direction(theta=0.5), Direction(theta=1.0))
        assert breakdown.part(Which.LOCAL_ONLY) == breakdown.p_lc
        assert breakdown.part("total") == breakdown.p_total


class TestBellInequality:
    """Test cases for the modified Bell inequality."""

    def test_spin_half_violation(self):
        """Test spin half violation."""
        t = BellTriple.coplanar(StateParams.of(1), (0.0, math.pi / 3.0, 2.0 * math.pi / 3.0))
        result = bell_lhs_rhs(t)
        assert result.lhs == pytest.approx(1.0, abs=1e-9)
        assert result.rhs == pytest.approx(0.5, abs=1e-9)
        assert result.margin == pytest.approx(0.5, abs=1e-9)
        assert result.violated

    def test_local_part_never_violates(self):
        """Test local part never violates."""
        rng = np.random.default_rng(42)
        n = 100000
        for two_s in SPINS:
            xi = rng.uniform(0.0, math.pi / 2.0, n)
            eta = rng.uniform(0.0, 2.0 * math.pi, n)
            (ta, pa), (tb, pb), (tc, pc) = (random_angles(rng, n) for _ in range(3))
            p_ab = correlation_arrays(two_s, xi, eta, ta, pa, tb, pb)[0]
            p_ac = correlation_arrays(two_s, xi, eta, ta, pa, tc, pc)[0]
            p_bc = correlation_arrays(two_s, xi, eta, tb, pb, tc, pc)[0]
            assert np.all(np.abs(p_ab - p_ac) <= 1.0 - p_bc + 1e-12)

    def test_local_only_not_flagged(self):
        """Test local only not flagged."""
        t = BellTriple.coplanar(StateParams.of(1), (0.0, math.pi / 3.0, 2.0 * math.pi / 3.0))
        assert not bell_lhs_rhs(t, Which.LOCAL_ONLY).violated

    def test_integer_spin_not_violated(self):
        """Test integer spin not violated."""
        t = BellTriple.coplanar(StateParams.of(2), (0.0, math.pi / 3.0, 2.0 * math.pi / 3.0))
        assert not bell_lhs_rhs(t).violated


class TestChsh:
    """Test cases for the CHSH combination."""

    def test_standard_quad(self):
        """Test standard quad."""
        q = ChshQuad.coplanar(StateParams.of(1), STANDARD_QUAD)
        assert chsh(q) == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-12)
        assert chsh(q, mode=Mode.ORACLE) == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-12)

    def test_local_bound(self):
        """Test local bound."""
        rng = np.random.default_rng(43)
        n = 100000
        for two_s in SPINS:
            xi = rng.uniform(0.0, math.pi / 2.0, n)
            (ta, pa), (tb, pb), (tc, pc), (td, pd) = (random_angles(rng, n) for _ in range(4))

            def p_lc(t1, p1, t2, p2):
                return correlation_arrays(two_s, xi, 0.0, t1, p1, t2, p2)[0]

            value = np.abs(p_lc(ta, pa, tb, pb) + p_lc(ta, pa, tc, pc) + p_lc(td, pd, tb, pb) - p_lc(td, pd, tc, pc))
            assert np.all(value <= 2.0 + 1e-12)

    def test_integer_spin_standard_quad(self):
        """Test integer spin standard quad."""
        q = ChshQuad.coplanar(StateParams.of(2), STANDARD_QUAD)
        assert chsh(q) <= 2.0
