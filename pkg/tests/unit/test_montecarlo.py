"""
Unit tests for Monte Carlo sampling and the hidden-variable battery.
"""

import math

import numpy as np
import pytest

from src.montecarlo import (
    LhvModel,
    SignModel,
    empirical_chsh,
    make_rng,
    random_triples,
    sample_lhv,
    sample_quantum,
    uniform_sphere,
    verify_lhv_bell,
)
from src.montecarlo.rng import batch_sizes
from src.montecarlo.sampler import SampleStats, outcome_probabilities
from src.quantum.bellcat import DensityElements, StateParams
from src.quantum.correlation import ChshQuad, correlate
from src.quantum.spincore import Direction
from src.utils.validators import NumericalError, ValidationError

TSIRELSON = 2.0 * math.sqrt(2.0)


class TestRng:
    """Test cases for seeded streams."""

    def test_reproducible(self):
        """Test reproducible."""
        np.testing.assert_array_equal(make_rng(9, 2).random(5), make_rng(9, 2).random(5))

    def test_batches_differ(self):
        """Test batches differ."""
        assert not np.array_equal(make_rng(9, 0).random(5), make_rng(9, 1).random(5))

    def test_bad_seed(self):
        """Test bad seed."""
        with pytest.raises(ValidationError):
            make_rng(-1)

    def test_batch_sizes(self):
        """Test batch sizes."""
        assert batch_sizes(10, 3) == [4, 3, 3]
        assert batch_sizes(2, 5) == [1, 1]
        assert sum(batch_sizes(1000001, 7)) == 1000001

    def test_uniform_sphere(self):
        """Test uniform sphere."""
        n = 200000
        points = uniform_sphere(make_rng(1), n)
        np.testing.assert_allclose(np.linalg.norm(points, axis=1), 1.0, atol=1e-12)
        # each coordinate has variance 1/3
        assert np.all(np.abs(points.mean(axis=0)) < 4.0 * math.sqrt(1.0 / 3.0 / n))


class TestSampleQuantum:
    """Test cases for sample_quantum."""

    def test_aligned_poles(self):
        """Test aligned poles."""
        stats = sample_quantum(StateParams.of(1), Direction(theta=0.0), Direction(theta=0.0), 100000, seed=1)
        assert stats.n2 == stats.n3 == stats.n_other == 0
        assert stats.post_selected == 1.0
        assert stats.n1 + stats.n4 == 100000

    def test_spin_one_equator(self):
        """Test spin one equator."""
        equator = Direction(theta=math.pi / 2.0)
        stats = sample_quantum(StateParams.of(2), equator, equator, 100000, seed=2)
        assert abs(stats.raw_estimate) < 4.0 * stats.raw_standard_error
        assert stats.n_other > 0
        assert sum(stats.counts) == stats.shots

    def test_seeded_determinism(self):
        """Test seeded determinism."""
        p, a, b = StateParams.of(3, xi=0.5), Direction(theta=1.0), Direction(theta=2.0, phi=1.0)
        assert sample_quantum(p, a, b, 5000, seed=3) == sample_quantum(p, a, b, 5000, seed=3)
        assert sample_quantum(p, a, b, 5000, seed=3) != sample_quantum(p, a, b, 5000, seed=4)

    def test_workers_do_not_change_result(self):
        """Test workers do not change result."""
        p, a, b = StateParams.of(1), Direction(theta=0.3), Direction(theta=1.3)
        serial = sample_quantum(p, a, b, 40000, seed=5, batches=4, workers=1)
        threaded = sample_quantum(p, a, b, 40000, seed=5, batches=4, workers=4)
        assert serial == threaded

    def test_probabilities(self):
        """Test probabilities."""
        probabilities = outcome_probabilities(StateParams.of(2), Direction(theta=1.0), Direction(theta=1.0))
        assert probabilities.shape == (5,)
        assert probabilities.sum() == pytest.approx(1.0, abs=1e-15)

    def test_negative_probability(self, mocker):
        """Test negative probability."""
        broken = DensityElements(local=(0.5, 0.1, 0.1, 0.5), non_local=(0.0, -0.2, 0.0, 0.0))
        mocker.patch("src.montecarlo.sampler.closed_form_elements", return_value=broken)
        with pytest.raises(NumericalError):
            sample_quantum(StateParams.of(1), Direction(theta=0.0), Direction(theta=0.0), 10, seed=0)

    def test_invalid_shots(self):
        """Test invalid shots."""
        with pytest.raises(ValidationError):
            sample_quantum(StateParams.of(1), Direction(theta=0.0), Direction(theta=0.0), 0, seed=0)

    def test_stats_from_counts(self):
        """Test stats from counts."""
        stats = SampleStats.from_counts((3, 1, 0, 0, 6), shots=10, seed=0)
        assert stats.raw_estimate == pytest.approx(0.2)
        assert stats.post_selected == pytest.approx(0.5)
        assert stats.standard_error == pytest.approx(math.sqrt(0.75 / 4))
        empty = SampleStats.from_counts((0, 0, 0, 0, 10), shots=10, seed=0)
        assert empty.post_selected is None

    def test_empirical_chsh(self):
        """Test empirical chsh."""
        q = ChshQuad.coplanar(StateParams.of(1), (0.0, math.pi / 4.0, -math.pi / 4.0, math.pi / 2.0))
        value, error = empirical_chsh(q, 1000000, seed=11)
        assert abs(value - TSIRELSON) < 4.0 * error

    def test_error_shrinks_with_shots(self):
        """Test error shrinks with shots."""
        p, a, b = StateParams.of(1), Direction(theta=0.7), Direction(theta=1.9, phi=0.5)
        exact = correlate(p, a, b).p_total
        shrinking = 0
        for k in range(100):
            small = sample_quantum(p, a, b, 10000, seed=2 * k)
            large = sample_quantum(p, a, b, 1000000, seed=2 * k + 1)
            if abs(large.raw_estimate - exact) < abs(small.raw_estimate - exact):
                shrinking += 1
        # independent draws give about 94% on average
        assert shrinking >= 85

    def test_agrees_with_analytic_values(self):
        """Test agrees with analytic values."""
        rng = np.random.default_rng(17)
        shots, agree, cases = 10000, 0, 500
        for k in range(cases):
            p = StateParams.of(int(rng.integers(1, 6)), xi=rng.uniform(0.0, math.pi / 2.0), eta=rng.uniform(0.0, math.pi))
            a = Direction(theta=rng.uniform(0.0, math.pi), phi=rng.uniform(0.0, 2.0 * math.pi))
            b = Direction(theta=rng.uniform(0.0, math.pi), phi=rng.uniform(0.0, 2.0 * math.pi))
            stats = sample_quantum(p, a, b, shots, seed=k)
            if abs(stats.raw_estimate - correlate(p, a, b).p_total) <= 4.0 * stats.raw_standard_error + 1.0 / shots:
                agree += 1
        assert agree >= 0.99 * cases


class _ZeroModel(LhvModel):
    def sample_hidden(self, rng, n):
        return uniform_sphere(rng, n)

    def outcome(self, vector, lambdas):
        return np.zeros(len(lambdas), dtype=int)


class TestLhv:
    """Test cases for the sign model and the Bell battery."""

    def setup_method(self):
        """Set up test fixtures."""
        self.model = SignModel()

    def test_orthogonal_directions(self):
        """Test orthogonal directions."""
        stats = sample_lhv(self.model, Direction(theta=0.0), Direction(theta=math.pi / 2.0), 100000, seed=1)
        assert abs(stats.raw_estimate) < 4.0 * stats.standard_error

    def test_sixty_degrees(self):
        """Test sixty degrees."""
        stats = sample_lhv(self.model, Direction(theta=0.0), Direction(theta=math.pi / 3.0), 100000, seed=2)
        assert abs(stats.raw_estimate - 1.0 / 3.0) < 4.0 * stats.standard_error

    def test_same_direction(self):
        """Test same direction."""
        a = Direction(theta=1.0, phi=2.0)
        stats = sample_lhv(self.model, a, a, 1000, seed=3)
        assert stats.raw_estimate == 1.0
        assert stats.n_other == 0

    def test_invalid_outcomes(self):
        """Test invalid outcomes."""
        with pytest.raises(ValidationError):
            sample_lhv(_ZeroModel(), Direction(theta=0.0), Direction(theta=1.0), 100, seed=0)

    def test_random_battery(self):
        """Test random battery."""
        report = verify_lhv_bell(self.model, random_triples(100, seed=21), 1000000, seed=22)
        assert report.model_valid
        assert report.n_flagged == 0
        assert len(report.checks) == 100

    def test_equality_triple(self):
        """Test equality triple."""
        triple = tuple(Direction.coplanar(x) for x in (0.0, math.pi / 3.0, 2.0 * math.pi / 3.0))
        report = verify_lhv_bell(self.model, [triple], 1000000, seed=5)
        check = report.checks[0]
        assert not check.flagged
        assert check.lhs == pytest.approx(2.0 / 3.0, abs=0.01)
        assert check.rhs == pytest.approx(2.0 / 3.0, abs=0.01)

    def test_degenerate_triple(self):
        """Test degenerate triple."""
        a = Direction(theta=0.4, phi=1.0)
        report = verify_lhv_bell(self.model, [(a, a, a)], 1000, seed=6)
        check = report.checks[0]
        assert check.lhs == 0.0
        assert check.rhs == 0.0
        assert not check.flagged

    def test_invalid_model_is_reported(self):
        """Test invalid model is reported."""
        a = Direction(theta=0.4)
        report = verify_lhv_bell(_ZeroModel(), [(a, a, a)], 100, seed=0)
        assert not report.model_valid
        assert "+1/-1" in report.reason

    def test_empty_triples(self):
        """Test empty triples."""
        with pytest.raises(ValidationError):
            verify_lhv_bell(self.model, [], 100, seed=0)

    def test_record(self):
        """Test the battery report record."""
        a = Direction(theta=0.4)
        record = verify_lhv_bell(self.model, [(a, a, a)], 100, seed=0).to_record()
        assert record["model"] == "SignModel"
        assert record["flagged"] == 0
