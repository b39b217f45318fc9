"""
Local hidden-variable models and the Monte Carlo check of the modified Bell
inequality |P(ab) - P(ac)| <= 1 - P(bc).
"""

import math
from abc import ABC, abstractmethod
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..quantum.spincore import Direction
from ..utils.logger import LoggerMixin, get_logger, log_execution_time
from ..utils.validators import TOLERANCE, ValidationError, validate_shots
from .rng import make_rng, uniform_sphere
from .sampler import SampleStats

logger = get_logger("montecarlo")

#: Significance, in combined standard errors, above which a triple is flagged.
FLAG_SIGMAS = 4.0

Triple = Tuple[Direction, Direction, Direction]


class LhvModel(ABC, LoggerMixin):
    """
    Deterministic local hidden-variable model.

    Subclasses draw hidden variables with a normalized density and map each
    (direction, lambda) to an outcome of exactly +1 or -1. With ``parallel``
    set, the second party uses the same outcome function as the first.
    """

    parallel: bool = True

    @abstractmethod
    def sample_hidden(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw n hidden variables."""

    @abstractmethod
    def outcome(self, vector: np.ndarray, lambdas: np.ndarray) -> np.ndarray:
        """Outcomes A(a, lambda) for every hidden variable."""

    def outcome_b(self, vector: np.ndarray, lambdas: np.ndarray) -> np.ndarray:
        if not self.parallel:
            raise NotImplementedError(f"{type(self).__name__} must define outcome_b")
        return self.outcome(vector, lambdas)


class SignModel(LhvModel):
    """A = sign(lambda . a) with lambda uniform on the unit sphere; zero maps to +1."""

    def sample_hidden(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return uniform_sphere(rng, n)

    def outcome(self, vector: np.ndarray, lambdas: np.ndarray) -> np.ndarray:
        return np.where(lambdas @ np.asarray(vector, dtype=float) >= 0.0, 1, -1)


def _is_sign_valued(values: np.ndarray) -> bool:
    return bool(np.all((values == 1) | (values == -1)))


def sample_lhv(model: LhvModel, a: Direction, b: Direction, shots: int, seed: int) -> SampleStats:
    """
    Monte Carlo estimate of P(a, b) = E[A(a, lambda) B(b, lambda)].

    Raises:
        ValidationError: If the model returns an outcome other than +1 or -1
    """
    shots = validate_shots(shots)
    lambdas = model.sample_hidden(make_rng(seed), shots)
    first = np.asarray(model.outcome(a.vector, lambdas))
    second = np.asarray(model.outcome_b(b.vector, lambdas))
    if not (_is_sign_valued(first) and _is_sign_valued(second)):
        raise ValidationError(f"{type(model).__name__} produced outcomes other than +1/-1")

    plus_a, plus_b = first == 1, second == 1
    counts = (
        np.count_nonzero(plus_a & plus_b),
        np.count_nonzero(plus_a & ~plus_b),
        np.count_nonzero(~plus_a & plus_b),
        np.count_nonzero(~plus_a & ~plus_b),
        0,
    )
    return SampleStats.from_counts(counts, shots, seed)


class TripleCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int
    p_ab: float
    p_ac: float
    p_bc: float
    lhs: float
    rhs: float
    tolerance: float
    flagged: bool


class LhvBellReport(BaseModel):
    """Outcome of a Bell-inequality battery against one LHV model."""

    model_config = ConfigDict(frozen=True)

    model: str
    shots: int
    seed: int
    checks: List[TripleCheck]
    model_valid: bool
    reason: Optional[str] = None

    @property
    def n_flagged(self) -> int:
        return sum(1 for check in self.checks if check.flagged)

    def to_record(self) -> dict:
        return {
            "model": self.model,
            "shots": self.shots,
            "seed": self.seed,
            "triples": len(self.checks),
            "flagged": self.n_flagged,
            "model_valid": self.model_valid,
            "reason": self.reason,
        }


def _estimate(first: np.ndarray, second: np.ndarray) -> Tuple[float, float]:
    value = float(np.mean(first * second))
    return value, math.sqrt(max(1.0 - value * value, 0.0) / first.size)


@log_execution_time("montecarlo")
def verify_lhv_bell(model: LhvModel, triples: Sequence[Triple], shots: int, seed: int) -> LhvBellReport:
    """
    Check |P(ab) - P(ac)| <= 1 - P(bc) for every triple.

    Each triple k draws one hidden-variable sample from stream (seed, k) and
    evaluates all three correlations on it. A triple is flagged when the
    left side exceeds the right by more than 4 combined standard errors.

    Args:
        model: LHV model under test
        triples: Non-empty list of (a, b, c) directions
        shots: Hidden-variable draws per triple
        seed: Run seed

    Returns:
        LhvBellReport; model_valid is False on any flag or on outcomes other
        than +1/-1
    """
    if not triples:
        raise ValidationError("verify_lhv_bell needs at least one triple")
    shots = validate_shots(shots)
    name = type(model).__name__

    checks: List[TripleCheck] = []
    for k, (a, b, c) in enumerate(triples):
        lambdas = model.sample_hidden(make_rng(seed, k), shots)
        a1, b1 = np.asarray(model.outcome(a.vector, lambdas)), np.asarray(model.outcome(b.vector, lambdas))
        b2, c2 = np.asarray(model.outcome_b(b.vector, lambdas)), np.asarray(model.outcome_b(c.vector, lambdas))
        if not all(_is_sign_valued(v) for v in (a1, b1, b2, c2)):
            reason = f"triple {k}: outcomes other than +1/-1"
            model.logger.warning(reason)
            return LhvBellReport(model=name, shots=shots, seed=seed, checks=checks, model_valid=False, reason=reason)

        (p_ab, se_ab), (p_ac, se_ac), (p_bc, se_bc) = _estimate(a1, b2), _estimate(a1, c2), _estimate(b1, c2)
        lhs, rhs = abs(p_ab - p_ac), 1.0 - p_bc
        tolerance = FLAG_SIGMAS * math.sqrt(se_ab ** 2 + se_ac ** 2 + se_bc ** 2)
        flagged = lhs > rhs + tolerance + TOLERANCE
        if flagged:
            logger.warning(f"triple {k} flagged: lhs={lhs:.6f} rhs={rhs:.6f} tol={tolerance:.2e}")
        checks.append(TripleCheck(
            index=k, p_ab=p_ab, p_ac=p_ac, p_bc=p_bc,
            lhs=lhs, rhs=rhs, tolerance=tolerance, flagged=flagged,
        ))

    n_flagged = sum(1 for check in checks if check.flagged)
    reason = f"{n_flagged} significant violations" if n_flagged else None
    logger.info(f"{name}: {len(checks)} triples, {n_flagged} flagged")
    return LhvBellReport(
        model=name, shots=shots, seed=seed, checks=checks,
        model_valid=n_flagged == 0, reason=reason,
    )


#: Stream index reserved for drawing random triples, apart from per-triple streams.
TRIPLE_STREAM = 2**32


def random_triples(n: int, seed: int) -> List[Triple]:
    """n triples of independent uniform directions from stream (seed, TRIPLE_STREAM)."""
    vectors = uniform_sphere(make_rng(seed, TRIPLE_STREAM), 3 * n)
    directions = [Direction.from_vector(v) for v in vectors]
    return [tuple(directions[3 * i:3 * i + 3]) for i in range(n)]
