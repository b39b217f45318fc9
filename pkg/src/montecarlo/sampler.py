"""
Projective-measurement sampling from the Bell cat state.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..quantum.bellcat import StateParams, closed_form_elements, oracle_elements
from ..quantum.correlation import ChshQuad, Mode
from ..quantum.spincore import Direction
from ..utils.logger import get_logger
from ..utils.validators import check_probabilities, validate_shots
from .rng import batch_sizes, make_rng

logger = get_logger("montecarlo")


class SampleStats(BaseModel):
    """Outcome counts and correlation estimates from one sampling run.

    Counts follow the outcome labels 1 = (+,+), 2 = (+,-), 3 = (-,+), 4 = (-,-);
    ``n_other`` counts projections outside the four extreme outcomes.
    """

    model_config = ConfigDict(frozen=True)

    n1: int
    n2: int
    n3: int
    n4: int
    n_other: int
    shots: int
    seed: int
    raw_estimate: float
    raw_standard_error: float
    post_selected: Optional[float]
    standard_error: Optional[float]

    @classmethod
    def from_counts(cls, counts, shots: int, seed: int) -> "SampleStats":
        n1, n2, n3, n4, n_other = (int(c) for c in counts)
        kept = n1 + n2 + n3 + n4
        signed = n1 + n4 - n2 - n3
        raw = signed / shots
        raw_se = math.sqrt(max(kept / shots - raw * raw, 0.0) / shots)
        if kept:
            post = signed / kept
            se = math.sqrt(max(1.0 - post * post, 0.0) / kept)
        else:
            post = se = None
        return cls(
            n1=n1, n2=n2, n3=n3, n4=n4, n_other=n_other, shots=shots, seed=seed,
            raw_estimate=raw, raw_standard_error=raw_se,
            post_selected=post, standard_error=se,
        )

    @property
    def counts(self) -> Tuple[int, int, int, int, int]:
        return (self.n1, self.n2, self.n3, self.n4, self.n_other)


def outcome_probabilities(p: StateParams, a: Direction, b: Direction, mode: Mode = Mode.CLOSED_FORM) -> np.ndarray:
    """
    Five-way distribution (rho_11, rho_22, rho_33, rho_44, 1 - W).

    Raises:
        NumericalError: If a probability is negative beyond round-off
    """
    if Mode(mode) is Mode.ORACLE:
        elements = oracle_elements(p, a, b)
    else:
        elements = closed_form_elements(p, a, b)
    total = list(elements.total)
    return check_probabilities(total + [1.0 - sum(total)])


def sample_quantum(
    p: StateParams,
    a: Direction,
    b: Direction,
    shots: int,
    seed: int,
    batches: int = 1,
    workers: int = 1,
) -> SampleStats:
    """
    Sample joint measurement outcomes along a and b.

    Each batch draws from its own (seed, batch) stream; batch counts are added
    in batch order, so the result does not depend on ``workers``.

    Args:
        p: State parameters
        a: Direction on the first spin
        b: Direction on the second spin
        shots: Number of joint measurements
        seed: Run seed
        batches: Number of independent streams
        workers: Threads drawing batches concurrently

    Returns:
        SampleStats; the raw estimate converges to P_total and the
        post-selected estimate to P_total / W
    """
    shots = validate_shots(shots)
    probabilities = outcome_probabilities(p, a, b)
    sizes = batch_sizes(shots, batches)

    def draw(index: int) -> np.ndarray:
        return make_rng(seed, index).multinomial(sizes[index], probabilities)

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(draw, range(len(sizes))))
    else:
        parts = [draw(i) for i in range(len(sizes))]

    counts = np.sum(parts, axis=0)
    stats = SampleStats.from_counts(counts, shots, seed)
    logger.debug(f"sampled {shots} shots for {p.spin}: counts={stats.counts}")
    return stats


def empirical_chsh(q: ChshQuad, shots: int, seed: int) -> Tuple[float, float]:
    """
    CHSH combination from sampled post-selected correlations.

    Pair k of (ab, ac, db, dc) uses seed + k.

    Returns:
        (value, combined standard error)
    """
    pairs = ((q.a, q.b, 1.0), (q.a, q.c, 1.0), (q.d, q.b, 1.0), (q.d, q.c, -1.0))
    total, variance = 0.0, 0.0
    for k, (x, y, sign) in enumerate(pairs):
        stats = sample_quantum(q.params, x, y, shots, seed + k)
        estimate = stats.post_selected if stats.post_selected is not None else 0.0
        total += sign * estimate
        variance += (stats.standard_error or 0.0) ** 2
    return abs(total), math.sqrt(variance)
