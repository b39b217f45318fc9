"""
Search objectives and their vectorized grid reductions.

A parameter vector holds (theta, phi) for each measurement direction in order,
followed by (xi, eta) when the state is optimized too.
"""

import math
from enum import Enum
from typing import Tuple

import numpy as np

from ..quantum.correlation import correlation_arrays
from ..quantum.spincore import fold_angles

# Direction index pairs entering each objective
_CHSH_PAIRS = ((0, 1), (0, 2), (3, 1), (3, 2))  # ab, ac, db, dc
_BELL_PAIRS = ((0, 1), (0, 2), (1, 2))  # ab, ac, bc
_NLC_PAIRS = ((0, 1),)


class Objective(str, Enum):
    CHSH_TOTAL = "chsh_total"
    CHSH_LOCAL = "chsh_local"
    BELL_MARGIN_TOTAL = "bell_margin_total"
    BELL_MARGIN_LOCAL = "bell_margin_local"
    NLC_MAGNITUDE = "nlc_magnitude"

    @property
    def family(self) -> str:
        return self.value.rsplit("_", 1)[0] if self is not Objective.NLC_MAGNITUDE else "nlc"

    @property
    def n_directions(self) -> int:
        return {"chsh": 4, "bell_margin": 3, "nlc": 2}[self.family]

    @property
    def local_only(self) -> bool:
        return self.value.endswith("_local")

    @property
    def bound(self) -> float:
        """Classical bound; a value above it is a violation."""
        return 2.0 if self.family == "chsh" else 0.0

    @property
    def coplanar_seed(self) -> bool:
        return self.family in ("chsh", "bell_margin")

    @property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        return {"chsh": _CHSH_PAIRS, "bell_margin": _BELL_PAIRS, "nlc": _NLC_PAIRS}[self.family]


def _combine(objective: Objective, p: np.ndarray) -> float:
    if objective.family == "chsh":
        return abs(p[0] + p[1] + p[2] - p[3])
    if objective.family == "bell_margin":
        return abs(p[0] - p[1]) - (1.0 - p[2])
    return abs(p[0])


def pair_quantity(objective: Objective, two_s: int, xi, eta, theta_a, phi_a, theta_b, phi_b):
    """The per-pair correlation an objective is built from."""
    p_lc, p_nlc, p_total, _ = correlation_arrays(two_s, xi, eta, theta_a, phi_a, theta_b, phi_b)
    if objective is Objective.NLC_MAGNITUDE:
        return p_nlc
    return p_lc if objective.local_only else p_total


def evaluate(objective: Objective, two_s: int, thetas, phis, xi: float, eta: float) -> float:
    """
    Scalar objective value for one configuration.

    Args:
        objective: Objective to evaluate
        two_s: 2s
        thetas: Polar angles, one per direction (any reals)
        phis: Azimuthal angles, one per direction
        xi: State mixing angle
        eta: State phase

    Returns:
        Objective value
    """
    thetas, phis = fold_angles(np.asarray(thetas, dtype=float), np.asarray(phis, dtype=float))
    first = np.array([i for i, _ in objective.pairs])
    second = np.array([j for _, j in objective.pairs])
    p = pair_quantity(objective, two_s, xi, eta, thetas[first], phis[first], thetas[second], phis[second])
    return float(_combine(objective, p))


def split_vector(objective: Objective, x: np.ndarray, optimize_state: bool, xi: float, eta: float):
    """Unpack a parameter vector into (thetas, phis, xi, eta)."""
    n = objective.n_directions
    thetas, phis = x[0:2 * n:2], x[1:2 * n:2]
    if optimize_state:
        xi, eta = float(x[2 * n]), float(x[2 * n + 1])
    return thetas, phis, xi, eta


def coplanar_options(points: int) -> Tuple[np.ndarray, np.ndarray]:
    """Directions in the x-z plane sorted by (theta, phi): phi in {0, pi} per polar grid point."""
    theta = np.linspace(0.0, math.pi, points)
    thetas = np.repeat(theta, 2)
    phis = np.tile([0.0, math.pi], points)
    return thetas, phis


def sphere_options(points: int) -> Tuple[np.ndarray, np.ndarray]:
    """Full (theta, phi) grid sorted lexicographically; theta includes 0 and pi, phi excludes 2 pi."""
    theta = np.linspace(0.0, math.pi, points)
    phi = np.linspace(0.0, 2.0 * math.pi, points, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    return tt.ravel(), pp.ravel()


def grid_best(objective: Objective, matrix: np.ndarray) -> Tuple[float, Tuple[int, ...]]:
    """
    Maximize the objective over all option tuples given M[i, j] = quantity(opt_i, opt_j).

    Slabs are scanned in ascending first-index order and only a strictly larger
    value replaces the incumbent, so ties go to the lexicographically smallest
    option tuple.

    Returns:
        (best value, option indices per direction)
    """
    best_value, best_index = -math.inf, None
    mt = matrix.T
    m = matrix.shape[0]
    for i in range(m):
        row = matrix[i]
        if objective.family == "chsh":
            # axes (b, c, d): |M[a,b] + M[a,c] + M[d,b] - M[d,c]|
            slab = np.abs(row[:, None, None] + row[None, :, None] + mt[:, None, :] - mt[None, :, :])
        elif objective.family == "bell_margin":
            # axes (b, c): |M[a,b] - M[a,c]| - (1 - M[b,c])
            slab = np.abs(row[:, None] - row[None, :]) - (1.0 - matrix)
        else:
            slab = np.abs(row)
        flat = int(np.argmax(slab))
        value = float(slab.flat[flat])
        if value > best_value:
            best_value = value
            best_index = (i,) + tuple(int(k) for k in np.unravel_index(flat, slab.shape))
    return best_value, best_index
