"""
Maximization of inequality objectives and the spin-parity sweep.

Each search is a deterministic coarse grid scan followed by Nelder-Mead
refinement. CHSH and Bell objectives are seeded from a coplanar pre-scan and
refined first inside the x-z plane, then over the full sphere.
"""

import math
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import minimize

from ..quantum.bellcat import StateParams
from ..quantum.spincore import Direction, SpinQuantum, fold_angles
from ..utils.logger import get_logger, log_execution_time
from ..utils.validators import TOLERANCE, NumericalError
from .objectives import (
    Objective,
    coplanar_options,
    evaluate,
    grid_best,
    pair_quantity,
    sphere_options,
    split_vector,
)

logger = get_logger("search")

#: Simplex size at which refinement stops.
SIMPLEX_TOLERANCE = 1e-10

#: Extra Nelder-Mead restarts from the incumbent while they keep improving.
MAX_RESTARTS = 3


class SearchSpec(BaseModel):
    """What to maximize and how hard to look."""

    model_config = ConfigDict(frozen=True)

    spin: SpinQuantum
    objective: Objective = Objective.CHSH_TOTAL
    optimize_state: bool = False
    grid_points_per_angle: int = Field(16, ge=4)
    refine_iterations: int = Field(4000, ge=0)
    xi: float = math.pi / 4.0
    eta: float = 0.0

    @property
    def state_grid_points(self) -> int:
        return max(4, self.grid_points_per_angle // 4)


class ViolationReport(BaseModel):
    """Best configuration found for one search."""

    model_config = ConfigDict(frozen=True)

    spin: SpinQuantum
    objective: Objective
    best_value: float
    best_angles: List[Direction]
    best_state: Tuple[float, float]
    violated: bool
    bound: float
    grid_value: float
    evaluations: int

    def to_record(self) -> dict:
        return {
            "s2": self.spin.two_s,
            "objective": self.objective.value,
            "best_value": self.best_value,
            "bound": self.bound,
            "violated": self.violated,
            "grid_value": self.grid_value,
            "xi": self.best_state[0],
            "eta": self.best_state[1],
            "angles": [[d.theta, d.phi] for d in self.best_angles],
            "evaluations": self.evaluations,
        }


class _Counter:
    def __init__(self):
        self.calls = 0


def _state_cells(spec: SearchSpec) -> List[Tuple[float, float]]:
    if not spec.optimize_state:
        return [(spec.xi, spec.eta)]
    k = spec.state_grid_points
    xis = np.linspace(0.0, math.pi / 2.0, k)
    etas = np.linspace(0.0, math.pi, k, endpoint=False)
    return [(float(x), float(e)) for x in xis for e in etas]


def _grid_scan(spec: SearchSpec, counter: _Counter) -> np.ndarray:
    """Best grid point as a full parameter vector (canonical angles)."""
    objective, n = spec.objective, spec.objective.n_directions
    if objective.coplanar_seed:
        opt_theta, opt_phi = coplanar_options(spec.grid_points_per_angle)
    else:
        opt_theta, opt_phi = sphere_options(spec.grid_points_per_angle)
    m = opt_theta.size

    best = None  # (value, key, x)
    for xi, eta in _state_cells(spec):
        matrix = pair_quantity(
            objective, spec.spin.two_s, xi, eta,
            opt_theta[:, None], opt_phi[:, None], opt_theta[None, :], opt_phi[None, :],
        )
        value, index = grid_best(objective, matrix)
        counter.calls += m ** n
        x = np.empty(2 * n + (2 if spec.optimize_state else 0))
        x[0:2 * n:2] = opt_theta[list(index)]
        x[1:2 * n:2] = opt_phi[list(index)]
        if spec.optimize_state:
            x[2 * n:] = (xi, eta)
        key = tuple(x)
        # state cells are visited in order, so ties compare the full tuple
        if best is None or value > best[0] or (value == best[0] and key < best[1]):
            best = (value, key, x)

    logger.debug(f"{spec.spin} {objective.value}: grid best {best[0]:.12f}")
    return best[2]


def _nelder_mead(fun, x0: np.ndarray, spec: SearchSpec, counter: _Counter) -> np.ndarray:
    """Maximize fun from x0; never returns a point worse than x0."""
    best_x, best_f = np.array(x0, dtype=float), fun(x0)
    for _ in range(1 + MAX_RESTARTS):
        result = minimize(
            lambda x: -fun(x),
            best_x,
            method="Nelder-Mead",
            options={
                "maxiter": spec.refine_iterations,
                "xatol": SIMPLEX_TOLERANCE,
                "fatol": 1e-15,
                "adaptive": True,
            },
        )
        counter.calls += int(result.nfev)
        value = -float(result.fun)
        if value <= best_f + 1e-15:
            break
        best_x, best_f = np.array(result.x, dtype=float), value
    return best_x


def _refine(spec: SearchSpec, x_grid: np.ndarray, counter: _Counter) -> np.ndarray:
    objective, n, two_s = spec.objective, spec.objective.n_directions, spec.spin.two_s

    def full(x):
        thetas, phis, xi, eta = split_vector(objective, x, spec.optimize_state, spec.xi, spec.eta)
        return evaluate(objective, two_s, thetas, phis, xi, eta)

    x = x_grid
    if objective.coplanar_seed:
        # alpha = theta on the phi = 0 half-plane and -theta on the phi = pi half
        alphas = np.where(x[1:2 * n:2] == 0.0, x[0:2 * n:2], -x[0:2 * n:2])
        y0 = np.concatenate([alphas, x[2 * n:]])

        def planar(y):
            thetas, phis = fold_angles(y[:n], np.zeros(n))
            xi, eta = (y[n], y[n + 1]) if spec.optimize_state else (spec.xi, spec.eta)
            return evaluate(objective, two_s, thetas, phis, xi, eta)

        y = _nelder_mead(planar, y0, spec, counter)
        thetas, phis = fold_angles(y[:n], np.zeros(n))
        x = np.empty_like(x_grid)
        x[0:2 * n:2], x[1:2 * n:2] = thetas, phis
        x[2 * n:] = y[n:]

    return _nelder_mead(full, x, spec, counter)


def _report(spec: SearchSpec, x: np.ndarray, grid_value: float, evaluations: int) -> ViolationReport:
    objective = spec.objective
    thetas, phis, xi, eta = split_vector(objective, x, spec.optimize_state, spec.xi, spec.eta)
    directions = [Direction.from_angles(t, p) for t, p in zip(thetas, phis)]
    value = evaluate(
        objective, spec.spin.two_s,
        [d.theta for d in directions], [d.phi for d in directions], xi, eta,
    )
    bound = objective.bound
    return ViolationReport(
        spin=spec.spin,
        objective=objective,
        best_value=value,
        best_angles=directions,
        best_state=(float(xi), float(eta)),
        violated=value > bound + TOLERANCE,
        bound=bound,
        grid_value=grid_value,
        evaluations=evaluations,
    )


@log_execution_time("search")
def maximize(spec: SearchSpec) -> ViolationReport:
    """
    Maximize an objective over measurement directions (and optionally the state).

    Args:
        spec: Grid, refinement and state options for the search

    Returns:
        ViolationReport whose best_value is the objective re-evaluated at the
        reported canonical angles; never below the best grid value
    """
    counter = _Counter()
    x_grid = _grid_scan(spec, counter)
    grid_report = _report(spec, x_grid, 0.0, 0)
    grid_value = grid_report.best_value

    best = grid_report
    if spec.refine_iterations > 0:
        refined = _report(spec, _refine(spec, x_grid, counter), grid_value, counter.calls)
        if refined.best_value > grid_value:
            best = refined

    report = best.model_copy(update={"grid_value": grid_value, "evaluations": counter.calls})
    logger.info(
        f"{spec.spin} {spec.objective.value}: best {report.best_value:.12f} "
        f"(grid {grid_value:.12f}, bound {report.bound}, violated={report.violated})"
    )
    return report


def _check_parity(spec: SearchSpec, report: ViolationReport) -> None:
    if spec.spin.is_integer and report.violated:
        raise NumericalError(
            f"Integer {spec.spin} violates {spec.objective.value}: {report.best_value!r}"
        )
    state_allows_interference = spec.optimize_state or abs(math.sin(2.0 * spec.xi)) > TOLERANCE
    if (spec.objective is Objective.NLC_MAGNITUDE and not spec.spin.is_integer
            and state_allows_interference and report.best_value <= TOLERANCE):
        raise NumericalError(f"Half-integer {spec.spin} shows no non-local correlation")


@log_execution_time("search")
def parity_sweep(s_max: SpinQuantum, template: SearchSpec) -> List[ViolationReport]:
    """
    Run the template search for every spin 1/2, 1, ..., s_max.

    Raises:
        NumericalError: If an integer spin shows a violation or a half-integer
            spin shows no non-local correlation
    """
    reports = []
    for two_s in range(1, s_max.two_s + 1):
        spec = template.model_copy(update={"spin": SpinQuantum(two_s=two_s)})
        report = maximize(spec)
        _check_parity(spec, report)
        reports.append(report)
    return reports


def analytic_nlc_maximum(spin: SpinQuantum) -> float:
    """Largest |P_nlc| at xi = pi/4: 4^(1-2s) for half-integer s, 0 for integer s."""
    return 0.0 if spin.is_integer else 4.0 ** (1 - spin.two_s)


def state_for(report: ViolationReport) -> StateParams:
    """State parameters at which a report's best value was found."""
    xi, eta = report.best_state
    return StateParams(spin=report.spin, xi=xi, eta=eta)
