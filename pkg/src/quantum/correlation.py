"""
Outcome correlations, the modified Bell inequality and the CHSH combination.

The correlation for directions (a, b) is the signed contraction of the four
outcome-basis elements with Omega = diag(1, -1, -1, 1). For s > 1/2 the four
extreme outcomes do not exhaust probability, so every breakdown also carries
the captured weight W.
"""

from enum import Enum
from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..utils.validators import TOLERANCE
from .bellcat import (
    OMEGA,
    DensityElements,
    StateParams,
    closed_form_elements,
    local_terms,
    nonlocal_terms,
    oracle_elements,
)
from .spincore import Direction


class Mode(str, Enum):
    CLOSED_FORM = "closed_form"
    ORACLE = "oracle"


class Which(str, Enum):
    """Which part of the correlation enters an inequality."""

    LOCAL_ONLY = "local_only"
    TOTAL = "total"


class CorrelationBreakdown(BaseModel):
    """Local, non-local and total correlation for one direction pair."""

    model_config = ConfigDict(frozen=True)

    p_lc: float
    p_nlc: float
    p_total: float
    weight: float

    @classmethod
    def from_elements(cls, elements: DensityElements) -> "CorrelationBreakdown":
        p_lc = float(OMEGA @ np.asarray(elements.local))
        p_nlc = float(OMEGA @ np.asarray(elements.non_local))
        return cls(p_lc=p_lc, p_nlc=p_nlc, p_total=p_lc + p_nlc, weight=elements.weight)

    def part(self, which: "Which") -> float:
        return self.p_lc if Which(which) is Which.LOCAL_ONLY else self.p_total


class BellTriple(BaseModel):
    """Three measurement directions for the modified Bell inequality."""

    model_config = ConfigDict(frozen=True)

    params: StateParams
    a: Direction
    b: Direction
    c: Direction

    @classmethod
    def coplanar(cls, params: StateParams, alphas: Sequence[float]) -> "BellTriple":
        a, b, c = (Direction.coplanar(x) for x in alphas)
        return cls(params=params, a=a, b=b, c=c)


class ChshQuad(BaseModel):
    """Four measurement directions for the CHSH combination."""

    model_config = ConfigDict(frozen=True)

    params: StateParams
    a: Direction
    b: Direction
    c: Direction
    d: Direction

    @classmethod
    def coplanar(cls, params: StateParams, alphas: Sequence[float]) -> "ChshQuad":
        a, b, c, d = (Direction.coplanar(x) for x in alphas)
        return cls(params=params, a=a, b=b, c=c, d=d)


class BellResult(BaseModel):
    """Both sides of |P(ab) - P(ac)| <= 1 - P(bc)."""

    model_config = ConfigDict(frozen=True)

    lhs: float
    rhs: float
    violated: bool

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs


def correlate(
    p: StateParams,
    a: Direction,
    b: Direction,
    mode: Mode = Mode.CLOSED_FORM,
) -> CorrelationBreakdown:
    """
    Correlation P(ab) split into local and non-local parts.

    Args:
        p: State parameters
        a: Direction on the first spin
        b: Direction on the second spin
        mode: Closed-form elements or the state-vector oracle

    Returns:
        CorrelationBreakdown with p_total = p_lc + p_nlc and the captured weight
    """
    if Mode(mode) is Mode.ORACLE:
        elements = oracle_elements(p, a, b)
    else:
        elements = closed_form_elements(p, a, b)
    return CorrelationBreakdown.from_elements(elements)


def correlate_many(p: StateParams, theta_a, phi_a, theta_b, phi_b) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Closed-form correlations on broadcast arrays of angles.

    Angles may be any reals; they are folded onto the canonical chart.

    Returns:
        (p_lc, p_nlc, p_total, weight) arrays of the broadcast shape
    """
    return correlation_arrays(p.spin.two_s, p.xi, p.eta, theta_a, phi_a, theta_b, phi_b)


def correlation_arrays(two_s: int, xi, eta, theta_a, phi_a, theta_b, phi_b):
    """Same as correlate_many on raw parameters; the search hot loop calls this."""
    lc = local_terms(two_s, xi, theta_a, theta_b)
    nlc = nonlocal_terms(two_s, xi, eta, theta_a, phi_a, theta_b, phi_b)
    p_lc = np.tensordot(OMEGA, lc, axes=1)
    p_nlc = np.tensordot(OMEGA, nlc, axes=1)
    weight = lc.sum(axis=0) + nlc.sum(axis=0)
    return p_lc, p_nlc, p_lc + p_nlc, weight


def correlation_matrix(p: StateParams, thetas, phis, which: Which = Which.TOTAL) -> np.ndarray:
    """Matrix M[i, j] = P(dir_i, dir_j) over one list of directions."""
    thetas, phis = np.asarray(thetas, dtype=float), np.asarray(phis, dtype=float)
    p_lc, _, p_total, _ = correlate_many(p, thetas[:, None], phis[:, None], thetas[None, :], phis[None, :])
    return p_lc if Which(which) is Which.LOCAL_ONLY else p_total


def bell_lhs_rhs(t: BellTriple, which: Which = Which.TOTAL, mode: Mode = Mode.CLOSED_FORM) -> BellResult:
    """
    Evaluate |P(ab) - P(ac)| <= 1 - P(bc).

    With which=local_only the inequality is a theorem and is never violated.
    """
    p_ab = correlate(t.params, t.a, t.b, mode).part(which)
    p_ac = correlate(t.params, t.a, t.c, mode).part(which)
    p_bc = correlate(t.params, t.b, t.c, mode).part(which)
    lhs = abs(p_ab - p_ac)
    rhs = 1.0 - p_bc
    return BellResult(lhs=lhs, rhs=rhs, violated=lhs > rhs + TOLERANCE)


def chsh(q: ChshQuad, which: Which = Which.TOTAL, mode: Mode = Mode.CLOSED_FORM) -> float:
    """|P(ab) + P(ac) + P(db) - P(dc)|; at most 2 for the local part."""
    pair = lambda x, y: correlate(q.params, x, y, mode).part(which)  # noqa: E731
    return abs(pair(q.a, q.b) + pair(q.a, q.c) + pair(q.d, q.b) - pair(q.d, q.c))
