"""
Parallel-polarization Bell cat states and their outcome-basis density elements.

The state c+|+s,+s> + c-|-s,-s> is measured along a on the first spin and b on
the second, with outcomes restricted to the extreme coherent states |+-a>_s,
|+-b>_s. Its density operator splits into a local (mixed, interference-free)
part and a non-local (cross-term) part; the diagonal elements of both parts in
the four-outcome basis are available in closed form and from an exact
state-vector oracle.
"""

import math
from enum import Enum, IntEnum
from typing import Dict, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from ..utils.logger import get_logger
from ..utils.validators import TOLERANCE, NumericalError, ValidationError, validate_finite
from .spincore import (
    CoherentState,
    Direction,
    Sign,
    SpinQuantum,
    coherent_state,
    dicke_ket,
    fold_angles,
    rotation_oracle,
    spin_projection,
)

logger = get_logger("quantum")

Quad = Tuple[float, float, float, float]

#: Largest 2s for which dense two-spin operators are materialized.
DENSE_MAX_TWO_S = 20


class StateParams(BaseModel):
    """Bell cat parameters: c+ = exp(i eta) cos xi, c- = exp(-i eta) sin xi."""

    model_config = ConfigDict(frozen=True)

    spin: SpinQuantum
    xi: float = math.pi / 4.0
    eta: float = 0.0

    @field_validator("xi", "eta")
    @classmethod
    def check_finite(cls, v: float, info) -> float:
        return validate_finite(v, info.field_name)

    @classmethod
    def of(cls, two_s: int, xi: float = math.pi / 4.0, eta: float = 0.0) -> "StateParams":
        return cls(spin=SpinQuantum(two_s=two_s), xi=xi, eta=eta)

    @property
    def c_plus(self) -> complex:
        return complex(math.cos(self.eta), math.sin(self.eta)) * math.cos(self.xi)

    @property
    def c_minus(self) -> complex:
        return complex(math.cos(self.eta), -math.sin(self.eta)) * math.sin(self.xi)


class OutcomeBasis(IntEnum):
    """Two-spin outcome labels: 1 = (+a,+b), 2 = (+a,-b), 3 = (-a,+b), 4 = (-a,-b)."""

    PLUS_PLUS = 1
    PLUS_MINUS = 2
    MINUS_PLUS = 3
    MINUS_MINUS = 4

    @property
    def signs(self) -> Tuple[Sign, Sign]:
        return _OUTCOME_SIGNS[self]

    @property
    def value_product(self) -> int:
        """Matrix element of the correlation operator: +1 on 1 and 4, -1 on 2 and 3."""
        return 1 if self in (OutcomeBasis.PLUS_PLUS, OutcomeBasis.MINUS_MINUS) else -1


_OUTCOME_SIGNS = {
    OutcomeBasis.PLUS_PLUS: (Sign.PLUS, Sign.PLUS),
    OutcomeBasis.PLUS_MINUS: (Sign.PLUS, Sign.MINUS),
    OutcomeBasis.MINUS_PLUS: (Sign.MINUS, Sign.PLUS),
    OutcomeBasis.MINUS_MINUS: (Sign.MINUS, Sign.MINUS),
}

#: Correlation-operator diagonal (Omega_11, Omega_22, Omega_33, Omega_44).
OMEGA = np.array([1.0, -1.0, -1.0, 1.0])


class Generator(str, Enum):
    """Source of the outcome kets used by the oracle."""

    CLOSED_FORM = "closed_form"
    ROTATION = "rotation"


class DensityElements(BaseModel):
    """Diagonal density-matrix elements in the outcome basis, split local/non-local."""

    model_config = ConfigDict(frozen=True)

    local: Quad
    non_local: Quad

    @property
    def total(self) -> Quad:
        return tuple(lc + nlc for lc, nlc in zip(self.local, self.non_local))

    @property
    def local_weight(self) -> float:
        """Sum of the local elements; 1 for s = 1/2, at most 1 otherwise."""
        return float(sum(self.local))

    @property
    def weight(self) -> float:
        """Probability captured by the four extreme coherent outcomes."""
        return float(sum(self.total))

    def to_record(self) -> Dict[str, float]:
        record = {}
        for i, (lc, nlc) in enumerate(zip(self.local, self.non_local), start=1):
            record[f"rho{i}{i}_lc"] = float(lc)
            record[f"rho{i}{i}_nlc"] = float(nlc)
        return record


def parity_factor(spin: SpinQuantum) -> int:
    """Geometric phase factor exp(i 2 s pi) = (-1)^(2s)."""
    return 1 if spin.is_integer else -1


def local_terms(two_s: int, xi, theta_a, theta_b) -> np.ndarray:
    """
    Vectorized local elements.

    Args:
        two_s: 2s
        xi: Mixing angle (scalar or array)
        theta_a: Polar angles of a (any real; folded onto [0, pi])
        theta_b: Polar angles of b

    Returns:
        Array of shape (4, *broadcast_shape) holding rho_11..rho_44 (local)
    """
    theta_a, _ = fold_angles(theta_a, 0.0)
    theta_b, _ = fold_angles(theta_b, 0.0)
    # K^{4s} = cos^{2(2s)}(theta/2)
    ka = np.cos(theta_a / 2.0) ** (2 * two_s)
    ga = np.sin(theta_a / 2.0) ** (2 * two_s)
    kb = np.cos(theta_b / 2.0) ** (2 * two_s)
    gb = np.sin(theta_b / 2.0) ** (2 * two_s)
    c2, s2 = np.cos(xi) ** 2, np.sin(xi) ** 2
    return np.stack(np.broadcast_arrays(
        c2 * ka * kb + s2 * ga * gb,
        c2 * ka * gb + s2 * ga * kb,
        c2 * ga * kb + s2 * ka * gb,
        c2 * ga * gb + s2 * ka * kb,
    ))


def nonlocal_terms(two_s: int, xi, eta, theta_a, phi_a, theta_b, phi_b) -> np.ndarray:
    """
    Vectorized non-local elements.

    rho_11 = rho_44 = 2 sin(xi) cos(xi) (K_a G_a)^{2s} (K_b G_b)^{2s} cos(2s(phi_a + phi_b) + 2 eta)
    and rho_22 = rho_33 = (-1)^{2s} rho_11.

    Returns:
        Array of shape (4, *broadcast_shape)
    """
    theta_a, phi_a = fold_angles(theta_a, phi_a)
    theta_b, phi_b = fold_angles(theta_b, phi_b)
    # K G = sin(theta) / 2
    amp = (np.sin(theta_a) / 2.0) ** two_s * (np.sin(theta_b) / 2.0) ** two_s
    rho11 = np.sin(2.0 * xi) * amp * np.cos(two_s * (phi_a + phi_b) + 2.0 * eta)
    parity = 1.0 if two_s % 2 == 0 else -1.0
    return np.stack(np.broadcast_arrays(rho11, parity * rho11, parity * rho11, rho11))


def local_elements(p: StateParams, a: Direction, b: Direction) -> Quad:
    """Closed-form local elements rho_ii^lc for directions a, b."""
    out = local_terms(p.spin.two_s, p.xi, a.theta, b.theta)
    return tuple(float(v) for v in out)


def nonlocal_elements(p: StateParams, a: Direction, b: Direction) -> Quad:
    """Closed-form non-local elements rho_ii^nlc for directions a, b."""
    out = nonlocal_terms(p.spin.two_s, p.xi, p.eta, a.theta, a.phi, b.theta, b.phi)
    return tuple(float(v) for v in out)


def closed_form_elements(p: StateParams, a: Direction, b: Direction) -> DensityElements:
    return DensityElements(local=local_elements(p, a, b), non_local=nonlocal_elements(p, a, b))


def bell_cat_vector(p: StateParams) -> np.ndarray:
    """Full (2s+1)^2 state vector c+|+s,+s> + c-|-s,-s>."""
    up = dicke_ket(p.spin, p.spin.two_s)
    down = dicke_ket(p.spin, -p.spin.two_s)
    return p.c_plus * np.kron(up, up) + p.c_minus * np.kron(down, down)


def density_operators(p: StateParams) -> Tuple[np.ndarray, np.ndarray]:
    """
    Dense local and non-local density operators.

    Raises:
        ValidationError: If 2s exceeds DENSE_MAX_TWO_S
    """
    if p.spin.two_s > DENSE_MAX_TWO_S:
        raise ValidationError(f"Dense operators are limited to 2s <= {DENSE_MAX_TWO_S}")
    up = dicke_ket(p.spin, p.spin.two_s)
    down = dicke_ket(p.spin, -p.spin.two_s)
    upup, downdown = np.kron(up, up), np.kron(down, down)
    cs = math.sin(p.xi) * math.cos(p.xi)
    cross = np.exp(2j * p.eta) * cs * np.outer(upup, downdown.conj())
    rho_lc = (math.cos(p.xi) ** 2 * np.outer(upup, upup.conj())
              + math.sin(p.xi) ** 2 * np.outer(downdown, downdown.conj()))
    rho_nlc = cross + cross.conj().T
    return rho_lc, rho_nlc


def _outcome_kets(p: StateParams, a: Direction, b: Direction, generator: Generator) -> Dict[Sign, Tuple[CoherentState, CoherentState]]:
    build = coherent_state if generator is Generator.CLOSED_FORM else rotation_oracle
    return {
        sign: (build(p.spin, a, sign), build(p.spin, b, sign))
        for sign in (Sign.PLUS, Sign.MINUS)
    }


def oracle_elements(
    p: StateParams,
    a: Direction,
    b: Direction,
    generator: Generator = Generator.CLOSED_FORM,
) -> DensityElements:
    """
    Exact density elements from the full two-spin Hilbert space.

    The state vector and the product outcome kets |+-a> (x) |+-b> are built
    explicitly; rho_lc and rho_nlc are the rank-structured sums over the two
    extreme product kets, so each element is a pair of projections.

    Args:
        p: State parameters
        a: Direction measured on the first spin
        b: Direction measured on the second spin
        generator: Build outcome kets from the closed form or the rotation oracle

    Returns:
        Density elements (ground truth for the closed forms)

    Raises:
        NumericalError: If an element has an imaginary residue above tolerance
            or the parts do not add up to |<i|psi>|^2
    """
    generator = Generator(generator)
    up = dicke_ket(p.spin, p.spin.two_s)
    down = dicke_ket(p.spin, -p.spin.two_s)
    upup, downdown = np.kron(up, up), np.kron(down, down)
    psi = p.c_plus * upup + p.c_minus * downdown
    cross = p.c_plus * np.conj(p.c_minus)

    kets = _outcome_kets(p, a, b, generator)
    local, non_local = [], []
    for outcome in OutcomeBasis:
        sign_a, sign_b = outcome.signs
        ket = np.kron(kets[sign_a][0].amplitudes, kets[sign_b][1].amplitudes)
        u = np.vdot(ket, upup)
        d = np.vdot(ket, downdown)

        lc = math.cos(p.xi) ** 2 * abs(u) ** 2 + math.sin(p.xi) ** 2 * abs(d) ** 2
        nlc = cross * u * np.conj(d) + np.conj(cross) * d * np.conj(u)
        if abs(nlc.imag) > TOLERANCE:
            raise NumericalError(f"Non-local element {outcome.value} has imaginary part {nlc.imag:.3e}")

        total = abs(np.vdot(ket, psi)) ** 2
        if abs(total - lc - nlc.real) > TOLERANCE:
            raise NumericalError(f"Element {outcome.value}: parts do not add up to |<i|psi>|^2")

        local.append(float(lc))
        non_local.append(float(nlc.real))

    logger.debug(f"oracle elements for {p.spin} at a={a.as_tuple()}, b={b.as_tuple()}")
    return DensityElements(local=tuple(local), non_local=tuple(non_local))


def spin_correlation(p: StateParams, a: Direction, b: Direction) -> float:
    """
    Full-operator expectation <(s.a)(s.b)> / s^2 in the Bell cat state.

    Exposed for comparison only; the inequalities use the outcome-basis
    correlation.
    """
    psi = bell_cat_vector(p)
    operator = np.kron(spin_projection(p.spin, a), spin_projection(p.spin, b))
    value = np.vdot(psi, operator @ psi)
    return float(value.real) / p.spin.s ** 2
