"""
Single spin-s algebra in the Dicke basis.

Vectors are indexed by descending magnetic quantum number, m = s, s-1, ..., -s,
so index j holds m = s - j. Spin coherent states are available in closed form
(binomial-weighted Dicke expansion) and through an independent generator
oracle that exponentiates the rotation operator numerically.
"""

import math
from enum import Enum
from functools import lru_cache
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from scipy.special import comb

from ..utils.validators import (
    TOLERANCE,
    ValidationError,
    validate_azimuth,
    validate_finite,
    validate_polar,
    validate_two_s,
)

TWO_PI = 2.0 * math.pi


class Sign(str, Enum):
    """Which extreme eigenvalue of s.r a coherent state carries."""

    PLUS = "+"
    MINUS = "-"


class SpinQuantum(BaseModel):
    """Spin quantum number, stored as the integer 2s."""

    model_config = ConfigDict(frozen=True)

    two_s: int

    @field_validator("two_s")
    @classmethod
    def check_two_s(cls, v: int) -> int:
        return validate_two_s(v)

    @property
    def s(self) -> float:
        return self.two_s / 2.0

    @property
    def dimension(self) -> int:
        return self.two_s + 1

    @property
    def is_integer(self) -> bool:
        return self.two_s % 2 == 0

    @property
    def m_values(self) -> np.ndarray:
        """Magnetic quantum numbers in storage order (descending)."""
        return self.s - np.arange(self.dimension, dtype=float)

    @property
    def label(self) -> str:
        return str(self.two_s // 2) if self.is_integer else f"{self.two_s}/2"

    def __str__(self) -> str:
        return f"s={self.label}"


class Direction(BaseModel):
    """Unit measurement vector given by polar and azimuthal angles (radians)."""

    model_config = ConfigDict(frozen=True)

    theta: float
    phi: float = 0.0

    @field_validator("theta")
    @classmethod
    def check_theta(cls, v: float) -> float:
        return validate_polar(v)

    @field_validator("phi")
    @classmethod
    def check_phi(cls, v: float) -> float:
        return validate_azimuth(v)

    @classmethod
    def from_angles(cls, theta: float, phi: float = 0.0) -> "Direction":
        """Fold any real (theta, phi) onto the canonical chart.

        The point on the sphere is unchanged: a polar angle past pi is
        reflected and the azimuth turned by pi.
        """
        theta, phi = fold_angles(validate_finite(theta, "theta"), validate_finite(phi, "phi"))
        return cls(theta=float(theta), phi=float(phi))

    @classmethod
    def coplanar(cls, alpha: float) -> "Direction":
        """Direction (sin alpha, 0, cos alpha) in the x-z plane."""
        return cls.from_angles(alpha, 0.0)

    @classmethod
    def from_vector(cls, vector) -> "Direction":
        """Direction of a non-zero Cartesian vector."""
        x, y, z = (float(c) for c in vector)
        norm = math.sqrt(x * x + y * y + z * z)
        if norm == 0.0:
            raise ValidationError("Zero vector has no direction")
        theta = math.acos(max(-1.0, min(1.0, z / norm)))
        return cls.from_angles(theta, math.atan2(y, x))

    @property
    def vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    def as_tuple(self) -> Tuple[float, float]:
        return (self.theta, self.phi)


def fold_angles(theta, phi):
    """Vectorized fold of (theta, phi) into theta in [0, pi], phi in [0, 2 pi)."""
    theta = np.mod(theta, TWO_PI)
    flip = theta > math.pi
    theta = np.where(flip, TWO_PI - theta, theta)
    phi = np.mod(np.where(flip, phi + math.pi, phi), TWO_PI)
    # np.mod can return exactly 2 pi for tiny negative inputs
    phi = np.where(phi >= TWO_PI, 0.0, phi)
    return theta, phi


class CoherentState(BaseModel):
    """Amplitude vector of a single-spin state in the Dicke basis."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spin: SpinQuantum
    amplitudes: np.ndarray

    @model_validator(mode="after")
    def check_amplitudes(self) -> "CoherentState":
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.spin.dimension,):
            raise ValidationError(
                f"Expected {self.spin.dimension} amplitudes for {self.spin}, got shape {amps.shape}"
            )
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > TOLERANCE:
            raise ValidationError(f"State is not normalized: |psi|^2 = {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        return self

    def canonical(self) -> "CoherentState":
        """Global-phase representative with the highest-m nonzero amplitude real and >= 0."""
        nonzero = np.flatnonzero(np.abs(self.amplitudes) > TOLERANCE)
        lead = self.amplitudes[nonzero[0]]
        phase = np.conj(lead) / abs(lead)
        return CoherentState(spin=self.spin, amplitudes=self.amplitudes * phase)

    def to_pairs(self) -> list:
        """[[re, im], ...] in descending-m order."""
        return [[float(a.real), float(a.imag)] for a in self.amplitudes]


def half_angle_powers(direction: Direction, m: int) -> Tuple[float, float]:
    """
    Half-angle functions K = cos^m(theta/2) and Gamma = sin^m(theta/2).

    Args:
        direction: Measurement direction
        m: Non-negative integer power

    Returns:
        (K, Gamma), both in [0, 1]
    """
    if m < 0:
        raise ValidationError("power index m must be non-negative")
    half = direction.theta / 2.0
    return math.cos(half) ** m, math.sin(half) ** m


@lru_cache(maxsize=None)
def _sqrt_binomials(two_s: int) -> np.ndarray:
    # exact integers first, one rounding on conversion
    row = [comb(two_s, two_s - j, exact=True) for j in range(two_s + 1)]
    out = np.sqrt(np.array(row, dtype=float))
    out.setflags(write=False)
    return out


def coherent_state(spin: SpinQuantum, direction: Direction, sign: Sign = Sign.PLUS) -> CoherentState:
    """
    Closed-form spin coherent state |+a> or |-a> in the Dicke basis.

    Args:
        spin: Spin quantum number
        direction: Polarization direction a
        sign: PLUS for the +s eigenstate of s.a, MINUS for -s

    Returns:
        Normalized coherent state
    """
    sign = Sign(sign)
    two_s = spin.two_s
    j = np.arange(two_s + 1)  # j = s - m
    k, g = math.cos(direction.theta / 2.0), math.sin(direction.theta / 2.0)
    phase = np.exp(1j * j * direction.phi)

    if sign is Sign.PLUS:
        radial = np.power(k, two_s - j) * np.power(g, j)
    else:
        radial = np.power(k, j) * np.power(g, two_s - j)
        phase = phase * np.where(j % 2 == 0, 1.0, -1.0)

    return CoherentState(spin=spin, amplitudes=_sqrt_binomials(two_s) * radial * phase)


@lru_cache(maxsize=None)
def _spin_matrices(two_s: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    s = two_s / 2.0
    m = s - np.arange(two_s + 1, dtype=float)
    raising = np.zeros((two_s + 1, two_s + 1), dtype=complex)
    for j in range(1, two_s + 1):
        # s+ |m_j> = sqrt(s(s+1) - m_j(m_j+1)) |m_j + 1>, and m_j + 1 sits at index j-1
        raising[j - 1, j] = math.sqrt(s * (s + 1.0) - m[j] * (m[j] + 1.0))
    lowering = raising.conj().T
    sx = (raising + lowering) / 2.0
    sy = (raising - lowering) / 2.0j
    sz = np.diag(m).astype(complex)
    for mat in (sx, sy, sz):
        mat.setflags(write=False)
    return sx, sy, sz


def spin_matrices(spin: SpinQuantum) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin operators (s_x, s_y, s_z) built from ladder-operator matrix elements."""
    return _spin_matrices(spin.two_s)


def spin_projection(spin: SpinQuantum, direction: Direction) -> np.ndarray:
    """Matrix of s.r for the unit vector r of ``direction``."""
    sx, sy, sz = spin_matrices(spin)
    r = direction.vector
    return r[0] * sx + r[1] * sy + r[2] * sz


def dicke_ket(spin: SpinQuantum, two_m: int) -> np.ndarray:
    """Dicke ket |m> for m = two_m / 2."""
    if abs(two_m) > spin.two_s or (spin.two_s - two_m) % 2:
        raise ValidationError(f"m = {two_m}/2 is not a level of {spin}")
    ket = np.zeros(spin.dimension, dtype=complex)
    ket[(spin.two_s - two_m) // 2] = 1.0
    return ket


def rotation_oracle(spin: SpinQuantum, direction: Direction, sign: Sign = Sign.PLUS) -> CoherentState:
    """
    Coherent state from the generation operator R = exp(i theta m.s).

    The axis m = (sin phi, -cos phi, 0) is the normalized a x z, so R carries
    z onto a. The exponential is formed from the Hermitian eigendecomposition
    of m.s and applied to the extreme ket |+s> or |-s>.

    Args:
        spin: Spin quantum number
        direction: Target direction a
        sign: PLUS acts on |+s>, MINUS on |-s>

    Returns:
        Coherent state equal to the closed form up to a global phase
    """
    sign = Sign(sign)
    sx, sy, _ = spin_matrices(spin)
    generator = math.sin(direction.phi) * sx - math.cos(direction.phi) * sy
    eigenvalues, eigenvectors = np.linalg.eigh(generator)
    rotation = (eigenvectors * np.exp(1j * direction.theta * eigenvalues)) @ eigenvectors.conj().T

    extreme = spin.two_s if sign is Sign.PLUS else -spin.two_s
    ket = rotation @ dicke_ket(spin, extreme)
    # eigh unitarity is exact to round-off; strip the residue before validation
    ket = ket / np.linalg.norm(ket)
    return CoherentState(spin=spin, amplitudes=ket)


def overlap(x: CoherentState, y: CoherentState) -> complex:
    """
    Inner product <x|y>, conjugating x.

    Raises:
        ValidationError: If the two states live in different spin spaces
    """
    if x.spin.dimension != y.spin.dimension:
        raise ValidationError(
            f"Dimension mismatch: {x.spin.dimension} vs {y.spin.dimension}"
        )
    return complex(np.vdot(x.amplitudes, y.amplitudes))


def same_ray(x: CoherentState, y: CoherentState, tolerance: float = TOLERANCE) -> bool:
    """True when x and y differ only by a global phase."""
    return abs(abs(overlap(x, y)) - 1.0) <= tolerance
