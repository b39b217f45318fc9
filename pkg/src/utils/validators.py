"""
Input validation utilities.
"""

import math
from pathlib import Path
from typing import Sequence, Union

import numpy as np

#: Largest supported 2s; keeps C(2s, s) inside 64-bit integers.
MAX_TWO_S = 50

#: Absolute tolerance for every O(1) comparison in the engine.
TOLERANCE = 1e-12


class ValidationError(ValueError):
    """Invalid user input or parameter."""
    pass


class NumericalError(RuntimeError):
    """An internal numerical invariant failed (indicates a bug upstream)."""
    pass


def validate_two_s(two_s: int) -> int:
    """
    Validate twice the spin quantum number.

    Args:
        two_s: 2s, a positive integer

    Returns:
        Validated 2s

    Raises:
        ValidationError: If 2s is not an integer in [1, MAX_TWO_S]
    """
    if isinstance(two_s, bool) or not isinstance(two_s, (int, np.integer)):
        raise ValidationError("2s must be an integer")

    if two_s < 1:
        raise ValidationError("2s must be at least 1")

    if two_s > MAX_TWO_S:
        raise ValidationError(f"2s must be no more than {MAX_TWO_S}")

    return int(two_s)


def validate_finite(value: float, name: str) -> float:
    """Reject NaN and infinities."""
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite")
    return value


def validate_polar(theta: float) -> float:
    """
    Validate a polar angle in radians.

    Raises:
        ValidationError: If theta lies outside [0, pi]
    """
    theta = validate_finite(theta, "theta")
    if theta < 0.0 or theta > math.pi:
        raise ValidationError("theta must lie in [0, pi]")
    return theta


def validate_azimuth(phi: float) -> float:
    """
    Validate an azimuthal angle in radians.

    Raises:
        ValidationError: If phi lies outside [0, 2 pi)
    """
    phi = validate_finite(phi, "phi")
    if phi < 0.0 or phi >= 2.0 * math.pi:
        raise ValidationError("phi must lie in [0, 2 pi)")
    return phi


def validate_shots(shots: int) -> int:
    """Shots must be a positive integer."""
    if isinstance(shots, bool) or not isinstance(shots, (int, np.integer)):
        raise ValidationError("shots must be an integer")
    if shots < 1:
        raise ValidationError("shots must be at least 1")
    return int(shots)


def validate_seed(seed: int) -> int:
    """Seeds are non-negative integers below 2^64."""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ValidationError("seed must be an integer")
    if seed < 0 or seed > 2**64 - 1:
        raise ValidationError("seed must be between 0 and 2^64 - 1")
    return int(seed)


def validate_output_format(format_name: str) -> str:
    """
    Validate output format.

    Raises:
        ValidationError: If format is not json or csv
    """
    valid_formats = ['json', 'csv']

    if not format_name or not isinstance(format_name, str):
        raise ValidationError("Format must be a non-empty string")

    format_name = format_name.lower().strip()
    if format_name not in valid_formats:
        raise ValidationError(f"Invalid format. Must be one of: {', '.join(valid_formats)}")

    return format_name


def validate_output_path(file_path: Union[str, Path]) -> Path:
    """
    Validate an output file path.

    Raises:
        ValidationError: If the path is empty or points at a directory
    """
    if not file_path:
        raise ValidationError("Output path cannot be empty")

    path = Path(file_path)
    if path.exists() and path.is_dir():
        raise ValidationError(f"Output path is a directory: {path}")

    return path


def check_probabilities(probabilities: Sequence[float], tolerance: float = TOLERANCE) -> np.ndarray:
    """
    Clip round-off from a probability vector.

    Args:
        probabilities: Candidate probabilities
        tolerance: Largest negative excursion tolerated as round-off

    Returns:
        Probabilities clipped to [0, 1] and renormalized

    Raises:
        NumericalError: If an entry is more negative than the tolerance or
            the total departs from one by more than the tolerance
    """
    p = np.asarray(probabilities, dtype=float)
    if np.any(p < -tolerance):
        raise NumericalError(f"Negative probability beyond tolerance: {p.min():.3e}")

    total = float(p.sum())
    if abs(total - 1.0) > 1e3 * tolerance:
        raise NumericalError(f"Probabilities sum to {total!r}, not 1")

    p = np.clip(p, 0.0, 1.0)
    return p / p.sum()
