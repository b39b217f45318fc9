"""
Seeded random streams.

Every stream is numpy's Philox4x64-10 counter-based generator keyed by
SeedSequence(entropy=[seed, batch]). The same (seed, batch) pair reproduces the
same stream on any platform running the same numpy bit-generator.
"""

import math
from typing import List

import numpy as np

from ..utils.validators import validate_seed


def make_rng(seed: int, batch: int = 0) -> np.random.Generator:
    """Generator for batch ``batch`` of a run seeded with ``seed``."""
    sequence = np.random.SeedSequence(entropy=[validate_seed(seed), int(batch)])
    return np.random.Generator(np.random.Philox(sequence))


def batch_sizes(shots: int, batches: int) -> List[int]:
    """Split shots into ``batches`` near-equal parts, larger parts first."""
    batches = max(1, min(int(batches), int(shots)))
    base, extra = divmod(int(shots), batches)
    return [base + 1 if i < extra else base for i in range(batches)]


def uniform_sphere(rng: np.random.Generator, n: int) -> np.ndarray:
    """
    Uniform unit vectors by inverse CDF: cos(theta) = 1 - 2u, phi = 2 pi v.

    Returns:
        Array of shape (n, 3)
    """
    u = rng.random(n)
    v = rng.random(n)
    cos_theta = 1.0 - 2.0 * u
    sin_theta = np.sqrt(np.clip(1.0 - cos_theta ** 2, 0.0, None))
    phi = 2.0 * math.pi * v
    return np.column_stack([sin_theta * np.cos(phi), sin_theta * np.sin(phi), cos_theta])
