"""
Monte Carlo Package
"""

from .lhv import LhvBellReport, LhvModel, SignModel, TripleCheck, random_triples, sample_lhv, verify_lhv_bell
from .rng import make_rng, uniform_sphere
from .sampler import SampleStats, empirical_chsh, sample_quantum

__all__ = [
    'LhvBellReport', 'LhvModel', 'SignModel', 'TripleCheck', 'random_triples',
    'sample_lhv', 'verify_lhv_bell', 'make_rng', 'uniform_sphere',
    'SampleStats', 'empirical_chsh', 'sample_quantum',
]
