"""
Search Package
"""

from .objectives import Objective, evaluate
from .optimizer import SearchSpec, ViolationReport, analytic_nlc_maximum, maximize, parity_sweep

__all__ = [
    'Objective', 'evaluate', 'SearchSpec', 'ViolationReport',
    'analytic_nlc_maximum', 'maximize', 'parity_sweep',
]
