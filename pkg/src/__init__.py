"""
bellparity - Source Package
"""

__version__ = "1.0.0"
__author__ = "bellparity developers"
__description__ = "Bell cat spin-parity numerical engine: correlations, inequality searches and Monte Carlo checks"
