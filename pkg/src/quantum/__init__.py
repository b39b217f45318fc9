"""
Quantum core: spin-s algebra, Bell cat density elements, correlations.
"""

from .spincore import (
    CoherentState,
    Direction,
    Sign,
    SpinQuantum,
    coherent_state,
    half_angle_powers,
    overlap,
    rotation_oracle,
)
from .bellcat import (
    DensityElements,
    Generator,
    OutcomeBasis,
    StateParams,
    local_elements,
    nonlocal_elements,
    oracle_elements,
    parity_factor,
)
from .correlation import (
    BellResult,
    BellTriple,
    ChshQuad,
    CorrelationBreakdown,
    Mode,
    Which,
    bell_lhs_rhs,
    chsh,
    correlate,
)

__all__ = [
    'CoherentState', 'Direction', 'Sign', 'SpinQuantum', 'coherent_state',
    'half_angle_powers', 'overlap', 'rotation_oracle',
    'DensityElements', 'Generator', 'OutcomeBasis', 'StateParams',
    'local_elements', 'nonlocal_elements', 'oracle_elements', 'parity_factor',
    'BellResult', 'BellTriple', 'ChshQuad', 'CorrelationBreakdown', 'Mode',
    'Which', 'bell_lhs_rhs', 'chsh', 'correlate',
]
