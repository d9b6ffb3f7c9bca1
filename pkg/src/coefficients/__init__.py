"""材料系数与区间判别"""

from .leslie import LeslieCoefficients, build_coefficients, wave_map_coefficients
from .regime import (
    LifespanReport,
    RegimeReport,
    cap_p,
    cap_q,
    compute_alpha,
    compute_c1,
    compute_c2,
    compute_c2_proof,
    compute_c3,
    compute_eta,
    energy_y,
    epsilon0,
    epsilon1,
    growth_constant,
    lifespan_bound,
    lifespan_report,
    part1_bound,
    part2_bound,
    part2_energy_cap,
    regime_classify,
)

__all__ = [
    'LeslieCoefficients', 'build_coefficients', 'wave_map_coefficients',
    'LifespanReport', 'RegimeReport',
    'compute_alpha', 'compute_c1', 'compute_c2', 'compute_c2_proof', 'compute_c3', 'compute_eta', 'energy_y',
    'cap_p', 'cap_q', 'epsilon0', 'epsilon1', 'growth_constant',
    'lifespan_bound', 'lifespan_report', 'part1_bound', 'part2_bound',
    'part2_energy_cap', 'regime_classify',
]
