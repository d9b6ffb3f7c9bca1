"""近似系统的状态、右端项与初值"""

from .initial_data import (
    InitialData,
    build_initial_data,
    compat_deviation,
    constraint_deviation,
    initial_energy,
    make_initial_data,
    normalize_director,
    resolve_params,
    state_from_samples,
    tangential,
)
from .rhs import SystemRhs, check_cutoff, make_rhs, rhs_full, rhs_wavemap
from .state import State, Tendency
