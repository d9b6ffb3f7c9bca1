"""能量泛函、监测量与数值实验"""

from .energy import (
    EnergyReport,
    divergence_deviation,
    energy_E,
    energy_F,
    energy_report,
    energy_scripts,
)
from .experiments import (
    ConstraintTable,
    DecayReport,
    balance_experiment,
    constraint_propagation_experiment,
    decay_experiment,
    grid_for_cutoff,
    heat_decay_experiment,
    initial_energy_check,
    leray_contract,
    mollifier_contract,
    richardson,
    simulate,
    stationary_experiment,
    structure_monitor,
)
from .monitors import (
    EnergyCapReport,
    StateMonitor,
    column,
    cumulative_integral,
    dissipation_balance,
    energy_cap_monitor,
    l2_balance,
    linf_chain,
)
