"""逐点张量代数"""

from .kinematics import (
    DIRECTOR_COMPONENTS,
    DirectorState,
    VelocityGradientSplit,
    apply,
    corotational_N,
    embed_gradient,
    kinematic_transport,
    lagrangian_gamma,
    quadratic_form,
    split_gradient,
    strain_rotation,
)
from .stress import ericksen_stress, leslie_stress
