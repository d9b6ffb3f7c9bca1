"""能量泛函与逐时刻的结构量"""

import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from ..coefficients import LeslieCoefficients, compute_eta
from ..dynamics import State, compat_deviation, constraint_deviation
from ..spectral import (
    SpectralField,
    derivative_norm_sq,
    gradient,
    linf_norm,
    sobolev_norm_sq,
    truncate,
)
from ..utils.errors import EnergyBoundViolation, InvalidOrder, RegimeMismatch

# 下界检查允许的相对舍入误差
LOWER_BOUND_SLACK = 1e-12


@dataclass(frozen=True)
class EnergyReport:
    t: float
    E_eps: float
    F_eps: float
    E_script: float
    D_script: float
    constraint_dev: float
    compat_dev: float
    div_dev: float
    linf_d: float
    breakdown: Dict[str, float] = field(default_factory=dict)

    def as_row(self) -> Dict[str, float]:
        row = {
            't': self.t, 'E_eps': self.E_eps, 'F_eps': self.F_eps,
            'E_script': self.E_script, 'D_script': self.D_script,
            'constraint_dev': self.constraint_dev, 'compat_dev': self.compat_dev,
            'div_dev': self.div_dev, 'linf_d': self.linf_d,
        }
        row.update(self.breakdown)
        return row


def mollified_initial_director(d_in: SpectralField, s: State, eps: Optional[float] = None) -> SpectralField:
    """J_eps d_in，截断与状态一致"""
    radius = s.cutoff if eps is None else min(s.cutoff, 1.0 / eps)
    Jd = truncate(d_in, radius)
    return SpectralField(s.grid, Jd.coeffs, s.cutoff, 'J_d_in')


def energy_E(s: State, d_in: SpectralField, s_ord: int, eps: Optional[float] = None,
             rho1: float = 1.0) -> Tuple[float, Dict[str, float]]:
    """E_eps = |d - J d_in|_L2^2 + |u|_Hs^2 + rho1 |ddot|_Hs^2 + |grad d|_Hs^2"""
    if s_ord < 1:
        raise InvalidOrder(f"能量泛函要求 s >= 1，当前 {s_ord}")
    breakdown = {
        'E_d_shift': sobolev_norm_sq(s.d - mollified_initial_director(d_in, s, eps), 0),
        'E_u': sobolev_norm_sq(s.u, s_ord),
        'E_ddot': rho1 * sobolev_norm_sq(s.ddot, s_ord),
        'E_grad_d': sobolev_norm_sq(gradient(s.d), s_ord),
    }
    return sum(breakdown.values()), breakdown


def energy_F(s: State, s_ord: int) -> float:
    """F_eps = |grad u|_Hs^2"""
    return sobolev_norm_sq(gradient(s.u), s_ord)


def energy_scripts(s: State, c: LeslieCoefficients, s_ord: int,
                   eta: Optional[float] = None) -> Tuple[float, float, Dict[str, float]]:
    """整体衰减估计中的能量 script_E 与耗散 script_D"""
    eta = compute_eta(c) if eta is None else eta
    if not 0.0 < eta <= 0.5:
        raise RegimeMismatch(f"eta 必须在 (0, 1/2] 内，当前 {eta}")
    rho1 = c.rho1
    u_Hs = sobolev_norm_sq(s.u, s_ord)
    ddot_Hs = sobolev_norm_sq(s.ddot, s_ord)
    grad_d_Hs = sobolev_norm_sq(gradient(s.d), s_ord)

    terms = {
        'Es_u': u_Hs,
        'Es_ddot': rho1 * (1.0 - eta) * ddot_Hs,
        'Es_grad_d': (1.0 - eta * rho1) * grad_d_Hs,
        'Es_ddot_plus_d': eta * rho1 * sobolev_norm_sq(s.ddot + s.d, s_ord, homogeneous=True),
        'Es_top': eta * rho1 * derivative_norm_sq(s.d, s_ord + 1),
        'Es_lambda1': eta * rho1 * abs(c.lambda1) * sobolev_norm_sq(s.d, s_ord, homogeneous=True),
    }
    dissipation = {
        'Ds_grad_u': sobolev_norm_sq(gradient(s.u), s_ord),
        'Ds_ddot': ddot_Hs,
        'Ds_grad_d': sobolev_norm_sq(gradient(s.d), s_ord, homogeneous=True),
    }
    E_script = sum(terms.values())
    lower = 0.5 * (u_Hs + rho1 * ddot_Hs + grad_d_Hs)
    if E_script < lower * (1.0 - LOWER_BOUND_SLACK):
        raise EnergyBoundViolation(f"script_E={E_script:.6g} 低于下界 {lower:.6g}, eta={eta}, rho1={rho1}")
    terms.update(dissipation)
    return E_script, sum(dissipation.values()), terms


def divergence_deviation(u: SpectralField) -> float:
    """max_xi |xi . u_hat(xi)|"""
    k = u.grid.wavenumbers
    return float(np.max(np.abs(np.sum(k * u.coeffs, axis=0)), initial=0.0))


def energy_report(s: State, d_in: SpectralField, c: LeslieCoefficients, s_ord: int,
                  eta: Optional[float] = None) -> EnergyReport:
    """单个时刻的全部能量与结构量

    eta 不在 (0, 1/2] 内时（例如波映射系数 lambda1 = 0）script_E 与 script_D 记为 nan。
    """
    E, breakdown = energy_E(s, d_in, s_ord, rho1=c.rho1)
    eta = compute_eta(c) if eta is None else eta
    if 0.0 < eta <= 0.5:
        E_script, D_script, terms = energy_scripts(s, c, s_ord, eta)
        breakdown.update(terms)
    else:
        E_script = D_script = math.nan
    return EnergyReport(
        t=s.t,
        E_eps=E,
        F_eps=energy_F(s, s_ord),
        E_script=E_script,
        D_script=D_script,
        constraint_dev=constraint_deviation(s.d),
        compat_dev=compat_deviation(s.d, s.ddot),
        div_dev=divergence_deviation(s.u),
        linf_d=linf_norm(s.d),
        breakdown=breakdown,
    )
