"""沿轨道的监测量

对含未给出常数 C(n, s) 的不等式只输出比值序列，不做断言。
"""

import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np

from .energy import energy_report
from ..coefficients import LeslieCoefficients, cap_p, cap_q, compute_eta
from ..config.constants import DEFAULT_C
from ..dynamics import State
from ..spectral import ProductGrid, SpectralField, derivative_norm_sq, jacobian, sobolev_norm_sq
from ..tensorcalc import embed_gradient, quadratic_form
from ..utils.errors import RegimeMismatch

Series = Sequence[Dict[str, float]]

# mu1 项 d^T (grad u) d 是三次乘积，其平方的积分需要六次无混叠网格
MU1_TERM_DEGREE = 5


def column(series: Series, name: str) -> np.ndarray:
    return np.array([row[name] for row in series], dtype=float)


def cumulative_integral(t: np.ndarray, f: np.ndarray) -> np.ndarray:
    """累积积分 int_0^t f

    每个区间用 Hermite 三次求积 h(f_i + f_{i+1})/2 + h^2 (f'_i - f'_{i+1})/12，
    导数取二阶差分，点数不足三个时退化为梯形公式。
    """
    t = np.asarray(t, dtype=float)
    f = np.asarray(f, dtype=float)
    if t.size < 2:
        return np.zeros_like(f)
    h = np.diff(t)
    increments = 0.5 * h * (f[1:] + f[:-1])
    if t.size >= 3:
        g = np.gradient(f, t, edge_order=2)
        increments = increments + h ** 2 / 12.0 * (g[:-1] - g[1:])
    return np.concatenate([[0.0], np.cumsum(increments)])


def mu1_term(s: State) -> float:
    """|d^T (grad u) d|_L2^2"""
    pg = ProductGrid.for_degree(s.grid, s.cutoff, MU1_TERM_DEGREE)
    q = quadratic_form(embed_gradient(pg.physical(jacobian(s.u))), pg.physical(s.d))
    return float(s.grid.volume * np.mean(q ** 2))


class StateMonitor:
    """每个采样时刻的能量与结构量，作为 run 的 monitor 使用"""

    def __init__(self, d_in: SpectralField, c: LeslieCoefficients, s_ord: int,
                 C: float = DEFAULT_C, grad_din_Hs: float = 0.0):
        self.d_in = d_in
        self.c = c
        self.s_ord = s_ord
        self.C = C
        self.grad_din_Hs = grad_din_Hs
        self.eta = compute_eta(c)

    def __call__(self, s: State) -> Dict[str, float]:
        c = self.c
        report = energy_report(s, self.d_in, c, self.s_ord, self.eta)
        row = report.as_row()
        u_L2 = sobolev_norm_sq(s.u, 0)
        ddot_L2 = sobolev_norm_sq(s.ddot, 0)
        grad_d_L2 = derivative_norm_sq(s.d, 1)
        row.update({
            'u_L2': u_L2,
            'ddot_L2': ddot_L2,
            'grad_d_L2': grad_d_L2,
            'grad_u_L2': derivative_norm_sq(s.u, 1),
            'l2_energy': 0.5 * (u_L2 + c.rho1 * ddot_L2 + grad_d_L2),
            'mu1_term': mu1_term(s) if c.mu1 != 0.0 else 0.0,
        })
        if c.beta > 0.0:
            Q = cap_q(c, report.E_eps, self.grad_din_Hs, self.C)
            row['Q'] = Q
            row['T_star_ok'] = float(report.E_eps <= 2.0 and Q <= 0.25 * c.beta)
        return row


def dissipation_balance(series: Series, c: LeslieCoefficients):
    """波映射的 L2 能量恒等式残差

    r(t) = [W(t) - W(0) + mu4/2 int_0^t |grad u|_L2^2] / W(0)，W = (|u|^2 + rho1 |ddot|^2 + |grad d|^2)_L2 / 2
    返回 (残差序列, 最大绝对值)。
    """
    if not c.is_wave_map:
        raise RegimeMismatch("能量恒等式只对波映射系数成立")
    if not series:
        return np.zeros(0), 0.0
    t = column(series, 't')
    W = column(series, 'l2_energy')
    dissipated = 0.5 * c.mu4 * cumulative_integral(t, column(series, 'grad_u_L2'))
    residual = W - W[0] + dissipated
    if W[0] > 0.0:
        residual = residual / W[0]
    return residual, float(np.max(np.abs(residual)))


def _ratio(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """lhs / rhs；两者都为 0 时取 0，rhs 为 0 而 lhs > 0 时取 inf"""
    out = np.zeros_like(lhs)
    positive = rhs > 0.0
    out[positive] = lhs[positive] / rhs[positive]
    out[~positive & (lhs > 0.0)] = math.inf
    return out


@dataclass
class EnergyCapReport:
    t: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    ratio: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    t_star_ok: np.ndarray
    first_violation: Optional[float]

    def as_columns(self) -> Dict[str, np.ndarray]:
        return {'t': self.t, 'cap_lhs': self.lhs, 'cap_rhs': self.rhs, 'cap_ratio': self.ratio,
                'P': self.P, 'Q': self.Q, 'T_star_ok': self.t_star_ok}


def energy_cap_monitor(series: Series, c: LeslieCoefficients, C: float = DEFAULT_C,
               grad_din_Hs: float = 0.0) -> EnergyCapReport:
    """局部能量不等式 E'/2 + beta F/4 <= P(E) + Q(E) F 的比值序列

    d/dt E 用采样序列的中心差分。T*_eps 的判据 E <= 2 且 Q(E) <= beta/4 逐点给出。
    """
    if c.beta <= 0.0:
        raise RegimeMismatch(f"局部能量不等式需要 beta > 0，当前 {c.beta}")
    t = column(series, 't')
    E = column(series, 'E_eps')
    F = column(series, 'F_eps')
    if t.size >= 3:
        dE = np.gradient(E, t, edge_order=2)
    elif t.size == 2:
        dE = np.full(2, (E[1] - E[0]) / (t[1] - t[0]))
    else:
        dE = np.zeros_like(E)
    P = np.array([cap_p(c, e, grad_din_Hs, C) for e in E])
    Q = np.array([cap_q(c, e, grad_din_Hs, C) for e in E])
    lhs = 0.5 * dE + 0.25 * c.beta * F
    rhs = P + Q * F
    ok = (E <= 2.0) & (Q <= 0.25 * c.beta)
    first_violation = float(t[~ok][0]) if np.any(~ok) else None
    return EnergyCapReport(t, lhs, rhs, _ratio(lhs, rhs), P, Q, ok.astype(float), first_violation)


def l2_balance(series: Series, c: LeslieCoefficients) -> Dict[str, np.ndarray]:
    """一般系数下 |d| = 1 时的 L2 不等式两侧，只输出不断言

    左侧 dW/dt + mu4/2 |grad u|^2 - lambda1 |ddot|^2 + mu1 |d^T grad u d|^2，
    右侧 (|lambda1| - 2 lambda2) |d|_inf |grad u| |ddot| + 2 mu6 |d|_inf^2 |grad u|^2。
    """
    t = column(series, 't')
    W = column(series, 'l2_energy')
    grad_u = column(series, 'grad_u_L2')
    ddot = column(series, 'ddot_L2')
    linf = column(series, 'linf_d')
    dW = np.gradient(W, t, edge_order=2) if t.size >= 3 else np.zeros_like(W)
    lhs = dW + 0.5 * c.mu4 * grad_u - c.lambda1 * ddot + c.mu1 * column(series, 'mu1_term')
    rhs = ((abs(c.lambda1) - 2.0 * c.lambda2) * linf * np.sqrt(grad_u * ddot)
           + 2.0 * c.mu6 * linf ** 2 * grad_u)
    return {'t': t, 'lhs': lhs, 'rhs': rhs, 'ratio': _ratio(lhs, rhs)}


def linf_chain(series: Series, grad_din_Hs: float, C: float = DEFAULT_C) -> Dict[str, float]:
    """|d|_inf <= C sqrt(E) + C |grad d_in|_Hs + 1

    返回配置的 C 下是否成立，以及使其在整条轨道上成立的最小 C。
    """
    linf = column(series, 'linf_d')
    E = column(series, 'E_eps')
    scale = np.sqrt(E) + grad_din_Hs
    excess = linf - 1.0
    needed = np.where(scale > 0.0, excess / np.where(scale > 0.0, scale, 1.0),
                      np.where(excess > 0.0, math.inf, 0.0))
    fitted = float(max(0.0, np.max(needed, initial=0.0)))
    holds = bool(np.all(linf <= C * scale + 1.0))
    return {'C_config': C, 'holds': holds, 'C_fitted': fitted}

