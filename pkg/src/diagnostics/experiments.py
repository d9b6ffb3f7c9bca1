"""打包好的数值实验

每个实验只做计算并返回结果对象，落盘与日志由命令层负责。
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .energy import energy_E
from .monitors import StateMonitor, column, cumulative_integral, dissipation_balance
from ..coefficients import LeslieCoefficients, compute_alpha, compute_eta
from ..config.constants import CONSTRAINT_TOL
from ..dynamics import (
    InitialData,
    State,
    build_initial_data,
    compat_deviation,
    constraint_deviation,
    make_rhs,
)
from ..integrator import StepperConfig, TrajectorySummary, run
from ..spectral import (
    SpectralField,
    TorusGrid,
    divergence,
    fft_friendly_size,
    gradient,
    leray_project,
    mollify,
    random_field,
    sobolev_norm_sq,
)
from ..utils.errors import RegimeMismatch

# 约束偏差低于该值时视为舍入误差，不参与单调性比较
DEVIATION_FLOOR = CONSTRAINT_TOL
# 最小一对截断之间允许的相对增长
FIRST_PAIR_SLACK = 0.1
# 整体衰减实验中 script_E 逐步允许的相对增长
DECAY_STEP_TOL = 1e-9
# 耗散积分上界的放宽
DECAY_INTEGRAL_SLACK = 0.5


def grid_for_cutoff(dim: int, K: int) -> TorusGrid:
    """满足 N >= 3K + 1 的最小 FFT 友好网格"""
    return TorusGrid(dim, fft_friendly_size(3 * K + 1))


def simulate(initial: InitialData, c: LeslieCoefficients, cfg: StepperConfig,
             monitors=(), on_snapshot=None) -> TrajectorySummary:
    state = initial.state
    return run(state, cfg, make_rhs(c, state.eps), monitors, on_snapshot)


def structure_monitor(s: State) -> Dict[str, float]:
    """只含约束与相容偏差的轻量监测"""
    return {'constraint_dev': constraint_deviation(s.d), 'compat_dev': compat_deviation(s.d, s.ddot)}


@dataclass
class ConstraintRow:
    K: int
    N: int
    constraint_dev: float
    compat_dev: float
    stop_reason: str


@dataclass
class ConstraintTable:
    rows: List[ConstraintRow]
    non_increasing: bool
    strictly_decreasing: bool
    compat_non_increasing: bool
    final_ok: bool
    tol: float

    @property
    def passed(self) -> bool:
        return (self.non_increasing and self.strictly_decreasing and self.final_ok
                and all(r.stop_reason == 'completed' for r in self.rows))


def _trend(values: Sequence[float]):
    """(允许首对 10% 放宽的非增, 严格递减)

    两侧都已落到舍入下限时视为递减。
    """
    v = [max(x, DEVIATION_FLOOR) for x in values]
    non_increasing = True
    strict = True
    for i in range(len(v) - 1):
        allowed = v[i] * (1.0 + FIRST_PAIR_SLACK) if i == 0 else v[i]
        non_increasing &= v[i + 1] <= allowed
        strict &= v[i + 1] < v[i] or v[i] == DEVIATION_FLOOR
    return non_increasing, strict


def constraint_propagation_experiment(preset: str, params: Optional[dict], K_list: Sequence[int],
                                      dt: float, t_end: float, c: LeslieCoefficients,
                                      dim: int = 2, s_ord: int = 4, tol: float = 1e-6,
                                      cadence: int = 5, scheme: str = 'rk4_if') -> ConstraintTable:
    """同一初值在一组截断下推进，记录 max_t max_x ||d|^2 - 1| 随 K 的变化"""
    rows = []
    for K in K_list:
        grid = grid_for_cutoff(dim, K)
        initial = build_initial_data(preset, params, grid, K, s_ord, c.rho1)
        cfg = StepperConfig(dt=dt, t_end=t_end, scheme=scheme, cadence=cadence)
        summary = simulate(initial, c, cfg, [structure_monitor])
        constraint = max(initial.constraint_residual, float(np.max(column(summary.series, 'constraint_dev'), initial=0.0)))
        compat = max(initial.compat_residual, float(np.max(column(summary.series, 'compat_dev'), initial=0.0)))
        rows.append(ConstraintRow(K, grid.N, constraint, compat, summary.stop_reason))

    non_increasing, strict = _trend([r.constraint_dev for r in rows])
    compat_trend, _ = _trend([r.compat_dev for r in rows])
    final_ok = bool(rows) and rows[-1].constraint_dev <= tol
    return ConstraintTable(rows, non_increasing, strict, compat_trend, final_ok, tol)


@dataclass
class DecayReport:
    monotone: bool
    first_increase: Optional[float]
    dissipation_integral: float
    integral_bound: float
    E_in: float
    stop_reason: str
    summary: TrajectorySummary = field(repr=False, default=None)

    @property
    def integral_ok(self) -> bool:
        return self.dissipation_integral <= self.integral_bound

    @property
    def passed(self) -> bool:
        return self.monotone and self.integral_ok and self.stop_reason == 'completed'


def decay_experiment(c: LeslieCoefficients, initial: InitialData, s_ord: int, dt: float,
                     t_end: float, cadence: int = 10, C: float = 1.0) -> DecayReport:
    """第三部分系数下小初值的 script_E 单调性与 int |grad u|_Hs^2 的上界"""
    alpha = compute_alpha(c, compute_eta(c))
    if not (alpha > 0.0 and c.mu2 < c.mu3):
        raise RegimeMismatch(f"整体衰减需要 alpha > 0 且 mu2 < mu3，当前 alpha={alpha}, mu2={c.mu2}, mu3={c.mu3}")
    monitor = StateMonitor(initial.d_in, c, s_ord, C, initial.grad_din_Hs)
    cfg = StepperConfig(dt=dt, t_end=t_end, cadence=cadence)
    summary = simulate(initial, c, cfg, [monitor])

    if not summary.series:
        return DecayReport(True, None, 0.0, 0.0, initial.E_in, summary.stop_reason, summary)
    t = column(summary.series, 't')
    Es = column(summary.series, 'E_script')
    increases = np.diff(Es) > DECAY_STEP_TOL * Es[0]
    first_increase = float(t[1:][increases][0]) if np.any(increases) else None
    integral = float(cumulative_integral(t, column(summary.series, 'F_eps'))[-1])
    bound = 2.0 * (abs(c.lambda1) + 2.0) * initial.E_in * (1.0 + DECAY_INTEGRAL_SLACK)
    return DecayReport(not np.any(increases), first_increase, integral, bound,
                       initial.E_in, summary.stop_reason, summary)


@dataclass
class StationaryReport:
    max_change: float
    constraint_dev: float
    stop_reason: str


def stationary_experiment(c: LeslieCoefficients, K: int, dt: float, t_end: float,
                          m: int = 1, dim: int = 2) -> StationaryReport:
    """扭转波在完整系统下保持不动"""
    grid = grid_for_cutoff(dim, K)
    initial = build_initial_data('twist_wave', {'m': m}, grid, K, 1, c.rho1)
    cfg = StepperConfig(dt=dt, t_end=t_end, cadence=max(1, int(round(t_end / dt)) // 10))
    summary = simulate(initial, c, cfg, [structure_monitor])
    return StationaryReport(
        max_change=summary.final_state.max_abs_diff(initial.state),
        constraint_dev=float(np.max(column(summary.series, 'constraint_dev'), initial=0.0)),
        stop_reason=summary.stop_reason,
    )


@dataclass
class HeatDecayReport:
    relative_error: float
    stop_reason: str


def heat_decay_experiment(c: LeslieCoefficients, K: int, dt: float, t_end: float = 1.0,
                          amplitude: float = 1.0, dim: int = 2) -> HeatDecayReport:
    """常指向矢剪切流：u(t) = exp(-mu4 t / 2) u(0)"""
    grid = grid_for_cutoff(dim, K)
    initial = build_initial_data('constant_director_shear', {'amplitude': amplitude}, grid, K, 1, c.rho1)
    summary = simulate(initial, c, StepperConfig(dt=dt, t_end=t_end, scheme='rk4_if'))
    exact = initial.state.u * math.exp(-0.5 * c.mu4 * t_end)
    error = math.sqrt(sobolev_norm_sq(summary.final_state.u - exact, 0))
    return HeatDecayReport(error / math.sqrt(sobolev_norm_sq(exact, 0)), summary.stop_reason)


@dataclass
class BalanceReport:
    max_residual: float
    max_constraint_dev: float
    stop_reason: str
    residual: np.ndarray = field(repr=False, default=None)


def balance_experiment(c: LeslieCoefficients, initial: InitialData, s_ord: int, dt: float,
                       t_end: float, cadence: int = 1) -> BalanceReport:
    """波映射 L2 能量恒等式的残差"""
    monitor = StateMonitor(initial.d_in, c, s_ord)
    summary = simulate(initial, c, StepperConfig(dt=dt, t_end=t_end, cadence=cadence), [monitor])
    residual, worst = dissipation_balance(summary.series, c)
    return BalanceReport(worst, float(np.max(column(summary.series, 'constraint_dev'), initial=0.0)),
                         summary.stop_reason, residual)


@dataclass
class RichardsonReport:
    dts: List[float]
    differences: List[float]
    order: float


def _l2_distance(a: State, b: State) -> float:
    return math.sqrt(sum(sobolev_norm_sq(x - y, 0) for x, y in zip(a.fields(), b.fields())))


def richardson(initial: InitialData, c: LeslieCoefficients, dt: float, t_end: float,
               scheme: str = 'rk4_if') -> RichardsonReport:
    """dt, dt/2, dt/4 三次推进，阶数 log2(|s_dt - s_dt/2| / |s_dt/2 - s_dt/4|)"""
    dts = [dt, dt / 2.0, dt / 4.0]
    finals = [simulate(initial, c, StepperConfig(dt=h, t_end=t_end, scheme=scheme, cadence=0)).final_state
              for h in dts]
    differences = [_l2_distance(finals[0], finals[1]), _l2_distance(finals[1], finals[2])]
    if differences[1] == 0.0:
        order = math.inf
    else:
        order = math.log2(differences[0] / differences[1])
    return RichardsonReport(dts, differences, order)


@dataclass
class MollifierReport:
    idempotence: float
    worst_ratio: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.idempotence <= 1e-15 and self.worst_ratio <= 1.0


def mollifier_contract(grid: TorusGrid, samples: int, orders: Sequence[int], eps_list: Sequence[float],
                       rng: np.random.Generator) -> MollifierReport:
    """J_eps 幂等，且 |J_eps u - u|_{H^(s-1)} <= eps |u|_Hs"""
    idempotence = 0.0
    worst = 0.0
    for _ in range(samples):
        u = random_field(grid, (grid.dim,), grid.max_cutoff, rng)
        for eps in eps_list:
            once = mollify(u, eps)
            idempotence = max(idempotence, once.max_abs_diff(mollify(once, eps)))
            diff = u.with_coeffs(u.coeffs - once.coeffs)
            for s in orders:
                lhs = math.sqrt(sobolev_norm_sq(diff, s - 1))
                rhs = eps * math.sqrt(sobolev_norm_sq(u, s))
                worst = max(worst, lhs / rhs if rhs > 0.0 else 0.0)
    return MollifierReport(idempotence, worst, samples)


@dataclass
class LerayReport:
    max_divergence: float
    max_gradient_residual: float
    idempotence: float
    samples: int

    @property
    def passed(self) -> bool:
        return max(self.max_divergence, self.max_gradient_residual, self.idempotence) <= 1e-12


def leray_contract(grid: TorusGrid, samples: int, rng: np.random.Generator) -> LerayReport:
    """P u 无散，P grad phi = 0，P 幂等"""
    K = grid.max_cutoff
    max_div = max_grad = idem = 0.0
    for _ in range(samples):
        u = random_field(grid, (grid.dim,), K, rng)
        phi = random_field(grid, (), K, rng)
        Pu = leray_project(u)
        max_div = max(max_div, float(np.max(np.abs(divergence(Pu).coeffs))))
        max_grad = max(max_grad, float(np.max(np.abs(leray_project(gradient(phi)).coeffs))))
        idem = max(idem, Pu.max_abs_diff(leray_project(Pu)))
    return LerayReport(max_div, max_grad, idem, samples)


def initial_energy_check(initial: InitialData, s_ord: int, rho1: float) -> bool:
    """E_eps(0) <= E_in"""
    E0, _ = energy_E(initial.state, initial.d_in, s_ord, rho1=rho1)
    return E0 <= initial.E_in * (1.0 + 1e-12)
