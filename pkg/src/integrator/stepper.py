"""显式四阶 Runge-Kutta 时间推进

rk4_if 对 u 的粘性项 mu4 Lap(u)/2 使用精确积分因子 exp(-mu4 |xi|^2 h / 2)（Lawson 形式），
d 与 ddot 的波动算子显式推进，受 dt <= sqrt(rho1)/K 约束。
"""

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np

from ..config.constants import DEFAULT_CFL_SAFETY, DEFAULT_SCHEME, SCHEMES
from ..dynamics import State, SystemRhs, Tendency
from ..utils.errors import NanDetected, StabilityViolation
from ..utils.logger import logger

Rhs = Callable[[State], Tendency]
Monitor = Callable[[State], Dict[str, float]]

# 判断最后一步是否需要缩短时的相对容差
TIME_SLACK = 1e-12


@dataclass(frozen=True)
class StepperConfig:
    dt: float
    t_end: float
    scheme: str = DEFAULT_SCHEME
    cfl_safety: float = DEFAULT_CFL_SAFETY
    cadence: int = 10
    snapshot_cadence: int = 0

    def step_limit(self, mu4: float, rho1: float, K: float) -> float:
        """当前格式允许的最大步长"""
        limit = math.sqrt(rho1) / K
        if self.scheme == 'rk4_plain':
            limit = min(limit, 2.0 / (mu4 * K ** 2))
        return self.cfl_safety * limit

    def validate(self, mu4: float = None, rho1: float = None, K: float = None):
        if self.scheme not in SCHEMES:
            raise StabilityViolation(f"未知的时间格式 {self.scheme}，可选 {SCHEMES}")
        if not self.dt > 0.0:
            raise StabilityViolation(f"dt 必须为正，当前 {self.dt}")
        if self.t_end < 0.0:
            raise StabilityViolation(f"t_end 不能为负，当前 {self.t_end}")
        if not 0.0 < self.cfl_safety <= 1.0:
            raise StabilityViolation(f"cfl_safety 必须在 (0, 1] 内，当前 {self.cfl_safety}")
        if None not in (mu4, rho1, K) and K > 0:
            limit = self.step_limit(mu4, rho1, K)
            if self.dt > limit:
                raise StabilityViolation(
                    f"{self.scheme} 下 dt={self.dt:.3g} 超过稳定上限 {limit:.3g} (K={K}, mu4={mu4}, rho1={rho1})")


@dataclass
class TrajectorySummary:
    final_state: State
    series: List[Dict[str, float]] = field(default_factory=list)
    stop_reason: str = 'completed'
    steps: int = 0
    blowup_time: Optional[float] = None

    def column(self, name: str) -> np.ndarray:
        return np.array([row[name] for row in self.series], dtype=float)

    @property
    def times(self) -> np.ndarray:
        return self.column('t')


def _viscosity(rhs: Rhs) -> float:
    return rhs.c.mu4 if isinstance(rhs, SystemRhs) else 0.0


def _scale_u(s: State, factor: np.ndarray) -> State:
    return replace(s, u=s.u.with_coeffs(factor * s.u.coeffs))


def _scale_du(k: Tendency, factor: np.ndarray) -> Tendency:
    return replace(k, du_dt=k.du_dt.with_coeffs(factor * k.du_dt.coeffs))


def _rk4_plain(s: State, h: float, rhs: Rhs) -> State:
    k1 = rhs(s)
    k2 = rhs(s.shifted(k1, 0.5 * h))
    k3 = rhs(s.shifted(k2, 0.5 * h))
    k4 = rhs(s.shifted(k3, h))
    return s.shifted(k1 + 2.0 * (k2 + k3) + k4, h / 6.0)


def _rk4_if(s: State, h: float, rhs: Rhs, mu4: float) -> State:
    L = -0.5 * mu4 * s.grid.k2
    half = np.exp(0.5 * h * L)
    full = np.exp(h * L)

    def nonlinear(state: State) -> Tendency:
        k = rhs(state)
        return replace(k, du_dt=k.du_dt - state.u.with_coeffs(L * state.u.coeffs))

    k1 = nonlinear(s)
    k2 = nonlinear(_scale_u(s.shifted(k1, 0.5 * h), half))
    k3 = nonlinear(_scale_u(s, half).shifted(k2, 0.5 * h))
    k4 = nonlinear(_scale_u(s, full).shifted(_scale_du(k3, half), h))
    increment = _scale_du(k1, full) + 2.0 * _scale_du(k2 + k3, half) + k4
    return _scale_u(s, full).shifted(increment, h / 6.0)


def step(s: State, cfg: StepperConfig, rhs: Rhs, h: float = None) -> State:
    """推进一步（默认步长 cfg.dt），出现非有限值时抛出 NanDetected"""
    h = cfg.dt if h is None else h
    mu4 = _viscosity(rhs)
    if isinstance(rhs, SystemRhs):
        cfg.validate(mu4, rhs.c.rho1, s.cutoff)
    with np.errstate(over='ignore', invalid='ignore'):
        if cfg.scheme == 'rk4_if':
            nxt = _rk4_if(s, h, rhs, mu4)
        else:
            nxt = _rk4_plain(s, h, rhs)
    nxt = replace(nxt, t=s.t + h)
    if not nxt.is_finite():
        raise NanDetected(nxt.t)
    return nxt


def _sample(state: State, monitors: Iterable[Monitor]) -> Dict[str, float]:
    row = {'t': state.t}
    for monitor in monitors:
        row.update(monitor(state))
    return row


def run(s0: State, cfg: StepperConfig, rhs: Rhs, monitors: Iterable[Monitor] = (),
        on_snapshot: Callable[[int, State], None] = None) -> TrajectorySummary:
    """从 s0 推进到 s0.t + t_end

    monitors 每 cadence 步调用一次（起点与终点总会采样），返回值合并为一行监测数据。
    出现 NaN 时停止并返回 stop_reason = 'nan_detected'，不抛异常。
    """
    monitors = list(monitors)
    if isinstance(rhs, SystemRhs):
        cfg.validate(rhs.c.mu4, rhs.c.rho1, s0.cutoff)
    else:
        cfg.validate()
    summary = TrajectorySummary(final_state=s0)
    if cfg.t_end == 0.0:
        return summary

    n_steps = max(1, math.ceil(cfg.t_end / cfg.dt - TIME_SLACK))
    t_final = s0.t + cfg.t_end
    summary.series.append(_sample(s0, monitors))
    if on_snapshot and cfg.snapshot_cadence > 0:
        on_snapshot(0, s0)

    state = s0
    for i in range(1, n_steps + 1):
        t_next = t_final if i == n_steps else s0.t + i * cfg.dt
        h = t_next - state.t
        try:
            state = step(state, cfg, rhs, h)
        except NanDetected as e:
            logger.warning(f"第 {i} 步出现非有限值，停止推进: {e}")
            summary.stop_reason = 'nan_detected'
            summary.blowup_time = e.t
            break
        state = replace(state, t=t_next)
        summary.steps = i
        summary.final_state = state
        if (cfg.cadence > 0 and i % cfg.cadence == 0) or i == n_steps:
            summary.series.append(_sample(state, monitors))
        if on_snapshot and cfg.snapshot_cadence > 0 and i % cfg.snapshot_cadence == 0:
            on_snapshot(i // cfg.snapshot_cadence, state)

    logger.debug(f"推进结束: {summary.stop_reason}, 步数 {summary.steps}, t={summary.final_state.t:.6g}")
    return summary
