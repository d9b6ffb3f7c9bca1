"""单条轨道模拟"""

import asyncio
from typing import Dict, Optional

from .base import BaseCommand
from ..config import RunConfig
from ..diagnostics import (
    StateMonitor,
    dissipation_balance,
    energy_cap_monitor,
    initial_energy_check,
    l2_balance,
    linf_chain,
    simulate,
)
from ..diagnostics.monitors import column
from ..dynamics import build_initial_data
from ..handlers import OutputHandler
from ..utils.logger import logger


def run_trajectory(config: RunConfig, handler: OutputHandler, mu4: Optional[float] = None,
                   amplitude: Optional[float] = None) -> Dict[str, object]:
    """按配置推进一条轨道并写出监测数据，返回汇总"""
    c = config.coefficients() if mu4 is None else config.coefficients(mu4=mu4)
    params = config.preset_params() if amplitude is None else config.preset_params(amplitude=amplitude)
    initial = build_initial_data(config.preset, params, config.grid(), config.K, config.s_ord, c.rho1)
    if not initial_energy_check(initial, config.s_ord, c.rho1):
        logger.warning(f"E_eps(0) 超过 E_in={initial.E_in:.6g}")

    cfg = config.stepper()
    monitor = StateMonitor(initial.d_in, c, config.s_ord, config.C, initial.grad_din_Hs)
    on_snapshot = handler.write_snapshot if config.snapshot_cadence > 0 else None
    summary = simulate(initial, c, cfg, [monitor], on_snapshot)
    handler.write_monitors(summary.series)

    result = {
        'preset': config.preset,
        'mu4': c.mu4,
        'amplitude': params['amplitude'],
        'E_in': initial.E_in,
        'stop_reason': summary.stop_reason,
        'steps': summary.steps,
        't_final': summary.final_state.t,
        'max_constraint_dev': float(column(summary.series, 'constraint_dev').max(initial=0.0)),
        'max_compat_dev': float(column(summary.series, 'compat_dev').max(initial=0.0)),
        'final_E_script': summary.series[-1]['E_script'] if summary.series else float('nan'),
    }
    if len(summary.series) < 2:
        return result

    if c.is_wave_map:
        _, result['max_balance_residual'] = dissipation_balance(summary.series, c)
    else:
        handler.write_columns(l2_balance(summary.series, c), 'l2_balance.csv')
    if c.beta > 0.0:
        report = energy_cap_monitor(summary.series, c, config.C, initial.grad_din_Hs)
        handler.write_columns(report.as_columns(), 'energy_cap.csv')
        result['T_star_first_violation'] = report.first_violation
    chain = linf_chain(summary.series, initial.grad_din_Hs, config.C)
    result['linf_chain_holds'] = chain['holds']
    result['linf_chain_C_fitted'] = chain['C_fitted']
    return result


class SimulateCommand(BaseCommand):
    """推进一条轨道，写出 monitors.csv 与快照"""

    async def execute(self):
        try:
            self._log_info("\n开始模拟:", {
                '初值': self.config.preset,
                '网格': f"dim={self.config.dim}, N={self.config.N}, K={self.config.K} (eps={self.config.eps:.6g})",
                '时间': f"dt={self.config.dt}, t_end={self.config.t_end}, 格式={self.config.scheme}",
            })
            result = await asyncio.to_thread(run_trajectory, self.config, self.handler)
            if result['stop_reason'] != 'completed':
                self._log_warning(f"轨道提前终止: {result['stop_reason']}")
            self.handler.write_report('run', result)
            self._log_info("\n模拟结果:", result)
            return result
        except Exception as e:
            self._handle_error(e, "模拟失败")
