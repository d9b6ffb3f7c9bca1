"""时间收敛阶"""

import asyncio

from .base import BaseCommand
from ..diagnostics import richardson
from ..dynamics import build_initial_data


class ConvergenceCommand(BaseCommand):
    """按配置的初值在 dt, dt/2, dt/4 下推进，估计 Richardson 阶数"""

    async def execute(self):
        try:
            config = self.config
            c = config.coefficients()
            initial = build_initial_data(config.preset, config.preset_params(), config.grid(),
                                         config.K, config.s_ord, c.rho1)
            report = await asyncio.to_thread(richardson, initial, c, config.dt, config.t_end, config.scheme)
            data = {
                'preset': config.preset,
                'scheme': config.scheme,
                'dts': report.dts,
                'differences': report.differences,
                'order': report.order,
            }
            self.handler.write_report('convergence', data)
            self._log_info("\n收敛阶:", data)
            return report
        except Exception as e:
            self._handle_error(e, "收敛阶估计失败")
