"""系数与振幅网格上的批量模拟"""

import asyncio
import itertools
import os

from .base import BaseCommand
from .simulate import run_trajectory
from ..handlers import OutputHandler


class SweepCommand(BaseCommand):
    """在 mu4 x amplitude 网格上逐条推进，每条轨道独占一个输出目录"""

    def __init__(self, config=None, threads: int = 1):
        super().__init__(config)
        self.threads = max(1, threads)

    def _run_dir(self, mu4: float, amplitude: float) -> str:
        return os.path.join(self.config.output_dir, f"mu4_{mu4!r}_amp_{amplitude!r}")

    async def _run_one(self, semaphore: asyncio.Semaphore, mu4: float, amplitude: float) -> dict:
        async with semaphore:
            handler = OutputHandler(self._run_dir(mu4, amplitude))
            try:
                result = await asyncio.to_thread(run_trajectory, self.config, handler, mu4, amplitude)
            except Exception as e:
                self._log_warning(f"mu4={mu4}, amplitude={amplitude} 运行失败: {e}")
                return {'mu4': mu4, 'amplitude': amplitude, 'stop_reason': f"error: {type(e).__name__}",
                        'max_constraint_dev': float('nan'), 'final_E_script': float('nan')}
            self._log_info(f"完成 mu4={mu4}, amplitude={amplitude}: {result['stop_reason']}")
            return result

    async def execute(self):
        try:
            grid = list(itertools.product(self.config.sweep_mu4, self.config.sweep_amplitudes))
            self._log_info("\n开始扫描:", {'轨道数': len(grid), '并发': self.threads})
            semaphore = asyncio.Semaphore(self.threads)
            results = await asyncio.gather(*(self._run_one(semaphore, mu4, amp) for mu4, amp in grid))
            rows = [
                {
                    'mu4': r['mu4'],
                    'amplitude': r['amplitude'],
                    'stop_reason': r['stop_reason'],
                    'max_constraint_dev': r['max_constraint_dev'],
                    'final_E_script': r['final_E_script'],
                }
                for r in results
            ]
            self.handler.write_summary(rows)
            return rows
        except Exception as e:
            self._handle_error(e, "扫描失败")
