"""区间判别与寿命估计"""

from .base import BaseCommand
from ..coefficients import lifespan_report, regime_classify


class ClassifyCommand(BaseCommand):
    """按系数给出 beta, eta, alpha, theta, eps0, eps1 等全部显式常数"""

    async def execute(self):
        try:
            c = self.config.coefficients()
            report = regime_classify(c, self.config.C, self.config.C_prime)
            data = report.as_dict()
            self.handler.write_report('regime', data)
            self._log_info("\n区间判别:", data)
            return report
        except Exception as e:
            self._handle_error(e, "区间判别失败")


class LifespanCommand(BaseCommand):
    """给定初始能量的寿命估计"""

    def __init__(self, config=None, e_in: float = None, grad_din_Hs: float = 0.0):
        """初始化寿命估计命令

        Args:
            e_in: 初始能量 E_in，缺省时由配置中的初值预设计算
            grad_din_Hs: |grad d_in|_Hs，只进入 C2
        """
        super().__init__(config)
        self.e_in = e_in
        self.grad_din_Hs = grad_din_Hs

    def _initial_energy(self, c):
        from ..dynamics import build_initial_data

        initial = build_initial_data(self.config.preset, self.config.preset_params(), self.config.grid(),
                                     self.config.K, self.config.s_ord, c.rho1)
        return initial.E_in, initial.grad_din_Hs

    async def execute(self):
        try:
            c = self.config.coefficients()
            e_in, grad_din_Hs = self.e_in, self.grad_din_Hs
            if e_in is None:
                e_in, grad_din_Hs = self._initial_energy(c)
            report = lifespan_report(c, e_in, self.config.C, grad_din_Hs, self.config.C_prime)
            data = dict(vars(report))
            data['grad_din_Hs'] = grad_din_Hs
            if not report.admissible:
                self._log_warning(f"E_in={e_in:.6g} 不满足第 {report.part} 部分的小初值条件")
            self.handler.write_report('lifespan', data)
            self._log_info("\n寿命估计:", data)
            return report
        except Exception as e:
            self._handle_error(e, "寿命估计失败")
