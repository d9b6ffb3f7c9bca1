"""Leslie 粘性系数"""

from dataclasses import dataclass

from ..config.constants import PARODI_TOL
from ..utils.errors import (
    NegativeCoefficient,
    NonPositiveInertia,
    NonPositiveViscosity,
    ParodiViolation,
)
from ..utils.logger import logger


@dataclass(frozen=True)
class LeslieCoefficients:
    """材料系数 mu1..mu6、惯性常数 rho1 及导出量 lambda1, lambda2

    只能通过 build_coefficients 构造，构造后不可变。
    """
    mu1: float
    mu2: float
    mu3: float
    mu4: float
    mu5: float
    mu6: float
    rho1: float
    lambda1: float
    lambda2: float
    parodi_enforced: bool = True
    parodi_residual: float = 0.0

    @property
    def beta(self) -> float:
        return self.mu4 - 4.0 * self.mu6

    @property
    def is_wave_map(self) -> bool:
        """mu1 = mu2 = mu3 = mu5 = mu6 = 0，即 Navier-Stokes 耦合波映射"""
        return all(v == 0.0 for v in (self.mu1, self.mu2, self.mu3, self.mu5, self.mu6))

    @property
    def product_degree(self) -> int:
        """右端项中非线性乘积的最高次数，用于选择去混叠网格"""
        if self.mu1 != 0.0:
            return 5
        if self.lambda2 != 0.0:
            return 4
        return 3

    def as_dict(self) -> dict:
        return {
            'mu1': self.mu1, 'mu2': self.mu2, 'mu3': self.mu3,
            'mu4': self.mu4, 'mu5': self.mu5, 'mu6': self.mu6,
            'rho1': self.rho1, 'lambda1': self.lambda1, 'lambda2': self.lambda2,
        }


def wave_map_coefficients(mu4: float, rho1: float) -> LeslieCoefficients:
    """波映射情形的系数，其余 mu 全为零"""
    return build_coefficients(0.0, 0.0, 0.0, mu4, 0.0, 0.0, rho1)


def build_coefficients(
        mu1: float,
        mu2: float,
        mu3: float,
        mu4: float,
        mu5: float,
        mu6: float,
        rho1: float,
        enforce_parodi: bool = True,
        parodi_tol: float = PARODI_TOL
) -> LeslieCoefficients:
    """校验并构造系数

    Args:
        mu1..mu6: Leslie 系数，mu4 > 0，其余非负
        rho1: 惯性常数，必须为正
        enforce_parodi: 为 True 时 Parodi 关系不成立直接报错，否则只告警
        parodi_tol: Parodi 关系的容差
    """
    if mu4 <= 0.0:
        raise NonPositiveViscosity(f"mu4 必须为正，当前 {mu4}")
    if rho1 <= 0.0:
        raise NonPositiveInertia(f"rho1 必须为正，当前 {rho1}")
    for name, value in (('mu1', mu1), ('mu2', mu2), ('mu3', mu3), ('mu5', mu5), ('mu6', mu6)):
        if value < 0.0:
            raise NegativeCoefficient(f"{name} 不能为负，当前 {value}")

    residual = abs((mu2 + mu3) - (mu6 - mu5))
    if residual > parodi_tol:
        message = f"Parodi 关系不成立: mu2+mu3={mu2 + mu3}, mu6-mu5={mu6 - mu5}"
        if enforce_parodi:
            raise ParodiViolation(message)
        logger.warning(message)

    return LeslieCoefficients(
        mu1=float(mu1), mu2=float(mu2), mu3=float(mu3), mu4=float(mu4),
        mu5=float(mu5), mu6=float(mu6), rho1=float(rho1),
        lambda1=float(mu2) - float(mu3),
        lambda2=float(mu5) - float(mu6),
        parodi_enforced=enforce_parodi,
        parodi_residual=residual,
    )
