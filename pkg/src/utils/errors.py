"""异常定义

数值内核只负责抛出异常，命令层统一捕获并记录日志。
"""


class LiquidCrystalError(Exception):
    """所有模拟器异常的基类"""


# 系数相关
class CoefficientError(LiquidCrystalError, ValueError):
    """材料系数不合法"""


class NonPositiveViscosity(CoefficientError):
    """mu4 <= 0"""


class NegativeCoefficient(CoefficientError):
    """mu1, mu2, mu3, mu5, mu6 中存在负值"""


class ParodiViolation(CoefficientError):
    """Parodi 关系 mu2 + mu3 = mu6 - mu5 不成立"""


class NonPositiveInertia(CoefficientError):
    """rho1 <= 0，抛物-双曲情形要求 rho1 > 0"""


class RegimeMismatch(LiquidCrystalError, ValueError):
    """系数不满足当前公式所需的区间条件"""


class NonPositiveEnergy(LiquidCrystalError, ValueError):
    """初始能量必须为正"""


class CapDiverged(LiquidCrystalError, ArithmeticError):
    """Y(E_in)·exp(4·C2·T) >= 1，能量上界发散"""


# 谱方法相关
class ShapeMismatch(LiquidCrystalError, ValueError):
    """数组形状与网格不一致"""


class InvalidOrder(LiquidCrystalError, ValueError):
    """Sobolev 阶数不合法"""


class ComponentMismatch(LiquidCrystalError, ValueError):
    """场的分量数与算子要求不一致"""


class CutoffMismatch(LiquidCrystalError, ValueError):
    """场的截断波数与磨光截断不一致"""


# 时间推进相关
class StabilityViolation(LiquidCrystalError, ValueError):
    """时间步长超过稳定性上限"""


class NanDetected(LiquidCrystalError, ArithmeticError):
    """推进过程中出现 NaN 或溢出，视为可能的爆破"""

    def __init__(self, t: float, message: str = None):
        self.t = t
        super().__init__(message or f"t={t:.6g} 时出现非有限值")


# 诊断相关
class EnergyBoundViolation(LiquidCrystalError, ArithmeticError):
    """script_E 低于 (|u|^2 + rho1 |ddot|^2 + |grad d|^2) / 2"""


# 初值相关
class UnknownPreset(LiquidCrystalError, ValueError):
    """未知的初值预设名称"""


class NormalizationFailed(LiquidCrystalError, ArithmeticError):
    """指向矢采样出现零长度，无法归一化"""


# 配置与持久化
class ConfigInvalid(LiquidCrystalError, ValueError):
    """配置项不合法，附带字段名"""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"配置项 {field} 不合法: {message}")


class SnapshotIOError(LiquidCrystalError, OSError):
    """快照或监测文件读写失败"""


class FormatVersionMismatch(SnapshotIOError):
    """快照文件头版本或长度不符"""
