"""区间判别与显式常数

寿命估计用到的显式公式都在这里求值。C(n, s) 与 C'(n, s) 没有具体数值，
作为可配置的替代常数传入并记录在报告中。
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .leslie import LeslieCoefficients
from ..config.constants import DEFAULT_C, DEFAULT_C_PRIME
from ..utils.errors import CapDiverged, NonPositiveEnergy, RegimeMismatch

C2_DISCREPANCY_NOTE = (
    "C2 取 C(1 + 1/mu4 + |grad d_in|_Hs)；另一写法 "
    "C(1/sqrt(rho1) + 1/mu4 + |grad d_in|_Hs) 记为 C2_proof"
)
EPS0_BRACKET_NOTE = "eps0 分母中 sqrt(rho1) 只乘 (mu1 + mu6)"


@dataclass(frozen=True)
class RegimeReport:
    """区间判别结果"""
    beta: float
    eta: float
    alpha: float
    theta: float
    eps0: float
    eps1: float
    part1_applies: bool
    part2_applies: bool
    part3_applies: bool
    lifespan: float
    C1: float
    C2: float
    C2_proof: float
    C3: float
    constants_used: Dict[str, float] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            'beta': self.beta, 'eta': self.eta, 'alpha': self.alpha, 'theta': self.theta,
            'eps0': self.eps0, 'eps1': self.eps1,
            'part1_applies': self.part1_applies,
            'part2_applies': self.part2_applies,
            'part3_applies': self.part3_applies,
            'lifespan': self.lifespan,
            'C1': self.C1, 'C2': self.C2, 'C2_proof': self.C2_proof, 'C3': self.C3,
            'constants_used': dict(self.constants_used),
            'notes': list(self.notes),
        }


@dataclass(frozen=True)
class LifespanReport:
    """给定初始能量下的寿命估计"""
    part: str
    E_in: float
    lifespan: float
    admissible: bool
    energy_cap: float
    Y: float = math.nan
    W: float = math.nan


def compute_eta(c: LeslieCoefficients) -> float:
    """eta = 1/2 min{1, 1/rho1, |lambda1|/rho1}"""
    return 0.5 * min(1.0, 1.0 / c.rho1, abs(c.lambda1) / c.rho1)


def compute_alpha(c: LeslieCoefficients, eta: float = None) -> float:
    """alpha = beta - (|l1| - 7 l2)^2 / eta - 2 (7|l1| - 2 l2)^2 / |l1|；lambda1 = 0 时无定义"""
    if eta is None:
        eta = compute_eta(c)
    l1 = abs(c.lambda1)
    if l1 == 0.0 or eta <= 0.0:
        return -math.inf
    l2 = c.lambda2
    return c.beta - (l1 - 7.0 * l2) ** 2 / eta - 2.0 * (7.0 * l1 - 2.0 * l2) ** 2 / l1


def compute_c1(c: LeslieCoefficients, C: float = DEFAULT_C) -> float:
    """第一部分的常数 C1，即 C0 在 |grad d_in|_Hs = 1 处的值"""
    if c.beta <= 0.0:
        raise RegimeMismatch(f"C1 需要 beta > 0，当前 beta={c.beta}")
    return growth_constant(c, 1.0, C)


def compute_c2(c: LeslieCoefficients, grad_din_Hs: float, C: float = DEFAULT_C) -> float:
    """第二部分的常数 C2"""
    return C * (1.0 + 1.0 / c.mu4 + grad_din_Hs)


def compute_c2_proof(c: LeslieCoefficients, grad_din_Hs: float, C: float = DEFAULT_C) -> float:
    """证明中出现的 C2 写法，仅用于报告差异"""
    return C * (1.0 / math.sqrt(c.rho1) + 1.0 / c.mu4 + grad_din_Hs)


def compute_c3(c: LeslieCoefficients, Cprime: float = DEFAULT_C_PRIME) -> float:
    sr = math.sqrt(c.rho1)
    l1, l2 = abs(c.lambda1), c.lambda2
    inner = 1.0 + c.mu1 + l1 - l2 + c.mu6 - c.rho1 * l2 + c.rho1 + 1.0 / sr
    return 4.0 * Cprime * (1.0 + 1.0 / sr) * inner


def epsilon0(c: LeslieCoefficients, C: float = DEFAULT_C) -> float:
    """第一部分的小初值阈值 eps0"""
    beta = c.beta
    if beta <= 0.0:
        raise RegimeMismatch(f"eps0 需要 beta > 0，当前 beta={beta}")
    denom = 96.0 * C * (math.sqrt(c.rho1) * (c.mu1 + c.mu6) + abs(c.lambda1) - c.lambda2)
    if denom == 0.0:
        # 分母为零时后两项为无穷大
        return 1.0
    ratio = c.rho1 * beta ** 2 / denom ** 2
    return min(1.0, ratio, ratio ** 2)


def epsilon1(c: LeslieCoefficients, C: float = DEFAULT_C, Cprime: float = DEFAULT_C_PRIME) -> float:
    """第三部分的整体存在阈值 eps1"""
    eta = compute_eta(c)
    alpha = compute_alpha(c, eta)
    if not (alpha > 0.0 and c.mu2 < c.mu3):
        raise RegimeMismatch(f"eps1 需要 alpha > 0 且 mu2 < mu3，当前 alpha={alpha}")
    theta = min(alpha, eta, 0.5 * abs(c.lambda1))
    C3 = compute_c3(c, Cprime)
    return min(0.5 * epsilon0(c, C), theta ** 2 / (8.0 * C3) ** 2) / (abs(c.lambda1) + 2.0)


def energy_y(E_in: float) -> float:
    """Y(E) = E (E + 2) / (E + 1)^2"""
    return E_in * (E_in + 2.0) / (E_in + 1.0) ** 2


def part2_energy_cap(E_in: float, T: float, C2: float) -> float:
    """W(E_in, T) = 1 / sqrt(1 - Y e^{4 C2 T}) - 1"""
    a = energy_y(E_in) * math.exp(4.0 * C2 * T)
    if a >= 1.0:
        raise CapDiverged(f"Y(E_in) e^(4 C2 T) = {a} >= 1")
    return 1.0 / math.sqrt(1.0 - a) - 1.0


def part2_bound(E_in: float, T: float, C2: float) -> float:
    """第二部分的能量上界 E_in + 2 C2 T W (W + 1)(W + 2)"""
    W = part2_energy_cap(E_in, T, C2)
    return E_in + 2.0 * C2 * T * W * (W + 1.0) * (W + 2.0)


def part1_bound(E_in: float, T: float, C1: float) -> float:
    """第一部分的能量上界 E_in + 12 C1 T sqrt(E_in)"""
    return E_in + 12.0 * C1 * T * math.sqrt(E_in)


def growth_constant(c: LeslieCoefficients, grad_din_Hs: float, C: float = DEFAULT_C) -> float:
    """能量不等式中 P(E) 的系数 C0(lambda1, lambda2, beta, rho1, |grad d_in|_Hs)"""
    sr = math.sqrt(c.rho1)
    l1, l2, beta = abs(c.lambda1), c.lambda2, c.beta
    g = grad_din_Hs
    return C * (
        (1.0 + l1 - l2 + (l1 - l2) * g ** 2) / sr
        + g
        + 1.0 / sr ** 3
        + ((sr - l2) ** 2 + (l1 - l2) ** 2) / (c.rho1 * beta)
    )


def cap_q(c: LeslieCoefficients, E: float, grad_din_Hs: float, C: float = DEFAULT_C) -> float:
    """Q(E)；波映射系数下恒为 0"""
    g = grad_din_Hs
    weight = c.mu1 + c.mu6 + (abs(c.lambda1) - c.lambda2) / math.sqrt(c.rho1)
    if weight == 0.0:
        return 0.0
    return C * weight * (1.0 + g ** 2) * (g + sum(E ** (i / 2.0) for i in range(1, 6)))


def cap_p(c: LeslieCoefficients, E: float, grad_din_Hs: float, C: float = DEFAULT_C) -> float:
    """P(E) = C0 E (E + 1)(E + 2)；波映射系数下用简化的系数"""
    if c.is_wave_map:
        coef = C * (1.0 / math.sqrt(c.rho1) + 1.0 / c.mu4 + grad_din_Hs)
    else:
        coef = growth_constant(c, grad_din_Hs, C)
    return coef * E * (E + 1.0) * (E + 2.0)


def regime_classify(
        c: LeslieCoefficients,
        C: float = DEFAULT_C,
        Cprime: float = DEFAULT_C_PRIME,
        E_in: Optional[float] = None,
        grad_din_Hs: float = 0.0
) -> RegimeReport:
    """按三个区间给系数分类并求出全部显式常数

    Args:
        c: 已校验的系数
        C, Cprime: C(n, s) 与 C'(n, s) 的替代值，必须为正
        E_in: 若给出则同时计算寿命
        grad_din_Hs: |grad d_in|_Hs，只影响 C2
    """
    if C <= 0.0 or Cprime <= 0.0:
        raise RegimeMismatch(f"C 和 C' 必须为正，当前 C={C}, C'={Cprime}")

    beta = c.beta
    eta = compute_eta(c)
    alpha = compute_alpha(c, eta)
    part1 = beta > 0.0
    part2 = c.is_wave_map
    part3 = alpha > 0.0 and c.mu2 < c.mu3
    theta = min(alpha, eta, 0.5 * abs(c.lambda1)) if part3 else math.nan

    eps0 = epsilon0(c, C) if part1 else math.nan
    eps1 = epsilon1(c, C, Cprime) if part3 else math.nan
    C1 = compute_c1(c, C) if part1 else math.nan

    lifespan = math.nan
    if E_in is not None:
        lifespan = lifespan_bound(c, E_in, C, grad_din_Hs, Cprime=Cprime)

    return RegimeReport(
        beta=beta, eta=eta, alpha=alpha, theta=theta,
        eps0=eps0, eps1=eps1,
        part1_applies=part1, part2_applies=part2, part3_applies=part3,
        lifespan=lifespan,
        C1=C1,
        C2=compute_c2(c, grad_din_Hs, C),
        C2_proof=compute_c2_proof(c, grad_din_Hs, C),
        C3=compute_c3(c, Cprime),
        constants_used={'C': C, 'C_prime': Cprime},
        notes=[C2_DISCREPANCY_NOTE, EPS0_BRACKET_NOTE],
    )


def lifespan_report(
        c: LeslieCoefficients,
        E_in: float,
        C: float = DEFAULT_C,
        grad_din_Hs: float = 0.0,
        Cprime: float = DEFAULT_C_PRIME,
        T: Optional[float] = None
) -> LifespanReport:
    """按优先级 III (E_in <= eps1) > II > I 给出寿命估计及对应能量上界

    T 为求能量上界时使用的时间，缺省取寿命的一半（寿命无穷时取 1）。
    """
    if E_in <= 0.0:
        raise NonPositiveEnergy(f"E_in 必须为正，当前 {E_in}")

    eta = compute_eta(c)
    alpha = compute_alpha(c, eta)
    if alpha > 0.0 and c.mu2 < c.mu3:
        eps1 = epsilon1(c, C, Cprime)
        if E_in <= eps1:
            bound = 2.0 * (abs(c.lambda1) + 2.0) * E_in
            return LifespanReport(part='III', E_in=E_in, lifespan=math.inf,
                                  admissible=True, energy_cap=bound)

    if c.is_wave_map:
        C2 = compute_c2(c, grad_din_Hs, C)
        Y = energy_y(E_in)
        lifespan = math.log(1.0 / Y) / (4.0 * C2)
        t_cap = 0.5 * lifespan if T is None else T
        W = part2_energy_cap(E_in, t_cap, C2)
        return LifespanReport(part='II', E_in=E_in, lifespan=lifespan, admissible=True,
                              energy_cap=part2_bound(E_in, t_cap, C2), Y=Y, W=W)

    if c.beta > 0.0:
        if E_in >= 1.0:
            raise RegimeMismatch(f"第一部分的寿命公式需要 E_in < 1，当前 {E_in}")
        C1 = compute_c1(c, C)
        lifespan = math.log(1.0 / E_in) / (48.0 * C1)
        t_cap = lifespan if T is None else T
        return LifespanReport(part='I', E_in=E_in, lifespan=lifespan,
                              admissible=E_in < epsilon0(c, C),
                              energy_cap=part1_bound(E_in, t_cap, C1))

    raise RegimeMismatch(f"beta = {c.beta} <= 0 且非波映射系数，寿命估计不适用")


def lifespan_bound(
        c: LeslieCoefficients,
        E_in: float,
        C: float = DEFAULT_C,
        grad_din_Hs: float = 0.0,
        Cprime: float = DEFAULT_C_PRIME
) -> float:
    """寿命下界；第三部分且 E_in <= eps1 时为 +inf"""
    return lifespan_report(c, E_in, C, grad_din_Hs, Cprime).lifespan
