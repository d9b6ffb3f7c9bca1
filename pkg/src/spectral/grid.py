"""环面网格 [0, 2pi)^dim"""

from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np

from ..config.constants import FFT_PRIMES, MIN_GRID_N, SUPPORTED_DIMS
from ..utils.errors import ShapeMismatch

# 整数波数的容差，用于截断半径恰为整数模长的情形
RADIUS_SLACK = 1e-9


@dataclass(frozen=True)
class TorusGrid:
    """边长 2pi 的周期网格，每个方向 N 个点，波数取值 [-N/2, N/2)"""
    dim: int
    N: int

    def __post_init__(self):
        if self.dim not in SUPPORTED_DIMS:
            raise ShapeMismatch(f"只支持 {SUPPORTED_DIMS} 维，当前 dim={self.dim}")
        if self.N < MIN_GRID_N or self.N % 2:
            raise ShapeMismatch(f"N 必须为偶数且不小于 {MIN_GRID_N}，当前 N={self.N}")

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.N,) * self.dim

    @property
    def axes(self) -> Tuple[int, ...]:
        """场数组中空间维所在的轴（总在最后）"""
        return tuple(range(-self.dim, 0))

    @property
    def spacing(self) -> float:
        return 2.0 * np.pi / self.N

    @property
    def volume(self) -> float:
        return (2.0 * np.pi) ** self.dim

    @property
    def max_cutoff(self) -> int:
        return self.N // 2 - 1

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """形状 (dim, N, ..., N) 的整数波数 xi"""
        k = np.fft.fftfreq(self.N, 1.0 / self.N)
        return np.array(np.meshgrid(*([k] * self.dim), indexing='ij'))

    @cached_property
    def k2(self) -> np.ndarray:
        return np.sum(self.wavenumbers ** 2, axis=0)

    @cached_property
    def k2_safe(self) -> np.ndarray:
        """零模处替换为 1 的 |xi|^2，用于除法"""
        return np.where(self.k2 == 0.0, 1.0, self.k2)

    @cached_property
    def coordinates(self) -> np.ndarray:
        """形状 (dim, N, ..., N) 的物理坐标"""
        x = self.spacing * np.arange(self.N)
        return np.array(np.meshgrid(*([x] * self.dim), indexing='ij'))

    def band_mask(self, radius: float) -> np.ndarray:
        """|xi| <= radius 的模式；radius <= N/2 - 1 时 Nyquist 模式自动排除"""
        return self.k2 <= radius ** 2 + RADIUS_SLACK

    def refined(self, M: int) -> 'TorusGrid':
        return TorusGrid(self.dim, M)


def fft_friendly_size(n: int) -> int:
    """不小于 n 的最小偶数，且素因子只含 2, 3, 5"""
    m = max(n, MIN_GRID_N)
    if m % 2:
        m += 1
    while True:
        r = m
        for p in FFT_PRIMES:
            while r % p == 0:
                r //= p
        if r == 1:
            return m
        m += 2


def product_grid_size(N: int, cutoff: float, degree: int) -> int:
    """次数为 degree 的乘积在截断后无混叠所需的网格尺寸 M > (degree + 1) K"""
    K = int(np.ceil(cutoff - RADIUS_SLACK))
    return fft_friendly_size(max(N, (degree + 1) * K + 1))
