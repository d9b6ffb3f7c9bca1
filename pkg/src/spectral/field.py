"""谱表示的实值场

约定 f(x) = sum_xi f_hat(xi) exp(i xi . x)。系数数组的最后 dim 个轴是
波数轴（fft 顺序），前面的轴是分量：标量 ()，向量 (m,)，张量 (m, n)。
"""

from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np

from .grid import TorusGrid
from ..utils.errors import CutoffMismatch, ShapeMismatch


@dataclass(frozen=True, eq=False)
class SpectralField:
    """截断半径为 cutoff 的带限实场

    |xi| > cutoff 的模式恒为零，系数满足 Hermite 对称。
    """
    grid: TorusGrid
    coeffs: np.ndarray
    cutoff: float
    name: str = ''

    def __post_init__(self):
        dim = self.grid.dim
        if self.coeffs.ndim < dim or self.coeffs.shape[-dim:] != self.grid.shape:
            raise ShapeMismatch(
                f"系数形状 {self.coeffs.shape} 与网格 {self.grid.shape} 不一致")
        if self.cutoff > self.grid.max_cutoff:
            raise CutoffMismatch(
                f"截断 {self.cutoff} 超过 N/2 - 1 = {self.grid.max_cutoff}")

    @property
    def component_shape(self) -> Tuple[int, ...]:
        return self.coeffs.shape[:-self.grid.dim]

    @classmethod
    def zeros(cls, grid: TorusGrid, component_shape: Tuple[int, ...], cutoff: float,
              name: str = '') -> 'SpectralField':
        coeffs = np.zeros(tuple(component_shape) + grid.shape, dtype=complex)
        return cls(grid, coeffs, cutoff, name)

    def renamed(self, name: str) -> 'SpectralField':
        return replace(self, name=name)

    def with_coeffs(self, coeffs: np.ndarray) -> 'SpectralField':
        return replace(self, coeffs=coeffs)

    def _check_compatible(self, other: 'SpectralField'):
        if other.grid != self.grid:
            raise ShapeMismatch(f"网格不一致: {self.grid} vs {other.grid}")
        if other.cutoff != self.cutoff:
            raise CutoffMismatch(f"截断不一致: {self.cutoff} vs {other.cutoff}")

    def __add__(self, other: 'SpectralField') -> 'SpectralField':
        self._check_compatible(other)
        return replace(self, coeffs=self.coeffs + other.coeffs)

    def __sub__(self, other: 'SpectralField') -> 'SpectralField':
        self._check_compatible(other)
        return replace(self, coeffs=self.coeffs - other.coeffs)

    def __neg__(self) -> 'SpectralField':
        return replace(self, coeffs=-self.coeffs)

    def __mul__(self, scalar) -> 'SpectralField':
        return replace(self, coeffs=self.coeffs * scalar)

    __rmul__ = __mul__

    def max_abs_diff(self, other: 'SpectralField') -> float:
        self._check_compatible(other)
        return float(np.max(np.abs(self.coeffs - other.coeffs), initial=0.0))

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.coeffs)))
