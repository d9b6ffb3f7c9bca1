"""零填充的乘积网格：非线性项在 M 点网格上逐点相乘后截断回 N 网格"""

from dataclasses import dataclass

import numpy as np

from .field import SpectralField
from .grid import TorusGrid, product_grid_size
from .operators import hermitian_part, physical_on, unpad_coeffs
from ..utils.errors import ShapeMismatch


@dataclass(frozen=True)
class ProductGrid:
    """次数不超过 degree 的乘积在 M 网格上无混叠"""
    grid: TorusGrid
    M: int

    @classmethod
    def for_degree(cls, grid: TorusGrid, cutoff: float, degree: int) -> 'ProductGrid':
        return cls(grid, product_grid_size(grid.N, cutoff, degree))

    @property
    def fine(self) -> TorusGrid:
        return self.grid.refined(self.M)

    def physical(self, f: SpectralField) -> np.ndarray:
        if f.grid != self.grid:
            raise ShapeMismatch(f"场的网格 {f.grid} 与乘积网格的基网格 {self.grid} 不一致")
        return physical_on(f, self.M)

    def spectral(self, values: np.ndarray, cutoff: float, name: str = '') -> SpectralField:
        """M 网格采样 -> 截断到 cutoff 的 N 网格谱场"""
        dim = self.grid.dim
        values = np.asarray(values, dtype=float)
        if values.shape[-dim:] != (self.M,) * dim:
            raise ShapeMismatch(f"采样形状 {values.shape} 与乘积网格 M={self.M} 不一致")
        coeffs = np.fft.fftn(values, axes=self.grid.axes) / self.M ** dim
        coeffs = unpad_coeffs(coeffs, dim, self.grid.N)
        coeffs = hermitian_part(coeffs, dim) * self.grid.band_mask(cutoff)
        return SpectralField(self.grid, coeffs, cutoff, name)
