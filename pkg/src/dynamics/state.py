"""状态 (u, d, ddot) 与右端项"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..spectral import SpectralField, TorusGrid
from ..tensorcalc import DIRECTOR_COMPONENTS
from ..utils.errors import ComponentMismatch, CutoffMismatch, ShapeMismatch


@dataclass(frozen=True)
class Tendency:
    """du/dt, d(ddot)/dt, dd/dt"""
    du_dt: SpectralField
    dddot_dt: SpectralField
    dd_dt: SpectralField

    def fields(self) -> Tuple[SpectralField, SpectralField, SpectralField]:
        return self.du_dt, self.dddot_dt, self.dd_dt

    def __add__(self, other: 'Tendency') -> 'Tendency':
        return Tendency(self.du_dt + other.du_dt, self.dddot_dt + other.dddot_dt,
                        self.dd_dt + other.dd_dt)

    def __mul__(self, scalar) -> 'Tendency':
        return Tendency(self.du_dt * scalar, self.dddot_dt * scalar, self.dd_dt * scalar)

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(f.coeffs), initial=0.0)) for f in self.fields())


@dataclass(frozen=True)
class State:
    """t 时刻的 (u, d, ddot)，三个场共享网格与截断 K"""
    t: float
    u: SpectralField
    d: SpectralField
    ddot: SpectralField

    def __post_init__(self):
        grid = self.u.grid
        for f in (self.d, self.ddot):
            if f.grid != grid:
                raise ShapeMismatch(f"状态中的场网格不一致: {grid} vs {f.grid}")
            if f.cutoff != self.u.cutoff:
                raise CutoffMismatch(f"状态中的场截断不一致: {self.u.cutoff} vs {f.cutoff}")
        if self.u.component_shape != (grid.dim,):
            raise ComponentMismatch(f"u 应有 {grid.dim} 个分量，当前 {self.u.component_shape}")
        for f in (self.d, self.ddot):
            if f.component_shape != (DIRECTOR_COMPONENTS,):
                raise ComponentMismatch(
                    f"指向矢场应有 {DIRECTOR_COMPONENTS} 个分量，当前 {f.component_shape}")

    @property
    def grid(self) -> TorusGrid:
        return self.u.grid

    @property
    def cutoff(self) -> float:
        return self.u.cutoff

    @property
    def eps(self) -> float:
        """与截断 K 对应的磨光参数 1/K"""
        return 1.0 / self.cutoff

    def fields(self) -> Tuple[SpectralField, SpectralField, SpectralField]:
        return self.u, self.d, self.ddot

    def shifted(self, k: Tendency, h: float) -> 'State':
        """s + h k，时间前进 h"""
        return State(self.t + h, self.u + h * k.du_dt, self.d + h * k.dd_dt,
                     self.ddot + h * k.dddot_dt)

    def is_finite(self) -> bool:
        return all(f.is_finite() for f in self.fields())

    def max_abs_diff(self, other: 'State') -> float:
        return max(a.max_abs_diff(b) for a, b in zip(self.fields(), other.fields()))
