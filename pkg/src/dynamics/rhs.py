"""磨光近似系统的右端项

du/dt    = -P J(u.grad u) + mu4 Lap(u)/2 - P J div(grad d . grad d) + P J div sigma
dddot/dt = [-rho1 J(u.grad ddot) + Lap(d) + J(gamma d) + lambda1 (ddot - J(B d)) + lambda2 J(A d)] / rho1
dd/dt    = ddot - J(u.grad d)

J 是截断到 K 的磨光算子，状态本身已在 J 的像中，内外两层 J 合并为一层。
所有乘积在零填充网格上逐点计算后截断，无混叠。
"""

from dataclasses import dataclass

import numpy as np

from .state import State, Tendency
from ..coefficients import LeslieCoefficients
from ..spectral import (
    ProductGrid,
    SpectralField,
    divergence,
    gradient,
    jacobian,
    laplacian,
    leray_project,
)
from ..tensorcalc import (
    DirectorState,
    apply,
    ericksen_stress,
    lagrangian_gamma,
    leslie_stress,
    split_gradient,
)
from ..utils.errors import CutoffMismatch, NonPositiveInertia

# 波映射情形下乘积的最高次数：gamma d 为三次
WAVE_MAP_DEGREE = 3


def check_cutoff(s: State, eps: float):
    """状态的截断必须与磨光截断 1/eps 选出同一组模式"""
    if eps <= 0.0:
        raise CutoffMismatch(f"磨光参数必须为正，当前 eps={eps}")
    grid = s.grid
    if not np.array_equal(grid.band_mask(1.0 / eps), grid.band_mask(s.cutoff)):
        raise CutoffMismatch(f"状态截断 K={s.cutoff} 与磨光截断 1/eps={1.0 / eps:.6g} 不一致")


def _advect(u: np.ndarray, grad_f: np.ndarray) -> np.ndarray:
    """(u.grad) f，grad_f[j, k] = ∂_j f_k"""
    return np.einsum('j...,jk...->k...', u, grad_f)


def _sampled(s: State, pg: ProductGrid) -> dict:
    """乘积网格上的采样"""
    return {
        'u': pg.physical(s.u),
        'd': pg.physical(s.d),
        'ddot': pg.physical(s.ddot),
        'grad_u': pg.physical(jacobian(s.u)),
        'grad_d': pg.physical(gradient(s.d)),
        'grad_ddot': pg.physical(gradient(s.ddot)),
    }


def _assemble(s: State, pg: ProductGrid, mu4: float, rho1: float, lambda1: float,
              stress: np.ndarray, forcing: np.ndarray, samples: dict) -> Tendency:
    """把物理空间的应力与指向矢强迫组装为谱空间的右端项

    stress 为 (dim, dim, ...) 的总应力 sigma - grad d . grad d，下标 [j, i]。
    forcing 为 ddot 方程中乘以 rho1 之后的非线性部分。
    """
    K = s.cutoff
    u, grad_u = samples['u'], samples['grad_u']
    momentum = pg.spectral(-np.einsum('j...,ij...->i...', u, grad_u), K)
    momentum = momentum + divergence(pg.spectral(stress, K))
    du_dt = leray_project(momentum) + (0.5 * mu4) * laplacian(s.u)

    director = laplacian(s.d) + pg.spectral(forcing, K)
    if lambda1 != 0.0:
        director = director + lambda1 * s.ddot
    dddot_dt = director * (1.0 / rho1)

    dd_dt = s.ddot - pg.spectral(_advect(u, samples['grad_d']), K)
    return Tendency(du_dt.renamed('du_dt'), dddot_dt.renamed('dddot_dt'), dd_dt.renamed('dd_dt'))


def rhs_full(s: State, c: LeslieCoefficients, eps: float) -> Tendency:
    """一般 Leslie 系数下的右端项"""
    if c.rho1 <= 0.0:
        raise NonPositiveInertia(f"rho1 必须为正，当前 {c.rho1}")
    check_cutoff(s, eps)
    dim = s.grid.dim
    pg = ProductGrid.for_degree(s.grid, s.cutoff, c.product_degree)
    samples = _sampled(s, pg)
    split = split_gradient(samples['grad_u'])
    ds = DirectorState(samples['d'], samples['ddot'])

    gamma = lagrangian_gamma(split, ds, c.rho1, c.lambda2, samples['grad_d'])
    stress = leslie_stress(split, ds, c)[:dim, :dim] - ericksen_stress(samples['grad_d'])

    forcing = -c.rho1 * _advect(samples['u'], samples['grad_ddot']) + gamma * ds.d
    if c.lambda1 != 0.0:
        forcing = forcing - c.lambda1 * apply(split.B, ds.d)
    if c.lambda2 != 0.0:
        forcing = forcing + c.lambda2 * apply(split.A, ds.d)
    return _assemble(s, pg, c.mu4, c.rho1, c.lambda1, stress, forcing, samples)


def rhs_wavemap(s: State, mu4: float, rho1: float, eps: float) -> Tendency:
    """Navier-Stokes 耦合波映射：mu1 = mu2 = mu3 = mu5 = mu6 = 0"""
    if rho1 <= 0.0:
        raise NonPositiveInertia(f"rho1 必须为正，当前 {rho1}")
    check_cutoff(s, eps)
    pg = ProductGrid.for_degree(s.grid, s.cutoff, WAVE_MAP_DEGREE)
    samples = _sampled(s, pg)
    d, ddot, grad_d = samples['d'], samples['ddot'], samples['grad_d']

    gamma = -rho1 * np.sum(ddot ** 2, axis=0) + np.sum(grad_d ** 2, axis=(0, 1))
    stress = -ericksen_stress(grad_d)
    forcing = -rho1 * _advect(samples['u'], samples['grad_ddot']) + gamma * d
    return _assemble(s, pg, mu4, rho1, 0.0, stress, forcing, samples)


@dataclass(frozen=True)
class SystemRhs:
    """绑定系数与磨光参数的右端项，波映射系数走专用实现"""
    c: LeslieCoefficients
    eps: float

    def __call__(self, s: State) -> Tendency:
        if self.c.is_wave_map:
            return rhs_wavemap(s, self.c.mu4, self.c.rho1, self.eps)
        return rhs_full(s, self.c, self.eps)


def make_rhs(c: LeslieCoefficients, eps: float) -> SystemRhs:
    return SystemRhs(c, eps)
