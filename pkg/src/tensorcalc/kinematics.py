"""速度梯度分解与指向矢运动学

所有函数都是网格点上的逐点运算，输入输出为物理空间采样，分量轴在前。
二维情形下速度梯度嵌入 3x3（第三行第三列为零），指向矢始终有 3 个分量。
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..spectral import SpectralField, jacobian, physical_on

DIRECTOR_COMPONENTS = 3


@dataclass(frozen=True)
class VelocityGradientSplit:
    """A = (grad u + grad u^T) / 2，B = (grad u - grad u^T) / 2，形状 (3, 3, ...)"""
    A: np.ndarray
    B: np.ndarray


@dataclass(frozen=True)
class DirectorState:
    """d 与其物质导数 ddot，形状 (3, ...)"""
    d: np.ndarray
    ddot: np.ndarray


def embed_gradient(grad_u: np.ndarray) -> np.ndarray:
    """把 (dim, dim, ...) 的速度梯度嵌入 (3, 3, ...)"""
    dim = grad_u.shape[0]
    if dim == DIRECTOR_COMPONENTS:
        return grad_u
    out = np.zeros((DIRECTOR_COMPONENTS, DIRECTOR_COMPONENTS) + grad_u.shape[2:])
    out[:dim, :dim] = grad_u
    return out


def split_gradient(grad_u: np.ndarray) -> VelocityGradientSplit:
    """(grad u)_{ij} = d_j u_i 的对称/反对称分解"""
    G = embed_gradient(grad_u)
    Gt = np.swapaxes(G, 0, 1)
    return VelocityGradientSplit(A=0.5 * (G + Gt), B=0.5 * (G - Gt))


def strain_rotation(u: SpectralField, M: Optional[int] = None) -> VelocityGradientSplit:
    """在 M 点网格（默认 N）上求速度场的应变率与涡量张量"""
    return split_gradient(physical_on(jacobian(u), M or u.grid.N))


def apply(T: np.ndarray, v: np.ndarray) -> np.ndarray:
    """逐点矩阵作用 (T v)_i = T_{ij} v_j"""
    return np.einsum('ij...,j...->i...', T, v)


def quadratic_form(T: np.ndarray, v: np.ndarray) -> np.ndarray:
    """逐点 v^T T v"""
    return np.einsum('i...,ij...,j...->...', v, T, v)


def corotational_N(split: VelocityGradientSplit, ds: DirectorState) -> np.ndarray:
    """共转导数 N = ddot - B d"""
    return ds.ddot - apply(split.B, ds.d)


def kinematic_transport(split: VelocityGradientSplit, ds: DirectorState,
                        lambda1: float, lambda2: float) -> np.ndarray:
    """g = lambda1 N + lambda2 A d"""
    return lambda1 * corotational_N(split, ds) + lambda2 * apply(split.A, ds.d)


def lagrangian_gamma(split: VelocityGradientSplit, ds: DirectorState, rho1: float,
                     lambda2: float, grad_d: np.ndarray) -> np.ndarray:
    """gamma = -rho1 |ddot|^2 + |grad d|^2 - lambda2 d^T A d

    grad_d 形状 (dim, 3, ...)，grad_d[i, k] = ∂_i d_k。
    """
    gamma = -rho1 * np.sum(ds.ddot ** 2, axis=0) + np.sum(grad_d ** 2, axis=(0, 1))
    if lambda2 != 0.0:
        gamma = gamma - lambda2 * quadratic_form(split.A, ds.d)
    return gamma
