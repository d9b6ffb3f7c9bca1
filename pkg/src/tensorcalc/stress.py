"""Leslie 粘性应力与 Ericksen 弹性应力"""

import numpy as np

from .kinematics import DirectorState, VelocityGradientSplit, apply, corotational_N, quadratic_form
from ..coefficients import LeslieCoefficients


def leslie_stress(split: VelocityGradientSplit, ds: DirectorState, c: LeslieCoefficients) -> np.ndarray:
    """粘性应力 sigma，形状 (3, 3, ...)，数组下标 [j, i] 对应 sigma_{ji}

    sigma_{ji} = mu1 (d^T A d) d_i d_j + mu2 d_j N_i + mu3 d_i N_j
                 + mu5 d_j (A d)_i + mu6 d_i (A d)_j

    其中 N_i = ddot_i + B_{ki} d_k。动量方程中的力为 (div sigma)_i = d_j sigma_{ji}。
    mu4 项不在此处，由 mu4 Laplace(u) / 2 单独处理。
    """
    d = ds.d
    sigma = np.zeros((d.shape[0], d.shape[0]) + d.shape[1:])
    if c.mu1 != 0.0:
        sigma += c.mu1 * quadratic_form(split.A, d) * np.einsum('j...,i...->ji...', d, d)
    if c.mu2 != 0.0 or c.mu3 != 0.0:
        N = corotational_N(split, ds)
        sigma += c.mu2 * np.einsum('j...,i...->ji...', d, N)
        sigma += c.mu3 * np.einsum('i...,j...->ji...', d, N)
    if c.mu5 != 0.0 or c.mu6 != 0.0:
        Ad = apply(split.A, d)
        sigma += c.mu5 * np.einsum('j...,i...->ji...', d, Ad)
        sigma += c.mu6 * np.einsum('i...,j...->ji...', d, Ad)
    return sigma


def ericksen_stress(grad_d: np.ndarray) -> np.ndarray:
    """(grad d . grad d)_{ij} = sum_k ∂_i d_k ∂_j d_k，对称半正定"""
    return np.einsum('ik...,jk...->ij...', grad_d, grad_d)
